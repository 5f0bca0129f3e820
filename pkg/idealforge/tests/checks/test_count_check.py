"""
Test the count cross-check
"""
from idealforge.checks.base_check import CheckContext, CheckStatus
from idealforge.checks.count_check import CountCheck


class TestCountCheck:

    def test_two_levels(self):
        report = CountCheck().run(CheckContext.create(2, 2))
        assert report.status is CheckStatus.PASS
        assert report.notes[0] == "formula 23"
        assert report.notes[1] == "listed families 23"
        assert report.notes[2].startswith("enumerated 23 before")

    def test_refused_outside_budget(self):
        report = CountCheck().run(CheckContext.create(4, 3))
        assert report.status is CheckStatus.REFUSED
