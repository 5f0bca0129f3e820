"""
Test the command line surface through run(), which returns exit codes
"""
from pathlib import Path

import orjson
import pytest

from idealforge.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, run
from idealforge.config import config

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def ideal_file(tmp_path):
    path = tmp_path / "pair.ideal"
    path.write_text("# sample\nring: x, y\nx^2 - y\nx*y - 1\n")
    return path


class TestFamilyCommands:

    def test_emit_matches_golden(self, capsys):
        assert run(['family', 'emit', 'C1', '--n', '2', '--d', '2']) == EXIT_OK
        assert capsys.readouterr().out == (GOLDEN / "family_emit_C1.txt").read_text()

    def test_emit_json(self, capsys):
        assert run(['family', 'emit', 'K', '--format', 'json']) == EXIT_OK
        data = orjson.loads(capsys.readouterr().out)
        assert data['name'] == 'K'
        assert data['params'] == {'n': 2, 'd': 2}
        assert len(data['generators']) == 20

    def test_emit_unknown_name(self, capsys):
        assert run(['family', 'emit', 'bogus']) == EXIT_USAGE
        assert "Error" in capsys.readouterr().err

    def test_list(self, capsys):
        assert run(['family', 'list']) == EXIT_OK
        assert 'Kl' in capsys.readouterr().out.split()


class TestIdealCommands:
    """gb, member and eliminate on ideal files"""

    def test_gb(self, ideal_file, capsys):
        assert run(['gb', str(ideal_file)]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[1] == "ring: x, y"
        assert set(lines[2:]) == {"x^2 - y", "x*y - 1", "y^2 - x"}

    def test_member(self, ideal_file, capsys):
        assert run(['member', str(ideal_file), 'y^2 - x']) == EXIT_OK
        assert "yes" in capsys.readouterr().out
        assert run(['member', str(ideal_file), 'x + 1']) == EXIT_FAIL
        assert "no" in capsys.readouterr().out

    def test_eliminate(self, tmp_path, capsys):
        path = tmp_path / "line.ideal"
        path.write_text("ring: x, y, z\nx - y\ny - z\n")
        assert run(['eliminate', str(path), '--vars', 'y']) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[2:] == ["x - z"]

    def test_missing_file(self, tmp_path):
        assert run(['gb', str(tmp_path / "absent.ideal")]) == EXIT_USAGE

    def test_colon_divisor_is_polynomial_even_when_a_file_matches(self, tmp_path, monkeypatch, capsys):
        monkeypatch.chdir(tmp_path)
        (tmp_path / "product.ideal").write_text("ring: x, y\nx*y\n")
        (tmp_path / "x").write_text("ring: x, y\ny\n")
        assert run(['colon', 'product.ideal', 'x']) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[2:] == ["y"]

    def test_colon_by_divisor_file(self, tmp_path, capsys):
        ideal = tmp_path / "product.ideal"
        ideal.write_text("ring: x, y\nx*y\n")
        divisor = tmp_path / "second.ideal"
        divisor.write_text("ring: x, y\ny\n")
        assert run(['colon', str(ideal), '--divisor-file', str(divisor)]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[2:] == ["x"]

    def test_colon_needs_exactly_one_divisor(self, ideal_file):
        assert run(['colon', str(ideal_file)]) == EXIT_USAGE
        assert run(['colon', str(ideal_file), 'x', '--divisor-file', str(ideal_file)]) == EXIT_USAGE


class TestVerifyCommand:

    def test_list(self, capsys):
        assert run(['verify', '--list']) == EXIT_OK
        out = capsys.readouterr().out
        assert 'fact-modular-law' in out
        assert 'colon-b04-plus-c12' in out

    def test_count_check_json(self, capsys):
        assert run(['verify', 'count', '--n', '2', '--d', '2', '--format', 'json', '--no-timings']) == EXIT_OK
        reports = orjson.loads(capsys.readouterr().out)
        assert len(reports) == 1
        assert reports[0]['status'] == "Pass"
        assert 'elapsed_ms' not in reports[0]

    @pytest.mark.parametrize("check_id", ['fact-principal-meet', 'count'])
    def test_json_is_byte_identical_across_runs(self, check_id, monkeypatch, capsys):
        monkeypatch.setattr(config, 'fact_trials', 5)
        argv = ['verify', check_id, '--n', '2', '--d', '2', '--format', 'json', '--no-timings']
        assert run(argv) == EXIT_OK
        first = capsys.readouterr().out
        assert run(argv) == EXIT_OK
        assert capsys.readouterr().out == first
        assert orjson.loads(first)[0]['status'] == "Pass"

    def test_unknown_check(self, capsys):
        assert run(['verify', 'no-such-check']) == EXIT_USAGE
        assert "no-such-check" in capsys.readouterr().err

    def test_bad_arguments(self):
        assert run(['family', 'emit']) == EXIT_USAGE
        assert run(['gb']) == EXIT_USAGE
        assert run(['--help']) == EXIT_OK


class TestCountCommands:

    def test_count(self, capsys):
        assert run(['count', '--format', 'json']) == EXIT_OK
        data = orjson.loads(capsys.readouterr().out)
        assert data['formula'] == data['listed'] == data['enumerated'] == 23

    def test_count_refused_enumeration(self, capsys):
        assert run(['count', '--n', '4', '--d', '2', '--format', 'json']) == EXIT_OK
        captured = capsys.readouterr()
        data = orjson.loads(captured.out)
        assert data['formula'] == 807
        assert data['enumerated'] == 'refused'
        assert "Refused" in captured.err

    def test_primes_refused(self, capsys):
        assert run(['primes', '--n', '5', '--d', '3']) == EXIT_OK
        assert "Refused" in capsys.readouterr().err
