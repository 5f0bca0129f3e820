"""
Async suite runner - executes a selection of checks layer by layer, the
checks of one layer concurrently on a thread pool
"""
import asyncio
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Set

from .checks.base_check import BaseCheck, CheckContext, CheckReport, CheckStatus
from .checks.check_manager import CheckManager, check_manager
from .config import SuiteConfig
from .monitoring import correlation_context, monitoring


def _run_in_thread(check: BaseCheck, context: CheckContext, correlation_id: str) -> CheckReport:
    with correlation_context(correlation_id):
        return check.run(context)


class SuiteRunner:
    """
    Runs a SuiteConfig against the check registry.

    The registry is a DAG. Layers run in topological order; an upstream Fail
    (or a check skipped because of one) turns every downstream check into
    Skipped. Checks that do not depend on (n, d) run once, under the first
    parameter pair.
    """

    def __init__(self, manager: Optional[CheckManager] = None):
        self.manager = manager or check_manager
        self.logger = monitoring.get_logger(__name__)

    async def run_suite(self, suite: SuiteConfig) -> List[CheckReport]:
        if not suite.checks or not suite.params:
            return []
        check_ids = self.manager.resolve(suite.checks)
        layers = self.manager.topological_order(check_ids)
        reports: List[CheckReport] = []
        with correlation_context() as run_id:
            self.logger.info("Starting suite", context={
                'run_id': run_id, 'checks': len(check_ids), 'params': suite.params, 'workers': suite.workers})
            with ThreadPoolExecutor(max_workers=suite.workers) as pool:
                for index, (n, d) in enumerate(suite.params):
                    context = CheckContext.create(n, d, suite.field_name, suite.literal, suite.seed, suite.force)
                    reports += await self._run_params(layers, context, index == 0, pool, run_id)
        reports.sort(key=lambda r: (r.check_id, r.params.n, r.params.d))
        self._log_summary(reports)
        return reports

    async def _run_params(self, layers: List[List[str]], context: CheckContext, first: bool,
                          pool: ThreadPoolExecutor, run_id: str) -> List[CheckReport]:
        loop = asyncio.get_running_loop()
        blocked: Set[str] = set()
        reports: List[CheckReport] = []
        for layer in layers:
            runnable: List[BaseCheck] = []
            for check_id in layer:
                check = self.manager.get_check(check_id)
                if not check.family_sized and not first:
                    continue
                upstream = [dep for dep in check.depends_on if dep in blocked]
                if upstream:
                    blocked.add(check_id)
                    reports.append(check.report(context, CheckStatus.SKIPPED,
                                                notes=[f"upstream check failed: {', '.join(upstream)}"]))
                    continue
                runnable.append(check)
            results = await asyncio.gather(*[
                loop.run_in_executor(pool, _run_in_thread, check, context, run_id) for check in runnable
            ])
            for report in results:
                if report.status is CheckStatus.FAIL:
                    blocked.add(report.check_id)
                reports.append(report)
        return reports

    def _log_summary(self, reports: List[CheckReport]):
        counts: Dict[str, int] = {}
        for report in reports:
            counts[report.status.value] = counts.get(report.status.value, 0) + 1
        self.logger.info("Suite finished", context={**counts, "groebner": monitoring.groebner_summary()})


def suite_succeeded(reports: List[CheckReport]) -> bool:
    """A suite succeeds when nothing failed; Skipped and Refused are clean"""
    return not any(report.failed for report in reports)


def run_suite_sync(suite: SuiteConfig, manager: Optional[CheckManager] = None) -> List[CheckReport]:
    return asyncio.run(SuiteRunner(manager).run_suite(suite))
