"""
Acceptance suite runner command
"""

import logging
from typing import Optional

from config.settings import Settings
from core.suite import AcceptanceSuite
from utils.helpers import Output, handle_errors
from utils.messages import Messages

logger = logging.getLogger(__name__)


class SuiteHandler:
    """Handler for the suite command"""

    def __init__(self, output: Output):
        self.output = output

    @handle_errors
    def run(self, name: str = 'all', seed: Optional[int] = None, budget: Optional[int] = None,
            verbose: bool = False) -> int:
        suite = AcceptanceSuite(seed, budget)
        reports = suite.run(name)

        passed = total = 0
        for report in reports:
            for case in report.cases:
                if verbose or not case.passed:
                    mark = 'PASS' if case.passed else 'FAIL'
                    self.output.line(Messages.SUITE_CASE.format(mark=mark, suite=case.suite,
                                                                index=case.index, name=case.name))
                    if case.detail:
                        self.output.line(Messages.SUITE_DETAIL.format(detail=case.detail))
                self.output.record('case', case.suite, case.model_dump())
            if report.undecided is not None:
                self.output.line(Messages.SUITE_UNDECIDED.format(fraction=f"{report.undecided:.2%}"))
            self.output.line(Messages.SUITE_SUMMARY.format(
                suite=report.suite, passed=len(report.cases) - len(report.failures),
                total=len(report.cases), elapsed=report.elapsed))
            passed += len(report.cases) - len(report.failures)
            total += len(report.cases)

        self.output.line(Messages.SUITE_TOTAL.format(passed=passed, total=total))
        self.output.record('suite', name, {'passed': passed, 'total': total, 'seed': suite.seed})
        if passed != total:
            logger.warning(f"Suite {name} failed {total - passed} cases")
            return Settings.EXIT_SUITE_FAILED
        return Settings.EXIT_OK
