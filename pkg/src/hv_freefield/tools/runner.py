"""
Suite Runner - executes verification suites against a run configuration.

Handles suite selection, precondition filtering, per-suite timing and
result logging.
"""

import logging
import time
from typing import List, Optional, Sequence

from hv_freefield.config import RunConfig
from hv_freefield.constants import SuiteName
from hv_freefield.suites import Report, Suite, SuiteContext, all_suites
from hv_freefield.trace_util import elapsed_ms

log = logging.getLogger(__name__)


class SuiteRunner:
    """
    Orchestrates `hv-freefield verify`.

    Manages:
    - Suite filtering based on preconditions
    - Execution and timing of each selected suite
    - Merging check results into one Report
    """

    def __init__(self, config: RunConfig, suites: Optional[List[Suite]] = None):
        """
        Args:
            config: validated run configuration
            suites: available suites (default: all registered suites)
        """
        self.config = config
        self.suites = suites if suites is not None else all_suites()
        self.ctx = SuiteContext(config)

    def _filter_suites(self, names: Sequence[SuiteName]) -> List[Suite]:
        """
        Select the named suites and drop those whose preconditions are unmet.

        Returns:
            Suites to run, in registry order
        """
        wanted = set(names) if names else set(SuiteName)
        available = []
        for suite in self.suites:
            if suite.name not in wanted:
                continue
            if self.ctx.matches(suite.preconditions):
                available.append(suite)
                log.debug(f"[SUITE] available: {suite.name}")
            else:
                log.debug(f"[SUITE] filtered out: {suite.name}")
        return available

    def run(self, names: Sequence[SuiteName] = ()) -> Report:
        report = Report()
        selected = self._filter_suites(names)
        selected_names = {suite.name for suite in selected}
        for name in (names or [suite.name for suite in self.suites]):
            if name not in selected_names:
                log.warning(f"⚠️  {name}: preconditions not met by the configuration, skipped")
                report.skipped.append(str(name))

        for suite in selected:
            log.info(f"[SUITE] {suite.name}: {suite.description}")
            start = time.perf_counter()
            results = suite.run(self.ctx)
            report.extend(results)
            failed = [r for r in results if not r.passed]
            if failed:
                log.error(f"❌ {suite.name}: {len(failed)}/{len(results)} checks failed ({elapsed_ms(start):.0f}ms)")
                for result in failed:
                    log.error(f"   {result.name}: {result.detail}")
            else:
                log.info(f"✅ {suite.name}: {len(results)} checks passed ({elapsed_ms(start):.0f}ms)")
        return report


def format_report(report: Report) -> str:
    """Plain-text report, one line per check."""
    lines = []
    for result in report.results:
        mark = "PASS" if result.passed else "FAIL"
        line = f"{mark}  {result.suite}.{result.name}"
        if result.detail:
            line = f"{line}  {result.detail}"
        lines.append(line)
        if result.witness:
            lines.append(f"      witness: {result.witness}")
    for name in report.skipped:
        lines.append(f"SKIP  {name}")
    lines.append(f"{len(report.results) - len(report.failures)}/{len(report.results)} checks passed")
    return "\n".join(lines)
