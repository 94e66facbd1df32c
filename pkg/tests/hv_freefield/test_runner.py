"""
Tests for SuiteRunner selection, precondition skipping and report formatting.
"""

from fractions import Fraction

from hv_freefield.config import RunConfig
from hv_freefield.constants import Param, SuiteName
from hv_freefield.errors import CheckFailure
from hv_freefield.suites import CheckPrecondition, SuiteBase
from hv_freefield.tools.runner import SuiteRunner, format_report


class PassingSuite(SuiteBase):
    name = SuiteName.RELATIONS
    description = "always passes"

    def checks(self, ctx):
        return [("ok", lambda: None)]


class FailingSuite(SuiteBase):
    name = SuiteName.SCREENING
    description = "always fails"

    def checks(self, ctx):
        def broken():
            raise CheckFailure("boom", witness="w")
        return [("broken", broken)]


class NeedsCliSuite(SuiteBase):
    name = SuiteName.SINGULAR
    description = "needs cLI != 0"
    preconditions = CheckPrecondition.CLI_NONZERO

    def checks(self, ctx):
        return [("ran", lambda: None)]


def _runner(config=None):
    return SuiteRunner(config or RunConfig(), suites=[PassingSuite(), FailingSuite(), NeedsCliSuite()])


class TestSelection:

    def test_runs_all_by_default(self):
        report = _runner().run()
        assert [r.name for r in report.results] == ["ok", "broken", "ran"]
        assert report.skipped == []
        assert not report.passed

    def test_named_selection(self):
        report = _runner().run((SuiteName.RELATIONS,))
        assert [r.name for r in report.results] == ["ok"]
        assert report.passed

    def test_unmet_precondition_skips(self, caplog):
        config = RunConfig(bindings={Param.CLI: Fraction(0)})
        report = _runner(config).run()
        assert report.skipped == ["singular"]
        assert "singular" in caplog.text


class TestReport:

    def test_text_report(self):
        config = RunConfig(bindings={Param.CLI: Fraction(0)})
        text = format_report(_runner(config).run())
        lines = text.splitlines()
        assert lines[0] == "PASS  relations.ok"
        assert lines[1] == "FAIL  screening.broken  boom"
        assert lines[2].strip() == "witness: w"
        assert "SKIP  singular" in lines
        assert lines[-1] == "1/2 checks passed"

    def test_report_dict(self):
        data = _runner().run().to_dict()
        assert data["total"] == 3
        assert data["failed"] == 1
        assert data["checks"][1]["witness"] == "w"
