"""
Base classes for verification suites.

Provides:
- CheckPrecondition: declarative flags for what a suite needs from the run configuration
- SuiteContext: the run configuration as seen by suites
- CheckResult / Report: outcomes with witnesses and timings
- Suite: protocol for all suites, and SuiteBase with the shared check loop
"""

import logging
import time
from dataclasses import dataclass, field
from enum import Flag, auto
from typing import Any, Callable, Dict, Iterable, List, Optional, Protocol, Sequence, Tuple

from hv_freefield.config import RunConfig
from hv_freefield.constants import Param, SuiteName
from hv_freefield.errors import CheckFailure, DivisionByZeroScalar, HvFreeFieldError
from hv_freefield.fock import FockElement, graded_basis, substitute_element
from hv_freefield.scalars import Scalar, format_scalar, param, substitute
from hv_freefield.trace_util import elapsed_ms, trace_block

log = logging.getLogger(__name__)


class CheckPrecondition(Flag):
    """
    Declarative preconditions for suites.

    SuiteRunner skips suites whose preconditions the configuration does not meet.
    """
    NONE = 0

    CLI_NONZERO = auto()    # cLI free or bound to a nonzero value (Verma formulas divide by it)
    MU_FREE = auto()        # mu not bound (the suite ties mu to cW itself)
    P_POSITIVE = auto()     # at least one configured p >= 1


@dataclass
class SuiteContext:
    """
    Configuration view handed to every suite.

    Bindings are applied to each compared quantity before the zero test, so a
    check can pass under cL = 26 and fail with cL free.
    """
    config: RunConfig

    @property
    def degree_bound(self) -> int:
        return self.config.degree_bound

    @property
    def mode_bound(self) -> int:
        return self.config.mode_bound

    @property
    def positive_p(self) -> Tuple[int, ...]:
        return tuple(p for p in self.config.p_values if p >= 1)

    @property
    def r(self) -> Scalar:
        return self.config.r_scalar()

    @property
    def lam(self) -> Scalar:
        return self.config.lam_scalar()

    def bound(self, s: Scalar) -> Scalar:
        return substitute(s, self.config.bindings)

    def param(self, p: Param) -> Scalar:
        return self.bound(param(p))

    def matches(self, preconditions: CheckPrecondition) -> bool:
        """
        Check if this configuration satisfies the given preconditions.

        Returns:
            True if all required conditions are met (AND logic for combined flags)
        """
        if preconditions == CheckPrecondition.NONE:
            return True

        checks = []
        if CheckPrecondition.CLI_NONZERO in preconditions:
            checks.append(self.config.bindings.get(Param.CLI, 1) != 0)
        if CheckPrecondition.MU_FREE in preconditions:
            checks.append(not self.config.is_bound(Param.MU))
        if CheckPrecondition.P_POSITIVE in preconditions:
            checks.append(bool(self.positive_p))

        return all(checks) if checks else True


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""
    witness: Optional[str] = None
    elapsed_ms: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "check": self.name,
            "status": "pass" if self.passed else "fail",
            "detail": self.detail,
            "witness": self.witness,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


@dataclass
class Report:
    """All check outcomes of one `verify` invocation."""
    results: List[CheckResult] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    def extend(self, results: Iterable[CheckResult]):
        self.results.extend(results)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "total": len(self.results),
            "failed": len(self.failures),
            "skipped_suites": list(self.skipped),
            "checks": [r.to_dict() for r in self.results],
        }


# A check returns an optional detail string and raises CheckFailure on a counterexample.
CheckFn = Callable[[], Optional[str]]


class Suite(Protocol):
    """
    Protocol for verification suites.

    Each suite is self-contained and declares its requirements via preconditions.
    """

    @property
    def name(self) -> SuiteName:
        """Suite name as used on the command line."""
        ...

    @property
    def description(self) -> str:
        """One-line description for listings."""
        ...

    @property
    def preconditions(self) -> CheckPrecondition:
        """
        Required configuration for this suite to run.

        Examples:
            CheckPrecondition.NONE
            CheckPrecondition.CLI_NONZERO | CheckPrecondition.P_POSITIVE
        """
        ...

    def run(self, ctx: SuiteContext) -> List[CheckResult]:
        """
        Execute every check of the suite.

        Returns:
            One CheckResult per check; failures carry a printable witness
        """
        ...


class SuiteBase:
    """Shared check loop: subclasses list (name, callable) pairs in `checks`."""

    name: SuiteName
    description: str = ""
    preconditions: CheckPrecondition = CheckPrecondition.NONE

    def checks(self, ctx: SuiteContext) -> Sequence[Tuple[str, CheckFn]]:
        raise NotImplementedError

    def run(self, ctx: SuiteContext) -> List[CheckResult]:
        results = []
        with trace_block(f"{self.name} suite"):
            for check_name, fn in self.checks(ctx):
                results.append(self._run_check(check_name, fn))
        return results

    def _run_check(self, check_name: str, fn: CheckFn) -> CheckResult:
        start = time.perf_counter()
        suite = str(self.name)
        try:
            detail = fn() or ""
        except CheckFailure as e:
            log.debug(f"[CHECK] {suite}.{check_name} failed: {e}")
            return CheckResult(suite, check_name, False, str(e), _failure_witness(e), elapsed_ms(start))
        except DivisionByZeroScalar as e:
            return CheckResult(suite, check_name, False, f"division by zero under the bindings: {e}",
                               _failure_witness(e), elapsed_ms(start))
        except HvFreeFieldError as e:
            return CheckResult(suite, check_name, False, f"{type(e).__name__}: {e}",
                               _failure_witness(e), elapsed_ms(start))
        log.debug(f"[CHECK] {suite}.{check_name} passed")
        return CheckResult(suite, check_name, True, detail, None, elapsed_ms(start))


def _failure_witness(error: HvFreeFieldError) -> str:
    """Printable witness of a failed check; the message stands in when the error carries none."""
    text = _witness_text(error.witness)
    return text if text is not None else str(error)


def _witness_text(witness: Any) -> Optional[str]:
    if witness is None:
        return None
    if isinstance(witness, Scalar):
        return format_scalar(witness)
    return str(witness)


# ============================================================================
# Assertion helpers
# ============================================================================

def _subject(what: str, state: Optional[FockElement]) -> str:
    return what if state is None else f"{what} on {state}"


def expect_zero(ctx: SuiteContext, value: FockElement, what: str, state: Optional[FockElement] = None) -> None:
    """
    Raises:
        CheckFailure: value (after bindings) is a nonzero state
    """
    bound = substitute_element(value, ctx.config.bindings)
    if bound:
        raise CheckFailure(f"{_subject(what, state)} is not zero", witness=bound)


def expect_equal(ctx: SuiteContext, got: FockElement, expected: FockElement, what: str,
                 state: Optional[FockElement] = None) -> None:
    bound_got = substitute_element(got, ctx.config.bindings)
    bound_expected = substitute_element(expected, ctx.config.bindings)
    if bound_got != bound_expected:
        raise CheckFailure(f"{_subject(what, state)}: got {bound_got}, expected {bound_expected}",
                           witness=bound_got - bound_expected)


def expect_nonzero(ctx: SuiteContext, value: FockElement, what: str) -> None:
    if not substitute_element(value, ctx.config.bindings):
        raise CheckFailure(f"{what} vanished", witness=value)


def expect_scalar(ctx: SuiteContext, got: Scalar, expected: Scalar, what: str) -> None:
    difference = ctx.bound(got - expected)
    if difference:
        got_text, expected_text = format_scalar(ctx.bound(got)), format_scalar(ctx.bound(expected))
        raise CheckFailure(f"{what}: got {got_text}, expected {expected_text}", witness=difference)


def expect_true(condition: bool, what: str, witness: Any = None) -> None:
    if not condition:
        raise CheckFailure(what, witness=witness)


# ============================================================================
# Shared test-state and operator helpers
# ============================================================================

Op = Callable[[FockElement], FockElement]


def commutator(a: Op, b: Op, v: FockElement) -> FockElement:
    """[a, b] v = a(b(v)) - b(a(v))"""
    return a(b(v)) - b(a(v))


def delta(i: int, j: int) -> int:
    return 1 if i == j else 0


def graded_states(top: FockElement, degree_bound: int) -> List[FockElement]:
    """Every basis state of degree <= degree_bound above each top vector of `top`."""
    states = []
    for top_basis in top.terms:
        for degree in range(degree_bound + 1):
            states.extend(FockElement.basis(b) for b in graded_basis(top_basis, degree))
    return states


def mode_range(bound: int) -> range:
    return range(-bound, bound + 1)
