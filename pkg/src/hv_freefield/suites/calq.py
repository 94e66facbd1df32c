"""
calQ = s_0 vanishes on every Pi(0)-module.

The engine computes s_0 through the iterate identity on the state s; the
explicit_mode_sum check rebuilds it from modes of L, c and e^{-c} instead:

    s_0 = sum_{i>=0} L(-2-i) e^{-c}_i + sum_{i>=0} e^{-c}_{-i-1} L(i-1)
          - (cL-26)/24 sum_i (i+1) c(-i-2) e^{-c}_i
"""

import logging
from typing import List, Sequence, Tuple

from hv_freefield.constants import Generator, Param, SuiteName
from hv_freefield.fock import FockBasisVector, FockElement, exp_state, heis_apply
from hv_freefield.hvrealize import OpKind, RealizedOp, apply, make_v, virasoro
from hv_freefield.scalars import param, rational
from hv_freefield.suites.base import CheckFn, SuiteBase, SuiteContext, expect_equal, expect_zero, graded_states
from hv_freefield.voperator import exp_mode_apply, z_exponent

log = logging.getLogger(__name__)

CALQ_DEGREE = 5
CALQ = RealizedOp(OpKind.CALQ)
MODE_SUM_DEGREE = 2
MODE_SUM_PI0 = ((0, 1), (1, 1))


class CalQSuite(SuiteBase):
    name = SuiteName.CALQ
    description = "the zero mode of (L(-2) - (cL-26)/24 c(-2)) e^{-c} annihilates Pi(p, r) and Pi(0)"

    def checks(self, ctx: SuiteContext) -> Sequence[Tuple[str, CheckFn]]:
        degree = min(ctx.degree_bound, CALQ_DEGREE)
        checks = [(f"vanishes_on_pi_{p}", _vanishes_on_module(ctx, p, degree)) for p in ctx.positive_p]
        checks.append(("vanishes_on_pi0", lambda: check_vanishes_on_pi0(ctx, min(degree, 3))))
        checks.append(("explicit_mode_sum", lambda: check_explicit_mode_sum(ctx)))
        return checks


def _vanishes_on_module(ctx: SuiteContext, p: int, degree: int) -> CheckFn:
    def check() -> str:
        states = graded_states(make_v(p, ctx.r), degree)
        for v in states:
            expect_zero(ctx, apply(CALQ, v), "calQ", state=v)
        return f"{len(states)} states up to degree {degree}"
    return check


def check_vanishes_on_pi0(ctx: SuiteContext, degree: int) -> None:
    for m in (-1, 0, 1, 2):
        for v in graded_states(exp_state(m), degree):
            expect_zero(ctx, apply(CALQ, v), "calQ", state=v)


def calq_mode_sum(v: FockElement) -> FockElement:
    """s_0 v from the explicit mode expansion, cut where every term vanishes."""
    return v.map_basis(_mode_sum_basis)


def _mode_sum_basis(b: FockBasisVector) -> FockElement:
    v = FockElement.basis(b)
    exp_top = b.degree - 1 - z_exponent(-1, b)
    pieces = []
    for i in range(exp_top + 1):
        pieces.append((rational(1), virasoro(-2 - i, exp_mode_apply(-1, i, v))))
    for i in range(b.degree + 2):
        pieces.append((rational(1), exp_mode_apply(-1, -i - 1, virasoro(i - 1, v))))
    # c(k) commutes with e^{-c}, so c(-i-2) kills once -i-2 > deg b
    shift = -(param(Param.CL) - 26) / 24
    for i in range(-b.degree - 2, exp_top + 1):
        pieces.append((shift * (i + 1), heis_apply(Generator.C, -i - 2, exp_mode_apply(-1, i, v))))
    return FockElement.combine(b.space, pieces)


def mode_sum_states(ctx: SuiteContext) -> List[FockElement]:
    """Pi(1, r), Pi(2, r) up to degree 2 and e^{0}, e^{c} in Pi(0) up to degree 1."""
    states = []
    for p in (1, 2):
        states.extend(graded_states(make_v(p, ctx.r), min(ctx.degree_bound, MODE_SUM_DEGREE)))
    for m, degree in MODE_SUM_PI0:
        states.extend(graded_states(exp_state(m), min(ctx.degree_bound, degree)))
    return states


def check_explicit_mode_sum(ctx: SuiteContext) -> str:
    states = mode_sum_states(ctx)
    for v in states:
        expect_equal(ctx, apply(CALQ, v), calq_mode_sum(v), "calQ against its mode expansion", state=v)
    return f"{len(states)} states"
