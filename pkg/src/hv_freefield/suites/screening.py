"""Screening operator Q = e^c_0: commutation with the realized algebra and its action on top vectors."""

import logging
from functools import partial
from typing import Sequence, Tuple

from hv_freefield.constants import Generator, SuiteName
from hv_freefield.hvrealize import exp_power_lowering, heisenberg, make_v, screening_q, virasoro
from hv_freefield.suites.base import (
    CheckFn, CheckPrecondition, SuiteBase, SuiteContext, commutator, expect_equal, expect_zero, graded_states,
    mode_range,
)
from hv_freefield.voperator import schur_apply

log = logging.getLogger(__name__)

SCREENING_MODE_BOUND = 3
LOWERING_POWERS = (1, 2)


class ScreeningSuite(SuiteBase):
    name = SuiteName.SCREENING
    description = "Q commutes with L(n), I(n); Q and e^{nc} on the top vectors of Pi(p, r)"
    preconditions = CheckPrecondition.P_POSITIVE

    def checks(self, ctx: SuiteContext) -> Sequence[Tuple[str, CheckFn]]:
        return [
            ("q_commutes", lambda: check_q_commutes(ctx)),
            ("q_on_negative_top", lambda: check_q_on_negative_top(ctx)),
            ("exp_lowering", lambda: check_exp_lowering(ctx)),
        ]


def check_q_commutes(ctx: SuiteContext) -> str:
    """[Q, L(n)] = [Q, I(n)] = 0 on every configured Pi(p, r)."""
    bound = min(ctx.mode_bound, SCREENING_MODE_BOUND)
    total = 0
    for p in ctx.positive_p:
        states = graded_states(make_v(p, ctx.r), ctx.degree_bound)
        total += len(states)
        for n in mode_range(bound):
            for v in states:
                expect_zero(ctx, commutator(screening_q, partial(virasoro, n), v), f"[Q, L({n})]", state=v)
                expect_zero(ctx, commutator(screening_q, partial(heisenberg, n), v), f"[Q, I({n})]", state=v)
    return f"{total} states, |n| <= {bound}"


def check_q_on_negative_top(ctx: SuiteContext) -> None:
    """Q v_{-p,r} = S_p(c) v_{-p,r-2}"""
    for p in ctx.positive_p:
        expected = schur_apply(Generator.C, p, make_v(-p, ctx.r, 1))
        expect_equal(ctx, screening_q(make_v(-p, ctx.r)), expected, f"Q v_{{-{p},r}}")


def check_exp_lowering(ctx: SuiteContext) -> None:
    """e^{nc}_{k0} v_{p,r} = v_{p,r-2n} with k0 = -n(p-1) - 1."""
    for p in ctx.positive_p:
        for n in LOWERING_POWERS:
            expect_equal(ctx, exp_power_lowering(n, p, ctx.r), make_v(p, ctx.r, n), f"e^{{{n}c}} lowering on v_{{{p},r}}")
