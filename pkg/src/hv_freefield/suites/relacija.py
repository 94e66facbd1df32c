"""
The state identity in Pi(0)

    L(-2) e^{-c} = (cL-26)/24 c(-2) e^{-c} - 1/2 L(-1) d(-1) e^{-c}

and the translation rules it rests on.
"""

import logging
from typing import Sequence, Tuple

from hv_freefield.constants import Param, SuiteName
from hv_freefield.fock import exp_state, mode_state, vacuum
from hv_freefield.hvrealize import heisenberg_state, make_v, omega_state, relacija_sides, virasoro
from hv_freefield.scalars import param, rational
from hv_freefield.suites.base import (
    CheckFn, SuiteBase, SuiteContext, expect_equal, expect_true, expect_zero, graded_states,
)
from hv_freefield.voperator import exp_mode_apply, state_mode_apply, translate, translate_power

log = logging.getLogger(__name__)

TRANSLATION_DEGREE = 3


class RelacijaSuite(SuiteBase):
    name = SuiteName.RELACIJA
    description = "L(-2)e^{-c} identity in Pi(0) and the translation operator D"

    def checks(self, ctx: SuiteContext) -> Sequence[Tuple[str, CheckFn]]:
        return [
            ("identity", lambda: check_identity(ctx)),
            ("mutation_detected", check_mutation_detected),
            ("translation_is_l_minus_one", lambda: check_translation_is_l_minus_one(ctx)),
            ("translation_zero_mode", lambda: check_translation_zero_mode(ctx)),
            ("triple_translation", lambda: check_triple_translation(ctx)),
        ]


def check_identity(ctx: SuiteContext) -> None:
    lhs, rhs = relacija_sides()
    expect_equal(ctx, lhs, rhs, "L(-2)e^{-c}")


def check_mutation_detected() -> str:
    """A wrong c(-2) coefficient must leave a nonzero difference."""
    lhs, rhs = relacija_sides((param(Param.CL) - 25) / 24)
    expect_true(lhs != rhs, "mutated coefficient (cL-25)/24 was not detected")
    return f"difference {lhs - rhs}"


def _pi0_states(degree: int):
    states = []
    for m in (-1, 0, 1):
        states.extend(graded_states(exp_state(m), degree))
    return states


def check_translation_is_l_minus_one(ctx: SuiteContext) -> None:
    """D = L(-1) on Pi(0)."""
    for a in _pi0_states(TRANSLATION_DEGREE):
        expect_equal(ctx, translate(a), virasoro(-1, a), "D vs L(-1)", state=a)


def check_translation_zero_mode(ctx: SuiteContext) -> None:
    """(D A)_0 v = 0"""
    targets = graded_states(make_v(2, ctx.r), 2) + _pi0_states(1)
    for a in (omega_state(), heisenberg_state(), exp_state(1), exp_state(-1), mode_state([], 2)):
        da = translate(a)
        for v in targets:
            expect_zero(ctx, state_mode_apply(da, 0, v), f"(D {a})_0", state=v)


def check_triple_translation(ctx: SuiteContext) -> None:
    """(D^3 e^{-c})_3 = -6 e^{-c}_0"""
    d3 = translate_power(exp_state(-1), 3)
    for v in graded_states(make_v(2, ctx.r), 2) + graded_states(vacuum(), 2):
        expect_equal(ctx, state_mode_apply(d3, 3, v), exp_mode_apply(-1, 0, v).scale(rational(-6)),
                     "(D^3 e^{-c})_3", state=v)
