"""
The deformed action tilde L(n) = L(n) + e^c_n on Pi(p, r), Pi(0, r) and Pi(-p, r).
"""

import logging
from typing import Sequence, Tuple

from hv_freefield.constants import Generator, SuiteName
from hv_freefield.fock import FockElement
from hv_freefield.hvrealize import make_cosingular, make_v, phi_apply, q_power, screening_q, virasoro
from hv_freefield.suites.base import (
    CheckFn, CheckPrecondition, SuiteBase, SuiteContext, expect_equal, expect_zero, graded_states,
)
from hv_freefield.suites.relations import check_mixed_bracket, check_virasoro_bracket
from hv_freefield.voperator import schur_apply

log = logging.getLogger(__name__)

DEFORMED_P_MAX = 3
SHIFT_MAX = 2
COSINGULAR_MAX = 3
BRACKET_DEGREE = 4
BRACKET_MODES = 3


class DeformedSuite(SuiteBase):
    name = SuiteName.DEFORMED
    description = "tilde L brackets, Phi_p(tilde L, c) lowering, cosingular vectors, Pi(0, r) and Pi(-p, r)"
    preconditions = CheckPrecondition.P_POSITIVE

    def checks(self, ctx: SuiteContext) -> Sequence[Tuple[str, CheckFn]]:
        states = graded_states(make_v(2, ctx.r), min(ctx.degree_bound, BRACKET_DEGREE))
        modes = min(ctx.mode_bound, BRACKET_MODES)
        ps = [p for p in ctx.positive_p if p <= DEFORMED_P_MAX]
        return [
            ("virasoro_bracket", lambda: check_virasoro_bracket(ctx, states, deformed=True, mode_bound=modes)),
            ("mixed_bracket", lambda: check_mixed_bracket(ctx, states, deformed=True, mode_bound=modes)),
            ("lowering_by_l_minus_p", lambda: check_lowering_by_l_minus_p(ctx, ps)),
            ("phi_lowering", lambda: check_phi_lowering(ctx, ps)),
            ("cosingular_vectors", lambda: check_cosingular(ctx, ps)),
            ("q_on_pi0r", lambda: check_q_on_pi0r(ctx)),
            ("negative_module_action", lambda: check_negative_module(ctx, ps)),
        ]


def check_lowering_by_l_minus_p(ctx: SuiteContext, ps: Sequence[int]) -> None:
    """tilde L(-p) v_{p,r-2n} = L(-p) v_{p,r-2n} + v_{p,r-2(n+1)}"""
    for p in ps:
        for n in range(SHIFT_MAX + 1):
            v = make_v(p, ctx.r, n)
            expect_equal(ctx, virasoro(-p, v, deformed=True), virasoro(-p, v) + make_v(p, ctx.r, n + 1),
                         f"tilde L(-{p}) v_{{{p},r-{2 * n}}}")


def check_phi_lowering(ctx: SuiteContext, ps: Sequence[int]) -> None:
    """Phi_p(tilde L, c) v_{p,r-2n} = v_{p,r-2(n+1)}"""
    for p in ps:
        for n in range(SHIFT_MAX + 1):
            got = phi_apply(p, make_v(p, ctx.r + 2, n), deformed=True)
            expect_equal(ctx, got, make_v(p, ctx.r + 2, n + 1), f"Phi_{p}(tilde L) v_{{{p},r+2-{2 * n}}}")


def check_cosingular(ctx: SuiteContext, ps: Sequence[int]) -> str:
    """Q^m v^(m) = v_{p,r-2m} and Q^{m+1} v^(m) = 0"""
    for p in ps:
        for m in range(1, COSINGULAR_MAX + 1):
            cos = make_cosingular(p, ctx.r, 0, m)
            expect_equal(ctx, q_power(cos, m), make_v(p, ctx.r, m), f"Q^{m} v^({m}) in Pi({p}, r)")
            expect_zero(ctx, q_power(cos, m + 1), f"Q^{m + 1} v^({m}) in Pi({p}, r)")
    return f"m <= {COSINGULAR_MAX}"


def check_q_on_pi0r(ctx: SuiteContext) -> None:
    """Q v_{0,r} = v_{0,r-2}"""
    expect_equal(ctx, screening_q(make_v(0, ctx.r)), make_v(0, ctx.r, 1), "Q v_{0,r}")


def check_negative_module(ctx: SuiteContext, ps: Sequence[int]) -> None:
    """tilde L(n) v_{-p,r} = S_{p-n}(c) v_{-p,r-2} for 1 <= n <= p, zero for n > p."""
    for p in ps:
        top = make_v(-p, ctx.r)
        lowered = make_v(-p, ctx.r, 1)
        for n in range(1, p + 3):
            expected = schur_apply(Generator.C, p - n, lowered) if n <= p else FockElement.zero(top.space)
            expect_equal(ctx, virasoro(n, top, deformed=True), expected, f"tilde L({n}) v_{{-{p},r}}")
