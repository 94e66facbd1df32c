"""
W(2,2) vector w = (d(-1) + (cL-14)/12 c(-1)) e^c and the deformed Virasoro vector
tilde omega = omega + mu/6 D^3 e^{-c}.

The products w_n w for n >= 0 close only when cL = 26; the `*_vanishes` checks
fail with cL free and pass under the binding cL=26.
"""

import logging
from functools import partial
from typing import List, Sequence, Tuple

from hv_freefield.constants import Param, SuiteName
from hv_freefield.fock import FockElement, exp_state, vacuum
from hv_freefield.hvrealize import BjmnKind, bjmn_virasoro, bjmn_virasoro_explicit, make_bjmn, make_v
from hv_freefield.scalars import Scalar, rational
from hv_freefield.suites.base import (
    CheckFn, CheckPrecondition, SuiteBase, SuiteContext, commutator, expect_equal, expect_zero, graded_states,
    mode_range,
)
from hv_freefield.voperator import state_mode_apply, translate

log = logging.getLogger(__name__)

HIGH_PRODUCTS = range(2, 6)
TILDE_L_MODES = range(0, 5)
OMEGA_DEGREE = 2
OMEGA_MODES = 3


class BjmnSuite(SuiteBase):
    name = SuiteName.BJMN
    description = "w_n w products, tilde L(n) w, tilde omega as a Virasoro vector"
    preconditions = CheckPrecondition.MU_FREE

    def checks(self, ctx: SuiteContext) -> Sequence[Tuple[str, CheckFn]]:
        states = _omega_test_states(ctx)
        modes = min(ctx.mode_bound, OMEGA_MODES)
        return [
            ("w0_w_formula", lambda: check_w0_formula(ctx)),
            ("w1_w_formula", lambda: check_w1_formula(ctx)),
            ("wn_w_vanishes_high", lambda: check_high_products(ctx)),
            ("w0_w_vanishes", lambda: _expect_product_zero(ctx, 0)),
            ("w1_w_vanishes", lambda: _expect_product_zero(ctx, 1)),
            ("tilde_l_on_w", lambda: check_tilde_l_on_w(ctx)),
            ("tilde_l_explicit_form", lambda: check_explicit_form(ctx, states, modes)),
            ("tilde_omega_virasoro", lambda: check_tilde_omega_virasoro(ctx, states, modes)),
        ]


def _shift(ctx: SuiteContext) -> Scalar:
    return ctx.param(Param.CL) - 26


def _w() -> FockElement:
    return make_bjmn(BjmnKind.W)


def _mu(ctx: SuiteContext) -> Scalar:
    """mu = -cW/4"""
    return -ctx.param(Param.CW) / 4


def check_w0_formula(ctx: SuiteContext) -> None:
    """w_0 w = (cL-26)/6 D e^{2c}"""
    expect_equal(ctx, state_mode_apply(_w(), 0, _w()), translate(exp_state(2)).scale(_shift(ctx) / 6), "w_0 w")


def check_w1_formula(ctx: SuiteContext) -> None:
    """w_1 w = (cL-26)/3 e^{2c}"""
    expect_equal(ctx, state_mode_apply(_w(), 1, _w()), exp_state(2).scale(_shift(ctx) / 3), "w_1 w")


def check_high_products(ctx: SuiteContext) -> str:
    for n in HIGH_PRODUCTS:
        expect_zero(ctx, state_mode_apply(_w(), n, _w()), f"w_{n} w")
    return f"n in {HIGH_PRODUCTS.start}..{HIGH_PRODUCTS.stop - 1}"


def _expect_product_zero(ctx: SuiteContext, n: int) -> None:
    expect_zero(ctx, state_mode_apply(_w(), n, _w()), f"w_{n} w")


def check_tilde_l_on_w(ctx: SuiteContext) -> None:
    """tilde L(n) w = 2 delta_{n,0} w + cW/2 delta_{n,2} 1 with mu = -cW/4."""
    mu = _mu(ctx)
    cw = ctx.param(Param.CW)
    w = _w()
    for n in TILDE_L_MODES:
        expected = FockElement.zero(w.space)
        if n == 0:
            expected = w.scale(rational(2))
        elif n == 2:
            expected = vacuum().scale(cw / 2)
        expect_equal(ctx, bjmn_virasoro(n, w, mu), expected, f"tilde L({n}) w")


def _omega_test_states(ctx: SuiteContext) -> List[FockElement]:
    states = graded_states(exp_state(0), OMEGA_DEGREE) + graded_states(exp_state(1), OMEGA_DEGREE - 1)
    for p in ctx.positive_p[:1]:
        states += graded_states(make_v(p, ctx.r), OMEGA_DEGREE - 1)
    return states


def check_explicit_form(ctx: SuiteContext, states: List[FockElement], modes: int) -> None:
    """tilde L(n) = L(n) - (n+1)n(n-1) mu/6 e^{-c}_{n-2}"""
    for n in mode_range(modes):
        for v in states:
            expect_equal(ctx, bjmn_virasoro(n, v), bjmn_virasoro_explicit(n, v), f"tilde L({n})", state=v)


def check_tilde_omega_virasoro(ctx: SuiteContext, states: List[FockElement], modes: int) -> None:
    """Modes of tilde omega satisfy the Virasoro bracket with central charge cL."""
    cl = ctx.param(Param.CL)
    for m in mode_range(modes):
        for n in mode_range(modes):
            if n < m:
                continue
            for v in states:
                got = commutator(partial(bjmn_virasoro, m), partial(bjmn_virasoro, n), v)
                expected = bjmn_virasoro(m + n, v).scale(rational(m - n))
                if m == -n:
                    expected = expected + v.scale(cl * rational(m ** 3 - m, 12))
                expect_equal(ctx, got, expected, f"[tilde L({m}), tilde L({n})]", state=v)
