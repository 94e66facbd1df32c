"""
W(2,2) realization and the non-local screening

    S = sum_{j>=1} 1/j (d1(-j) e^c_j - e^c_{-j} d1(j))

Commutators checked:
    [L(m), S] = e^c_m d1(0) - d1(m) e^c_0 + 2 delta_{m,0} e^c_0
    [c(m), S] = 2 e^c_m - 2 delta_{m,0} e^c_0
    [I(m), S] = -2 cLI (e^c_m - delta_{m,0} e^c_0)
    [W(m), S] = -4 cLI^2 (c(m) + delta_{m,0}) Q, so [W(m), S] = 0 on Ker Q
"""

import logging
from functools import partial
from typing import List, Sequence, Tuple

from hv_freefield.constants import Generator, Param, SuiteName
from hv_freefield.fock import FockElement, d1_vector, heis_apply
from hv_freefield.hvrealize import (
    OpKind, RealizedOp, apply, heisenberg, kernel_filtration, make_v, screening_q, screening_s, virasoro,
)
from hv_freefield.scalars import rational
from hv_freefield.suites.base import (
    CheckFn, CheckPrecondition, SuiteBase, SuiteContext, commutator, delta, expect_equal, expect_zero,
    graded_states, mode_range,
)
from hv_freefield.voperator import exp_mode_apply

log = logging.getLogger(__name__)

W22_DEGREE = 3
W22_MODES = 2
SINGULAR_MODULE_R = 1


def w_mode(m: int, v: FockElement) -> FockElement:
    return apply(RealizedOp(OpKind.W, m), v)


class W22Suite(SuiteBase):
    name = SuiteName.W22
    description = "commutators with the screening S and its commutation with L(n), W(n) on Ker Q"
    preconditions = CheckPrecondition.P_POSITIVE

    def checks(self, ctx: SuiteContext) -> Sequence[Tuple[str, CheckFn]]:
        degree = min(ctx.degree_bound, W22_DEGREE)
        modes = min(ctx.mode_bound, W22_MODES)
        states: List[FockElement] = []
        for p in ctx.positive_p:
            states.extend(graded_states(make_v(p, ctx.r), degree))
        return [
            ("l_exp_bracket", lambda: check_l_exp_bracket(ctx, states, modes)),
            ("l_s_commutator", lambda: check_l_s(ctx, states, modes)),
            ("c_s_commutator", lambda: check_c_s(ctx, states, modes)),
            ("i_s_commutator", lambda: check_i_s(ctx, states, modes)),
            ("w_s_commutator", lambda: check_w_s(ctx, states, modes)),
            ("s_commutes_on_ker_q", lambda: check_s_on_kernel(ctx, degree, modes)),
        ]


def check_l_exp_bracket(ctx: SuiteContext, states: List[FockElement], modes: int) -> None:
    """[L(n), e^c_m] = -m e^c_{n+m}"""
    for n in mode_range(modes):
        for m in mode_range(modes):
            for v in states:
                got = commutator(partial(virasoro, n), partial(exp_mode_apply, 1, m), v)
                expect_equal(ctx, got, exp_mode_apply(1, n + m, v).scale(rational(-m)), f"[L({n}), e^c_{m}]", state=v)


def check_l_s(ctx: SuiteContext, states: List[FockElement], modes: int) -> None:
    d1 = d1_vector()
    for m in mode_range(modes):
        for v in states:
            got = commutator(partial(virasoro, m), screening_s, v)
            expected = exp_mode_apply(1, m, heis_apply(d1, 0, v)) - heis_apply(d1, m, screening_q(v))
            if m == 0:
                expected = expected + screening_q(v).scale(rational(2))
            expect_equal(ctx, got, expected, f"[L({m}), S]", state=v)


def check_c_s(ctx: SuiteContext, states: List[FockElement], modes: int) -> None:
    for m in mode_range(modes):
        for v in states:
            got = commutator(partial(heis_apply, Generator.C, m), screening_s, v)
            expected = exp_mode_apply(1, m, v).scale(rational(2)) - screening_q(v).scale(rational(2 * delta(m, 0)))
            expect_equal(ctx, got, expected, f"[c({m}), S]", state=v)


def check_i_s(ctx: SuiteContext, states: List[FockElement], modes: int) -> None:
    cli = ctx.param(Param.CLI)
    for m in mode_range(modes):
        for v in states:
            got = commutator(partial(heisenberg, m), screening_s, v)
            inner = exp_mode_apply(1, m, v) - screening_q(v).scale(rational(delta(m, 0)))
            expect_equal(ctx, got, inner.scale(-2 * cli), f"[I({m}), S]", state=v)


def check_w_s(ctx: SuiteContext, states: List[FockElement], modes: int) -> None:
    cli = ctx.param(Param.CLI)
    for m in mode_range(modes):
        for v in states:
            got = commutator(partial(w_mode, m), screening_s, v)
            qv = screening_q(v)
            inner = heis_apply(Generator.C, m, qv) + qv.scale(rational(delta(m, 0)))
            expect_equal(ctx, got, inner.scale(-4 * cli ** 2), f"[W({m}), S]", state=v)


def check_s_on_kernel(ctx: SuiteContext, degree: int, modes: int) -> str:
    """On Ker Q inside Pi(p, 1): [S, L(n)] = [S, W(n)] = 0."""
    count = 0
    for p in ctx.positive_p:
        cells = kernel_filtration(p, rational(SINGULAR_MODULE_R), 0, degree)
        for cell in cells.values():
            for v in cell:
                count += 1
                for n in mode_range(modes):
                    expect_zero(ctx, commutator(screening_s, partial(virasoro, n), v), f"[S, L({n})]", state=v)
                    expect_zero(ctx, commutator(screening_s, partial(w_mode, n), v), f"[S, W({n})]", state=v)
    return f"{count} Ker Q states"
