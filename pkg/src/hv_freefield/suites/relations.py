"""
Bracket relations of the realized algebra on a graded basis of Pi(2, r).

    [L(m), L(n)] = (m-n) L(m+n) + delta_{m,-n} (m^3-m) cL/12
    [L(m), I(n)] = -n I(m+n) - delta_{m,-n} (m^2+m) cLI
    [I(m), I(n)] = 0
"""

import logging
from functools import partial
from typing import List, Sequence, Tuple

from hv_freefield.constants import Generator, Param, SuiteName
from hv_freefield.fock import FockElement, LatticeVector, heis_apply, pairing
from hv_freefield.hvrealize import conformal_weight, heisenberg, heisenberg_weight, make_v, virasoro
from hv_freefield.scalars import rational
from hv_freefield.suites.base import (
    CheckFn, SuiteBase, SuiteContext, commutator, expect_equal, expect_zero, graded_states, mode_range,
)
from hv_freefield.voperator import exp_mode_apply

log = logging.getLogger(__name__)

TEST_MODULE_P = 2


class RelationsSuite(SuiteBase):
    name = SuiteName.RELATIONS
    description = "Virasoro, mixed and Heisenberg brackets of the realized L(n), I(n)"

    def checks(self, ctx: SuiteContext) -> Sequence[Tuple[str, CheckFn]]:
        states = graded_states(make_v(TEST_MODULE_P, ctx.r), ctx.degree_bound)
        log.info(f"[SUITE] relations on {len(states)} states of Pi({TEST_MODULE_P}, r), modes |n| <= {ctx.mode_bound}")
        return [
            ("highest_weights", lambda: check_highest_weights(ctx)),
            ("virasoro_bracket", lambda: check_virasoro_bracket(ctx, states, deformed=False)),
            ("mixed_bracket", lambda: check_mixed_bracket(ctx, states, deformed=False)),
            ("heisenberg_commute", lambda: check_heisenberg_commute(ctx, states)),
            ("lattice_heisenberg", lambda: check_lattice_heisenberg(ctx, states)),
            ("exp_mode_transport", lambda: check_exp_transport(ctx, states)),
        ]


def check_highest_weights(ctx: SuiteContext) -> str:
    """L(0) v_{p,r} = h_{p,r} v_{p,r} and I(0) v_{p,r} = (1-p) cLI v_{p,r}."""
    top = max(ctx.config.p_values, key=abs)
    p_range = range(-abs(top), abs(top) + 1)
    for p in p_range:
        v = make_v(p, ctx.r)
        expect_equal(ctx, virasoro(0, v), v.scale(conformal_weight(p, ctx.r)), f"L(0) v_{{{p},r}}")
        expect_equal(ctx, heisenberg(0, v), v.scale(heisenberg_weight(p)), f"I(0) v_{{{p},r}}")
    return f"p in {p_range.start}..{p_range.stop - 1}"


def check_virasoro_bracket(ctx: SuiteContext, states: List[FockElement], deformed: bool,
                           mode_bound: int = 0) -> str:
    bound = mode_bound or ctx.mode_bound
    cl = ctx.param(Param.CL)
    for m in mode_range(bound):
        for n in mode_range(bound):
            if n < m:
                continue
            for v in states:
                got = commutator(partial(virasoro, m, deformed=deformed), partial(virasoro, n, deformed=deformed), v)
                expected = virasoro(m + n, v, deformed).scale(rational(m - n))
                if m == -n:
                    expected = expected + v.scale(cl * rational(m ** 3 - m, 12))
                expect_equal(ctx, got, expected, f"[L({m}), L({n})]", state=v)
    return f"{len(states)} states"


def check_mixed_bracket(ctx: SuiteContext, states: List[FockElement], deformed: bool,
                        mode_bound: int = 0) -> str:
    bound = mode_bound or ctx.mode_bound
    cli = ctx.param(Param.CLI)
    for m in mode_range(bound):
        for n in mode_range(bound):
            for v in states:
                got = commutator(partial(virasoro, m, deformed=deformed), partial(heisenberg, n), v)
                expected = heisenberg(m + n, v).scale(rational(-n))
                if m == -n:
                    expected = expected - v.scale(cli * (m * m + m))
                expect_equal(ctx, got, expected, f"[L({m}), I({n})]", state=v)
    return f"{len(states)} states"


def check_heisenberg_commute(ctx: SuiteContext, states: List[FockElement]) -> None:
    for m in mode_range(ctx.mode_bound):
        for n in mode_range(ctx.mode_bound):
            if n <= m:
                continue
            for v in states:
                got = commutator(partial(heisenberg, m), partial(heisenberg, n), v)
                expect_zero(ctx, got, f"[I({m}), I({n})]", state=v)


def check_lattice_heisenberg(ctx: SuiteContext, states: List[FockElement]) -> None:
    """[h(m), h'(k)] = m <h, h'> delta_{m+k,0} on the Fock generators."""
    for g in Generator:
        for h in Generator:
            form = pairing(LatticeVector.of(g), LatticeVector.of(h))
            for m in mode_range(ctx.mode_bound):
                for k in mode_range(ctx.mode_bound):
                    for v in states:
                        got = commutator(partial(heis_apply, g, m), partial(heis_apply, h, k), v)
                        expected = v.scale(form * m) if m + k == 0 else FockElement.zero(v.space)
                        expect_equal(ctx, got, expected, f"[{g}({m}), {h}({k})]", state=v)


def check_exp_transport(ctx: SuiteContext, states: List[FockElement]) -> None:
    """[h(k), e^{mc}_n] = m <h, c> e^{mc}_{k+n}"""
    c = LatticeVector.of(Generator.C)
    for g in Generator:
        form = pairing(LatticeVector.of(g), c)
        for m in (-1, 1):
            for k in mode_range(min(ctx.mode_bound, 2)):
                for n in mode_range(min(ctx.mode_bound, 2)):
                    for v in states:
                        got = commutator(partial(heis_apply, g, k), partial(exp_mode_apply, m, n), v)
                        expected = exp_mode_apply(m, k + n, v).scale(form * m)
                        expect_equal(ctx, got, expected, f"[{g}({k}), e^{{{m}c}}_{n}]", state=v)
