"""Weyl algebra relations of beta = (c(-1)+d(-1)) e^c and weylGamma = -1/2 e^{-c} inside Pi(0)."""

import logging
from functools import partial
from typing import List, Sequence, Tuple

from hv_freefield.constants import SuiteName
from hv_freefield.fock import FockElement, exp_state
from hv_freefield.hvrealize import beta_mode, weyl_gamma_mode
from hv_freefield.suites.base import (
    CheckFn, SuiteBase, SuiteContext, commutator, expect_equal, expect_zero, graded_states, mode_range,
)

log = logging.getLogger(__name__)

WEYL_DEGREE = 2
WEYL_MODES = 2


class WeylSuite(SuiteBase):
    name = SuiteName.WEYL
    description = "[beta(n), gamma(m)] = delta_{n+m,0}, [beta, beta] = [gamma, gamma] = 0"

    def checks(self, ctx: SuiteContext) -> Sequence[Tuple[str, CheckFn]]:
        states = graded_states(exp_state(0), WEYL_DEGREE) + graded_states(exp_state(1), WEYL_DEGREE - 1)
        modes = min(ctx.mode_bound, WEYL_MODES)
        return [
            ("beta_gamma", lambda: check_beta_gamma(ctx, states, modes)),
            ("beta_beta", lambda: check_commuting(ctx, states, modes, beta_mode, "beta")),
            ("gamma_gamma", lambda: check_commuting(ctx, states, modes, weyl_gamma_mode, "gamma")),
        ]


def check_beta_gamma(ctx: SuiteContext, states: List[FockElement], modes: int) -> str:
    for n in mode_range(modes):
        for m in mode_range(modes):
            for v in states:
                got = commutator(partial(beta_mode, n), partial(weyl_gamma_mode, m), v)
                expected = v if n + m == 0 else FockElement.zero(v.space)
                expect_equal(ctx, got, expected, f"[beta({n}), gamma({m})]", state=v)
    return f"{len(states)} states, |n| <= {modes}"


def check_commuting(ctx: SuiteContext, states: List[FockElement], modes: int, mode_fn, label: str) -> None:
    for n in mode_range(modes):
        for m in mode_range(modes):
            if m <= n:
                continue
            for v in states:
                got = commutator(partial(mode_fn, n), partial(mode_fn, m), v)
                expect_zero(ctx, got, f"[{label}({n}), {label}({m})]", state=v)
