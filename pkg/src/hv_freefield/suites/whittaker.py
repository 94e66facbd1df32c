"""
Whittaker module checks: highest weight of the deformed action, the logarithmic
degree-0 slice, the self-extension witness, exponential eigenvalues and the
cyclic filtration.
"""

import logging
from typing import List, Sequence, Tuple

from hv_freefield.constants import HGen, Param, SuiteName
from hv_freefield.fock import FockElement, graded_basis
from hv_freefield.suites.base import (
    CheckFn, SuiteBase, SuiteContext, expect_equal, expect_true,
)
from hv_freefield.suites.relations import check_mixed_bracket, check_virasoro_bracket
from hv_freefield.voperator import exp_mode_apply, weight_index
from hv_freefield.whittaker import (
    cyclic_span, deformed_apply, degree0_matrix, exp_eigenvalue, in_cyclic_span, is_lower_triangular,
    lowest_weight, nilpotent_rank, self_extension_witness, top_relation_residues, w_lambda,
)

log = logging.getLogger(__name__)

CYCLIC_INDEX_MAX = 2
CYCLIC_DEGREE = 3
CYCLIC_MODE_MAX = 2
EXP_POWERS = (-2, -1, 1, 2)
BRACKET_DEGREE = 3
BRACKET_MODES = 2
BRACKET_D0_POWERS = (0, 1)


class WhittakerSuite(SuiteBase):
    name = SuiteName.WHITTAKER
    description = "deformed action on the Whittaker module: self-dual top, logarithmic slice, cyclic filtration"

    def checks(self, ctx: SuiteContext) -> Sequence[Tuple[str, CheckFn]]:
        return [
            ("top_weights", lambda: check_top_weights(ctx)),
            ("degree0_slice", lambda: check_degree0_slice(ctx)),
            ("nilpotent_rank", lambda: check_nilpotent_rank(ctx)),
            ("self_extension", lambda: check_self_extension(ctx)),
            ("exp_eigenvalues", lambda: check_exp_eigenvalues(ctx)),
            ("deformed_brackets", lambda: check_deformed_brackets(ctx)),
            ("cyclic_filtration", lambda: check_cyclic_filtration(ctx)),
        ]


def check_top_weights(ctx: SuiteContext) -> None:
    """tilde L(0) w = ((cL-2)/24 + lambda) w and I(0) w = cLI w."""
    lam = ctx.lam
    w = w_lambda(lam)
    expect_equal(ctx, deformed_apply(HGen.L, 0, w), w.scale(lowest_weight(lam)), "tilde L(0) w")
    expect_equal(ctx, deformed_apply(HGen.I, 0, w), w.scale(ctx.param(Param.CLI)), "I(0) w")


def check_degree0_slice(ctx: SuiteContext) -> None:
    """tilde L(0) = (cL-2)/24 + e^c_0 on span{d(0)^k w}."""
    lam = ctx.lam
    shift = (ctx.param(Param.CL) - 2) / 24
    for k in range(ctx.degree_bound + 1):
        state = w_lambda(lam, k)
        expect_equal(ctx, deformed_apply(HGen.L, 0, state), state.scale(shift) + exp_mode_apply(1, 0, state),
                     f"tilde L(0) d(0)^{k} w")


def check_nilpotent_rank(ctx: SuiteContext) -> str:
    lam = ctx.lam
    size = ctx.degree_bound
    rows = degree0_matrix(lam, size)
    expect_true(is_lower_triangular(rows), "tilde L(0) is not lower triangular on the degree-0 slice")
    diagonal = lowest_weight(lam)
    for k in range(size + 1):
        expect_true(not ctx.bound(rows[k][k] - diagonal), f"diagonal entry {k} differs from (cL-2)/24 + lambda")
        if k:
            expect_true(bool(ctx.bound(rows[k][k - 1])), f"subdiagonal entry {k} vanishes")
    rank = nilpotent_rank(lam, size)
    expect_true(rank == size, f"nilpotent part has rank {rank}, expected {size}")
    return f"rank {rank} on d(0)^k w, k <= {size}"


def check_self_extension(ctx: SuiteContext) -> None:
    """(tilde L(0) - h) d(0) w = -2 lambda w"""
    lam = ctx.lam
    expect_equal(ctx, self_extension_witness(lam), w_lambda(lam).scale(-2 * lam), "(tilde L(0) - h) d(0) w")


def check_exp_eigenvalues(ctx: SuiteContext) -> str:
    """The degree-preserving mode of Y(e^{mc}, z) acts on w by lambda^m."""
    lam = ctx.lam
    w = w_lambda(lam)
    (basis,) = w.terms
    indices = []
    for m in EXP_POWERS:
        index, image = exp_eigenvalue(m, lam)
        expect_equal(ctx, image, w.scale(lam ** m), f"degree-preserving e^{{{m}c}} mode on w")
        expect_true(weight_index(m, index, basis) == 0, f"e^{{{m}c}}_{index} is not weight index 0")
        indices.append(f"e^{{{m}c}}_{index}")
    return ", ".join(indices)


def _whittaker_states(lam, degree: int) -> List[FockElement]:
    states = []
    for k in BRACKET_D0_POWERS:
        (top,) = w_lambda(lam, k).terms
        for n in range(degree + 1):
            states.extend(FockElement.basis(b) for b in graded_basis(top, n))
    return states


def check_deformed_brackets(ctx: SuiteContext) -> str:
    """Virasoro and mixed brackets of tilde L, I on Whittaker states."""
    states = _whittaker_states(ctx.lam, min(ctx.degree_bound, BRACKET_DEGREE))
    modes = min(ctx.mode_bound, BRACKET_MODES)
    check_virasoro_bracket(ctx, states, deformed=True, mode_bound=modes)
    check_mixed_bracket(ctx, states, deformed=True, mode_bound=modes)
    return f"{len(states)} states, |n| <= {modes}"


def check_cyclic_filtration(ctx: SuiteContext) -> str:
    """
    d(0)^m w lies in U(H) d(0)^n w for m <= n while d(0)^{n+1} w does not, and
    d(0)^{n+1} w is a highest-weight vector of weight (h, cLI) modulo U(H) d(0)^n w.
    """
    lam = ctx.lam
    degree = min(ctx.degree_bound, CYCLIC_DEGREE)
    for n in range(CYCLIC_INDEX_MAX + 1):
        cells = cyclic_span(n, degree, n, lam)
        for m in range(n + 1):
            expect_true(in_cyclic_span(w_lambda(lam, m), cells), f"d(0)^{m} w is outside U(H) d(0)^{n} w",
                        witness=w_lambda(lam, m))
        lifted = w_lambda(lam, n + 1)
        expect_true(not in_cyclic_span(lifted, cells), f"d(0)^{n + 1} w already lies in U(H) d(0)^{n} w",
                    witness=lifted)
        for m in range(CYCLIC_MODE_MAX + 1):
            for relation, residue in top_relation_residues(n, m, lam).items():
                expect_true(in_cyclic_span(residue, cells),
                            f"{relation} on d(0)^{n + 1} w leaves U(H) d(0)^{n} w", witness=residue)
    return f"n <= {CYCLIC_INDEX_MAX}, |m| <= {CYCLIC_MODE_MAX}, degree <= {degree}"
