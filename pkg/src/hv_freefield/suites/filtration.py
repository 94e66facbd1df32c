"""
Finite-degree shadows of the Ker Q^m / Im Q^m filtrations:

- Ker Q^{m+1} is contained in Ker Q^{m+2} cell by cell
- v^(m) has Q-nilpotency order exactly m+1, and Q^j v^(m) = v^(m-j) mod Ker Q^{m-j}
- (tilde L(0) - L(0))^{m+1} = Q^{m+1} kills Ker Q^{m+1}
- Q is injective on every graded piece of Pi(-p, r) and Im Q^{m+1} sits inside Im Q^m
- (tilde L(0) - h_{0,r})^n v_{0,r} = v_{0,r-2n} on Pi(0, r)
"""

import logging
from typing import Dict, List, Sequence, Tuple

from hv_freefield.constants import SuiteName
from hv_freefield.fock import FockElement
from hv_freefield.hvrealize import (
    image_filtration, infinite_rank_witness, kernel_filtration, make_cosingular, q_power, subsingular_relation,
    virasoro,
)
from hv_freefield.linalg import rank
from hv_freefield.suites.base import (
    CheckFn, CheckPrecondition, SuiteBase, SuiteContext, expect_nonzero, expect_true, expect_zero,
)

log = logging.getLogger(__name__)

FILTRATION_P_MAX = 2
FILTRATION_M_MAX = 2
FILTRATION_DEGREE = 4
INFINITE_RANK_DEPTH = 4

Cells = Dict[int, List[FockElement]]


class FiltrationSuite(SuiteBase):
    name = SuiteName.FILTRATION
    description = "Ker Q^m and Im Q^m filtrations on Pi(p, r), Pi(-p, r) and the infinite-rank Pi(0, r)"
    preconditions = CheckPrecondition.P_POSITIVE

    def checks(self, ctx: SuiteContext) -> Sequence[Tuple[str, CheckFn]]:
        degree = min(ctx.degree_bound, FILTRATION_DEGREE)
        checks = []
        for p in ctx.positive_p:
            if p > FILTRATION_P_MAX:
                continue
            checks.extend([
                (f"kernel_chain_{p}", _kernel_chain(ctx, p, degree)),
                (f"cosingular_order_{p}", _cosingular_order(ctx, p)),
                (f"subsingular_{p}", _subsingular(ctx, p)),
                (f"q_injective_on_negative_{p}", _injective_on_negative(ctx, p, degree)),
                (f"image_chain_negative_{p}", _image_chain(ctx, p, degree)),
            ])
        checks.append(("infinite_rank", lambda: check_infinite_rank(ctx)))
        return checks


def _kernel_chain(ctx: SuiteContext, p: int, degree: int) -> CheckFn:
    def check() -> str:
        kernels = [kernel_filtration(p, ctx.r, m, degree) for m in range(FILTRATION_M_MAX + 2)]
        for m in range(FILTRATION_M_MAX + 1):
            small, large = kernels[m], kernels[m + 1]
            for d in range(degree + 1):
                expect_true(rank(small[d] + large[d]) == rank(large[d]),
                            f"Ker Q^{m + 1} is not inside Ker Q^{m + 2} at degree {d}")
            deformed_nilpotency(ctx, small, m + 1)
        dims = [[len(kernels[m][d]) for d in range(degree + 1)] for m in range(len(kernels))]
        return f"dims {dims}"
    return check


def deformed_nilpotency(ctx: SuiteContext, cells: Cells, power: int) -> None:
    """(tilde L(0) - L(0))^power vanishes on the given kernel cells."""
    for cell in cells.values():
        for v in cell:
            state = v
            for _ in range(power):
                state = virasoro(0, state, deformed=True) - virasoro(0, state)
            expect_zero(ctx, state, f"(tilde L(0) - L(0))^{power}", state=v)


def _cosingular_order(ctx: SuiteContext, p: int) -> CheckFn:
    def check() -> None:
        for m in range(1, FILTRATION_M_MAX + 1):
            cos = make_cosingular(p, ctx.r, 0, m)
            expect_nonzero(ctx, q_power(cos, m), f"Q^{m} v^({m})")
            expect_zero(ctx, q_power(cos, m + 1), f"Q^{m + 1} v^({m})")
    return check


def _subsingular(ctx: SuiteContext, p: int) -> CheckFn:
    def check() -> None:
        for m in range(1, FILTRATION_M_MAX + 1):
            for j in range(m + 1):
                expect_zero(ctx, subsingular_relation(p, ctx.r, 0, m, j),
                            f"Q^{j} v^({m}) - v^({m - j}) mod Ker Q^{m - j}")
    return check


def _injective_on_negative(ctx: SuiteContext, p: int, degree: int) -> CheckFn:
    def check() -> None:
        cells = kernel_filtration(-p, ctx.r, 0, degree)
        for d, cell in cells.items():
            expect_true(not cell, f"Q has a kernel of dimension {len(cell)} at degree {d} of Pi(-{p}, r)",
                        witness=cell[0] if cell else None)
    return check


def _image_chain(ctx: SuiteContext, p: int, degree: int) -> CheckFn:
    def check() -> str:
        images = [image_filtration(-p, ctx.r, m, degree) for m in range(FILTRATION_M_MAX + 2)]
        for m in range(FILTRATION_M_MAX + 1):
            for d in range(degree + 1):
                outer, inner = images[m][d], images[m + 1][d]
                expect_true(rank(outer + inner) == rank(outer),
                            f"Im Q^{m + 1} is not inside Im Q^{m} at degree {d} of Pi(-{p}, r)")
        return f"dims {[[len(images[m][d]) for d in range(degree + 1)] for m in range(len(images))]}"
    return check


def check_infinite_rank(ctx: SuiteContext) -> None:
    for n, residue in enumerate(infinite_rank_witness(ctx.r, INFINITE_RANK_DEPTH)):
        expect_zero(ctx, residue, f"(tilde L(0) - h_{{0,r}})^{n} v_{{0,r}} - v_{{0,r-{2 * n}}}")
