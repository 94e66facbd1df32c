"""
The Whittaker module Pi_lambda = C[d(0)] (x) M(1) with c(0) = -1 and e^c_0 w = lambda w,
and its deformed Heisenberg-Virasoro action tilde L(n) = L(n) + e^c_n.
"""

import logging
from typing import Dict, List, Optional, Tuple

from hv_freefield.constants import HGen, Param
from hv_freefield.fock import FockElement, whittaker_vector
from hv_freefield.hvrealize import heisenberg, virasoro
from hv_freefield.linalg import in_span, independent_subset, rank, scalar_matrix
from hv_freefield.scalars import ZERO, Scalar, param
from hv_freefield.trace_util import trace_calls
from hv_freefield.voperator import exp_mode_apply, ordinary_index, top_shift_apply

log = logging.getLogger(__name__)

WhittakerElement = FockElement


def w_lambda(lam: Optional[Scalar] = None, d0power: int = 0) -> WhittakerElement:
    """d(0)^k w_lambda; lambda defaults to the symbolic parameter."""
    return whittaker_vector(param(Param.LAMBDA) if lam is None else lam, d0power)


def top_operator(m: int, e: WhittakerElement) -> WhittakerElement:
    """T_m: multiply by lambda^m and substitute d(0) -> d(0) - 2m."""
    return top_shift_apply(m, e)


def deformed_apply(gen: HGen, n: int, e: WhittakerElement) -> WhittakerElement:
    """tilde L(n) or I(n) on a Whittaker state."""
    if gen is HGen.L:
        return virasoro(n, e, deformed=True)
    return heisenberg(n, e)


def lowest_weight(lam: Scalar) -> Scalar:
    """(cL-2)/24 + lambda, the diagonal of tilde L(0) on the degree-0 slice."""
    return (param(Param.CL) - 2) / 24 + lam


def degree0_matrix(lam: Scalar, size: int) -> List[List[Scalar]]:
    """
    Rows k = 0..size: coefficients of tilde L(0) d(0)^k w in the basis d(0)^j w.
    """
    rows = []
    for k in range(size + 1):
        image = deformed_apply(HGen.L, 0, w_lambda(lam, k))
        row = [ZERO] * (size + 1)
        for b, c in image.terms.items():
            if b.modes or b.d0power > size:
                raise ValueError(f"tilde L(0) left the degree-0 slice: {b}")
            row[b.d0power] = c
        rows.append(row)
    return rows


def is_lower_triangular(rows: List[List[Scalar]]) -> bool:
    return all(not rows[k][j] for k in range(len(rows)) for j in range(k + 1, len(rows[k])))


def nilpotent_rank(lam: Scalar, size: int) -> int:
    """Rank of tilde L(0) - ((cL-2)/24 + lambda) on span{d(0)^k w : k <= size}."""
    rows = degree0_matrix(lam, size)
    diagonal = lowest_weight(lam)
    shifted = [[c - diagonal if j == k else c for j, c in enumerate(row)] for k, row in enumerate(rows)]
    return scalar_matrix(shifted).rank()


def self_extension_witness(lam: Scalar) -> WhittakerElement:
    """(tilde L(0) - h) d(0) w = -2 lambda w."""
    state = w_lambda(lam, 1)
    return deformed_apply(HGen.L, 0, state) - state.scale(lowest_weight(lam))


def exp_eigenvalue(m: int, lam: Scalar) -> Tuple[int, WhittakerElement]:
    """
    The degree-preserving mode of Y(e^{mc}, z) on w_lambda.

    Returns:
        (ordinary index, image); the image is lambda^m w_lambda
    """
    (basis,) = w_lambda(lam).terms
    index = ordinary_index(m, 0, basis)
    return index, exp_mode_apply(m, index, w_lambda(lam))


@trace_calls
def cyclic_span(n: int, degree_bound: int, d0_bound: int, lam: Optional[Scalar] = None,
                mode_bound: Optional[int] = None) -> Dict[int, List[WhittakerElement]]:
    """
    Basis (per degree) of U(H) d(0)^n w truncated at degree <= degree_bound.

    Seeds are P(tilde L(0)) d(0)^n w with deg P <= d0_bound; lowering operators
    tilde L(-k), I(-k) (k <= mode_bound, default degree_bound) are applied
    breadth-first and kept only when they enlarge their degree cell.
    """
    mode_bound = degree_bound if mode_bound is None else mode_bound
    seed = w_lambda(lam, n)
    seeds = [seed]
    for _ in range(d0_bound):
        seeds.append(deformed_apply(HGen.L, 0, seeds[-1]))
    cells: Dict[int, List[WhittakerElement]] = {d: [] for d in range(degree_bound + 1)}
    cells[0] = independent_subset(seeds)
    queue = list(cells[0])
    while queue:
        state = queue.pop(0)
        degree = state.homogeneous_degree()
        for k in range(1, min(mode_bound, degree_bound - degree) + 1):
            for gen in HGen:
                image = deformed_apply(gen, -k, state)
                if not image:
                    continue
                cell = cells[degree + k]
                if not in_span(image, cell):
                    cell.append(image)
                    queue.append(image)
    log.debug(f"[WHITTAKER] cyclic span dims {[len(cells[d]) for d in sorted(cells)]}")
    return cells


def in_cyclic_span(e: WhittakerElement, cells: Dict[int, List[WhittakerElement]]) -> bool:
    """Exact membership of a homogeneous state in a cyclic_span result."""
    if not e:
        return True
    degree = e.homogeneous_degree()
    if degree is None or degree not in cells:
        return False
    return in_span(e, cells[degree])


def cell_rank(cells: Dict[int, List[WhittakerElement]], degree: int) -> int:
    return rank(cells.get(degree, []))


def top_relation_residues(n: int, m: int, lam: Optional[Scalar] = None) -> Dict[str, WhittakerElement]:
    """
    Residues of the highest-weight relations for x = d(0)^{n+1} w modulo U(H) d(0)^n w.

    For m = 0 the residue is (tilde L(0) - h) x. For m >= 1 the lowering
    operators are applied first and the positive mode returns the bracket:
    tilde L(m) tilde L(-m) x - (2m h + cL (m^3 - m)/12) x and
    tilde L(m) I(-m) x + m^2 cLI x. Every residue lies in U(H) d(0)^n w.
    """
    x = w_lambda(lam, n + 1)
    h = lowest_weight(param(Param.LAMBDA) if lam is None else lam)
    if m == 0:
        return {"tilde L(0) - h": deformed_apply(HGen.L, 0, x) - x.scale(h)}
    cl = param(Param.CL)
    virasoro_value = 2 * m * h + cl * (m ** 3 - m) / 12
    mixed_value = -(m ** 2) * param(Param.CLI)
    return {
        f"tilde L({m}) tilde L(-{m})": deformed_apply(HGen.L, m, deformed_apply(HGen.L, -m, x))
        - x.scale(virasoro_value),
        f"tilde L({m}) I(-{m})": deformed_apply(HGen.L, m, deformed_apply(HGen.I, -m, x))
        - x.scale(mixed_value),
    }
