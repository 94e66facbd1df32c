"""
Realized twisted Heisenberg-Virasoro operators on the lattice Fock spaces.

Every operator is derived from a state of Pi(0) through state_mode_apply:

    omega = 1/2 c(-1)d(-1) + (cL-2)/24 c(-2) - 1/2 d(-2)     L(n) = omega_{n+1}
    I     = -cLI c(-1)                                      I(n) = I_n
    barW  = c(-1)^2 - 2 c(-2)                               barW(n) = barW_{n+1}, W = cLI^2 barW
    Q     = e^c_0
    s     = (L(-2) - (cL-26)/24 c(-2)) e^{-c}                calQ = s_0

The deformed action adds the exponential mode: tilde L(n) = L(n) + e^c_n.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Tuple

from hv_freefield.constants import Generator, Param
from hv_freefield.errors import UnsupportedSpace
from hv_freefield.fock import (
    FockBasisVector, FockElement, LatticeVector, Pi0, PiPR, d1_vector, exp_state, gamma,
    graded_basis, heis_apply, mode_state,
)
from hv_freefield.linalg import independent_subset, kernel
from hv_freefield.scalars import ONE, ZERO, RationalLike, Scalar, param, rational
from hv_freefield.trace_util import trace_calls
from hv_freefield.voperator import (
    VAState, exp_mode_apply, schur_apply, slack, state_mode_apply, translate_power, z_exponent,
)

log = logging.getLogger(__name__)

_MINUS_C = LatticeVector(-ONE, ZERO)


def _cl() -> Scalar:
    return param(Param.CL)


def _cli() -> Scalar:
    return param(Param.CLI)


# ============================================================================
# Vertex-algebra states
# ============================================================================

@lru_cache(maxsize=None)
def omega_state() -> VAState:
    """Virasoro vector of central charge cL."""
    c, d = Generator.C, Generator.D
    return FockElement.combine(Pi0(), [
        (rational(1, 2), mode_state([(c, 1), (d, 1)])),
        ((_cl() - 2) / 24, mode_state([(c, 2)])),
        (rational(-1, 2), mode_state([(d, 2)])),
    ])


@lru_cache(maxsize=None)
def heisenberg_state() -> VAState:
    """I = -cLI c(-1) 1"""
    return mode_state([(Generator.C, 1)]).scale(-_cli())


@lru_cache(maxsize=None)
def barw_state() -> VAState:
    """barW = c(-1)^2 - 2 c(-2)"""
    return FockElement.combine(Pi0(), [
        (ONE, mode_state([(Generator.C, 1), (Generator.C, 1)])),
        (rational(-2), mode_state([(Generator.C, 2)])),
    ])


@lru_cache(maxsize=None)
def null_state() -> VAState:
    """s = (L(-2) - (cL-26)/24 c(-2)) e^{-c}; its zero mode is calQ."""
    lowered = state_mode_apply(omega_state(), -1, exp_state(-1))
    return lowered - mode_state([(Generator.C, 2)], -1).scale((_cl() - 26) / 24)


def conformal_weight(p: int, r: Scalar) -> Scalar:
    """h_{p,r}, the L(0) eigenvalue of v_{p,r}."""
    alpha = gamma(p, r).alpha
    return p * alpha - (_cl() - 2) * (p - 1) / 24


def heisenberg_weight(p: int) -> Scalar:
    """(1-p) cLI, the I(0) eigenvalue on Pi(p, r)."""
    return (1 - p) * _cli()


# ============================================================================
# Realized operators
# ============================================================================

class OpKind(Enum):
    L = "L"
    I = "I"
    BARW = "barW"
    W = "W"
    Q = "Q"
    SSCREEN = "S"
    CALQ = "calQ"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RealizedOp:
    """A named operator; `mode` applies to L, I, barW, W; `deformed` to L only."""
    kind: OpKind
    mode: int = 0
    deformed: bool = False

    def __post_init__(self):
        if self.deformed and self.kind is not OpKind.L:
            raise ValueError(f"only L has a deformed action, not {self.kind}")

    def __str__(self) -> str:
        if self.kind in (OpKind.Q, OpKind.SSCREEN, OpKind.CALQ):
            return str(self.kind)
        name = "Lt" if self.deformed else str(self.kind)
        return f"{name}({self.mode})"


def apply(op: RealizedOp, v: FockElement) -> FockElement:
    """
    Apply a realized operator.

    Raises:
        UnsupportedSpace: S off Pi(p, r), calQ on Whittaker
        NonIntegerPower: propagated from the exponential modes
    """
    kind = op.kind
    if kind is OpKind.L:
        result = state_mode_apply(omega_state(), op.mode + 1, v)
        if op.deformed:
            result = result + exp_mode_apply(1, op.mode, v)
        return result
    if kind is OpKind.I:
        return state_mode_apply(heisenberg_state(), op.mode, v)
    if kind is OpKind.BARW:
        return state_mode_apply(barw_state(), op.mode + 1, v)
    if kind is OpKind.W:
        return state_mode_apply(barw_state(), op.mode + 1, v).scale(_cli() ** 2)
    if kind is OpKind.Q:
        return exp_mode_apply(1, 0, v)
    if kind is OpKind.SSCREEN:
        if not isinstance(v.space, PiPR):
            raise UnsupportedSpace("S", v.space)
        return v.map_basis(_screening_basis)
    if kind is OpKind.CALQ:
        if not isinstance(v.space, (Pi0, PiPR)):
            raise UnsupportedSpace("calQ", v.space)
        return state_mode_apply(null_state(), 0, v)
    raise ValueError(f"unknown operator kind {kind}")


def virasoro(n: int, v: FockElement, deformed: bool = False) -> FockElement:
    return apply(RealizedOp(OpKind.L, n, deformed), v)


def heisenberg(n: int, v: FockElement) -> FockElement:
    return apply(RealizedOp(OpKind.I, n), v)


def screening_q(v: FockElement) -> FockElement:
    return exp_mode_apply(1, 0, v)


def q_power(v: FockElement, power: int) -> FockElement:
    for _ in range(power):
        v = screening_q(v)
    return v


def _screening_basis(b: FockBasisVector) -> FockElement:
    """S b = sum_j 1/j (d1(-j) e^c_j - e^c_{-j} d1(j)) b, cut at the vanishing bounds."""
    v = FockElement.basis(b)
    pieces = []
    d1 = d1_vector()
    top = b.degree - 1 - z_exponent(1, b) + slack()
    for j in range(1, top + 1):
        pieces.append((rational(1, j), heis_apply(d1, -j, exp_mode_apply(1, j, v))))
    for j in range(1, b.degree + 1 + slack()):
        pieces.append((rational(-1, j), exp_mode_apply(1, -j, heis_apply(d1, j, v))))
    return FockElement.combine(b.space, pieces)


def screening_s(v: FockElement) -> FockElement:
    return apply(RealizedOp(OpKind.SSCREEN), v)


# ============================================================================
# Module families
# ============================================================================

def make_v(p: int, r: Scalar, shift: int = 0) -> FockElement:
    """v_{p, r-2l} = e^{gamma_{p, r-2l}} in Pi(p, r)."""
    return FockElement.basis(FockBasisVector(PiPR(p, r), exponent=gamma(p, r - 2 * shift)))


def make_cosingular(p: int, r: Scalar, shift: int, m: int) -> FockElement:
    """v^(m) = (-1)^m / (2^m m!) d(-p)^m v_{p, r-2l}"""
    state = make_v(p, r, shift)
    for _ in range(m):
        state = heis_apply(Generator.D, -p, state)
    return state.scale(rational((-1) ** m, 2 ** m * factorial(m)))


def normalize_label(v: FockElement, r: Scalar) -> FockElement:
    """Retag an element of Pi(p, r') as an element of Pi(p, r) (r - r' even)."""
    if not isinstance(v.space, PiPR):
        raise UnsupportedSpace("relabelling", v.space)
    return v.relabel(PiPR(v.space.p, r))


def phi_apply(p: int, v: FockElement, deformed: bool = False) -> FockElement:
    """
    Phi_p(L, c) v =
        sum_i L(-i) S_{p-i}(-c) v + S_p(-c) (L(0) + (cL-2)(p-1)/24) v
        - (cL-26)/24 sum_i (i-1) c(-i) S_{p-i}(-c) v
    """
    pieces = []
    for i in range(1, p + 1):
        lowered = schur_apply(_MINUS_C, p - i, v)
        pieces.append((ONE, virasoro(-i, lowered, deformed)))
        if i > 1:
            pieces.append((-(_cl() - 26) * (i - 1) / 24, heis_apply(Generator.C, -i, lowered)))
    zero_mode = virasoro(0, v, deformed) + v.scale((_cl() - 2) * (p - 1) / 24)
    pieces.append((ONE, schur_apply(_MINUS_C, p, zero_mode)))
    return FockElement.combine(v.space, pieces)


def relacija_sides(coefficient: Optional[Scalar] = None) -> Tuple[FockElement, FockElement]:
    """
    (L(-2)e^{-c}, coef c(-2)e^{-c} - 1/2 L(-1) d(-1) e^{-c}); coef defaults to (cL-26)/24.
    """
    if coefficient is None:
        coefficient = (_cl() - 26) / 24
    lhs = virasoro(-2, exp_state(-1))
    rhs = mode_state([(Generator.C, 2)], -1).scale(coefficient) \
        - virasoro(-1, mode_state([(Generator.D, 1)], -1)).scale(rational(1, 2))
    return lhs, rhs


def verify_relacija(coefficient: Optional[Scalar] = None,
                    bindings: Optional[Dict[Param, RationalLike]] = None) -> bool:
    """True iff L(-2)e^{-c} = coef c(-2)e^{-c} - 1/2 L(-1)(d(-1)e^{-c}) exactly."""
    from hv_freefield.fock import substitute_element

    lhs, rhs = relacija_sides(coefficient)
    if bindings:
        lhs, rhs = substitute_element(lhs, bindings), substitute_element(rhs, bindings)
    return lhs == rhs


# ============================================================================
# W(2,2) / BJMN / Weyl states
# ============================================================================

class BjmnKind(Enum):
    TILDE_OMEGA = "tildeOmega"
    W = "w"
    BETA = "beta"
    WEYL_GAMMA = "weylGamma"

    def __str__(self) -> str:
        return self.value


def make_bjmn(kind: BjmnKind, mu: Optional[Scalar] = None) -> VAState:
    """
    tildeOmega(mu) = omega + mu/6 D^3 e^{-c}; w = (d(-1) + (cL-14)/12 c(-1)) e^c;
    beta = (c(-1) + d(-1)) e^c; weylGamma = -1/2 e^{-c}
    """
    if kind is BjmnKind.TILDE_OMEGA:
        mu = param(Param.MU) if mu is None else mu
        return omega_state() + translate_power(exp_state(-1), 3).scale(mu / 6)
    if kind is BjmnKind.W:
        return mode_state([(Generator.D, 1)], 1) + mode_state([(Generator.C, 1)], 1).scale((_cl() - 14) / 12)
    if kind is BjmnKind.BETA:
        return mode_state([(Generator.C, 1)], 1) + mode_state([(Generator.D, 1)], 1)
    if kind is BjmnKind.WEYL_GAMMA:
        return exp_state(-1).scale(rational(-1, 2))
    raise ValueError(f"unknown BJMN state {kind}")


def bjmn_virasoro(n: int, v: FockElement, mu: Optional[Scalar] = None) -> FockElement:
    """tilde L(n) from the tildeOmega state: its mode n+1."""
    return state_mode_apply(make_bjmn(BjmnKind.TILDE_OMEGA, mu), n + 1, v)


def bjmn_virasoro_explicit(n: int, v: FockElement, mu: Optional[Scalar] = None) -> FockElement:
    """L(n) - (n+1)n(n-1) mu/6 e^{-c}_{n-2}"""
    mu = param(Param.MU) if mu is None else mu
    return virasoro(n, v) - exp_mode_apply(-1, n - 2, v).scale((n + 1) * n * (n - 1) * mu / 6)


def beta_mode(n: int, v: FockElement) -> FockElement:
    """beta(n): coefficient of z^{-n-1}."""
    return state_mode_apply(make_bjmn(BjmnKind.BETA), n, v)


def weyl_gamma_mode(n: int, v: FockElement) -> FockElement:
    """weylGamma(n): coefficient of z^{-n}."""
    return state_mode_apply(make_bjmn(BjmnKind.WEYL_GAMMA), n - 1, v)


# ============================================================================
# Filtrations
# ============================================================================

def q_degree_shift(p: int) -> int:
    """Degree change of Q on Pi(p, r): -p."""
    return -p


@trace_calls
def kernel_filtration(p: int, r: Scalar, m: int, degree_bound: int, shift: int = 0) -> Dict[int, List[FockElement]]:
    """
    Graded basis of Ker Q^{m+1} above v_{p, r-2l}, degrees 0..degree_bound.

    Q^{m+1} sends degree d at shift l to degree d - (m+1)p at shift l+m+1;
    each cell is solved as an exact nullspace.
    """
    top = make_v(p, r, shift)
    (top_basis,) = top.terms
    result: Dict[int, List[FockElement]] = {}
    for degree in range(degree_bound + 1):
        sources = [FockElement.basis(b) for b in graded_basis(top_basis, degree)]
        images = [q_power(s, m + 1) for s in sources]
        result[degree] = kernel(sources, images, lambda pieces: FockElement.combine(top.space, pieces))
    log.debug(f"[FILTRATION] Ker Q^{m + 1} dims {[len(result[d]) for d in sorted(result)]}")
    return result


@trace_calls
def image_filtration(p: int, r: Scalar, m: int, degree_bound: int, shift: int = 0) -> Dict[int, List[FockElement]]:
    """
    Graded basis of Im Q^m at v_{p, r-2l}, degrees 0..degree_bound, computed from
    the cell at shift l-m whose degree maps onto each target degree.
    """
    space_top = make_v(p, r, shift - m)
    (source_top,) = space_top.terms
    result: Dict[int, List[FockElement]] = {}
    for degree in range(degree_bound + 1):
        source_degree = degree - m * q_degree_shift(p)
        if source_degree < 0:
            result[degree] = []
            continue
        images = [q_power(FockElement.basis(b), m) for b in graded_basis(source_top, source_degree)]
        result[degree] = independent_subset(images)
    return result


def subsingular_relation(p: int, r: Scalar, shift: int, m: int, j: int) -> FockElement:
    """
    Q^{m-j} (Q^j v^(m) - v^(m-j) at shift l+j); zero exactly when
    Q^j v^(m) = v^(m-j) mod Ker Q^{m-j}.
    """
    if not 0 <= j <= m:
        raise ValueError(f"need 0 <= j <= m, got j={j}, m={m}")
    difference = q_power(make_cosingular(p, r, shift, m), j) - make_cosingular(p, r, shift + j, m - j)
    return q_power(difference, m - j)


def infinite_rank_witness(r: Scalar, depth: int) -> List[FockElement]:
    """
    [(tilde L(0) - h_{0,r})^n v_{0,r} - v_{0,r-2n} for n = 0..depth]; all zero
    and every v_{0,r-2n} nonzero on the infinite-rank module Pi(0, r).
    """
    weight = conformal_weight(0, r)
    state = make_v(0, r)
    residues = []
    for n in range(depth + 1):
        residues.append(state - make_v(0, r, n))
        state = virasoro(0, state, deformed=True) - state.scale(weight)
    return residues


def exp_power_lowering(n: int, p: int, r: Scalar, shift: int = 0) -> FockElement:
    """e^{nc}_{k0} v_{p, r-2l} with k0 = -n(p-1) - 1."""
    return exp_mode_apply(n, -n * (p - 1) - 1, make_v(p, r, shift))
