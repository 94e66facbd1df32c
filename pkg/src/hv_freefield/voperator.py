"""
Vertex operators on the lattice Fock spaces.

- schur_apply: S_p(g) = sum over partitions of prod (g(-k)/k)^{m_k} / m_k!
- exp_mode_apply: modes of Y(e^{mc}, z) = T_m E^-(mc) E^+(mc) z^{A}
- state_mode_apply: modes of Y(A, z) for any state A of Pi(0), by the iterate identity
- translate: the translation operator D on Pi(0)

Mode convention: X_n is the coefficient of z^{-n-1} ("ordinary" indexing).
"""

import logging
from contextlib import contextmanager
from dataclasses import replace
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Dict, Iterator, List, Tuple, Union

from sympy.utilities.iterables import partitions

from hv_freefield.constants import Generator
from hv_freefield.errors import NonIntegerPower
from hv_freefield.fock import (
    FockBasisVector, FockElement, LatticeVector, PiPR, Whittaker, exp_state, heis_apply, heis_basis_terms, pairing,
)
from hv_freefield.scalars import ONE, ZERO, Scalar, as_integer, format_scalar, rational
from hv_freefield.trace_util import trace_calls

log = logging.getLogger(__name__)

VAState = FockElement

_C = LatticeVector(ONE, ZERO)

# extra modes evaluated past every vanishing bound; nonzero only under truncation_slack
_slack = 0


def slack() -> int:
    return _slack


@contextmanager
def truncation_slack(extra: int) -> Iterator[None]:
    """
    Evaluate `extra` modes past every truncation bound.

    Results must not change: the bounds are exact vanishing statements. Mode
    caches are cleared on entry and exit.
    """
    global _slack
    previous = _slack
    _slack = extra
    _clear_mode_caches()
    try:
        yield
    finally:
        _slack = previous
        _clear_mode_caches()


def _clear_mode_caches() -> None:
    _exp_mode_basis.cache_clear()
    _state_mode_basis.cache_clear()


def binom(n: int, k: int) -> int:
    """Generalised binomial C(n, k) for integer n (possibly negative), k >= 0."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k)
    numerator = 1
    for i in range(k):
        numerator *= n - i
    return numerator // factorial(k)


# ============================================================================
# Schur polynomials
# ============================================================================

@lru_cache(maxsize=None)
def schur_terms(p: int) -> Tuple[Tuple[Tuple[Tuple[int, int], ...], Fraction], ...]:
    """
    Monomials of S_p as ((level, multiplicity), ...) with rational coefficients.

    S_0 = 1 and S_p = 0 for p < 0.
    """
    if p < 0:
        return ()
    if p == 0:
        return (((), Fraction(1)),)
    terms = []
    for part in partitions(p):
        coef = Fraction(1)
        for k, mult in part.items():
            coef /= Fraction(k) ** mult * factorial(mult)
        terms.append((tuple(sorted(part.items())), coef))
    return tuple(terms)


def schur_apply(g: Union[Generator, LatticeVector], p: int, v: FockElement) -> FockElement:
    """S_p(g) v, with g(-k) acting through heis_apply."""
    if isinstance(g, Generator):
        g = LatticeVector.of(g)
    pieces = []
    for monomial, coef in schur_terms(p):
        w = v
        for level, mult in monomial:
            for _ in range(mult):
                w = heis_apply(g, -level, w)
        pieces.append((rational(coef.numerator, coef.denominator), w))
    return FockElement.combine(v.space, pieces)


# ============================================================================
# Exponential operators
# ============================================================================

def z_exponent(m: int, b: FockBasisVector) -> int:
    """
    A in Y(e^{mc}, z) b = z^A (...): m<c, exponent> on lattice spaces, -m on Whittaker.

    Raises:
        NonIntegerPower: <c, exponent> is not an integer constant
    """
    if isinstance(b.space, Whittaker):
        return -m
    exponent = m * pairing(_C, b.exponent)
    value = as_integer(exponent)
    if value is None:
        raise NonIntegerPower(format_scalar(exponent), f"e^({m}c) on {b.space}")
    return value


def weight_index(m: int, n: int, b: FockBasisVector) -> int:
    """Weight label of e^{mc}_n on b; 0 is the degree-preserving mode."""
    return n + 1 + z_exponent(m, b)


def ordinary_index(m: int, k: int, b: FockBasisVector) -> int:
    """Inverse of weight_index."""
    return k - 1 - z_exponent(m, b)


def _annihilator_terms(m: int, level_sum: int, b: FockBasisVector) -> List[Tuple[FockBasisVector, int]]:
    """Degree-`level_sum` part of E^+(mc) on b: each d(-k) contraction costs -2m."""
    d_levels: Dict[int, int] = {}
    for gen, level in b.modes:
        if gen is Generator.D:
            d_levels[level] = d_levels.get(level, 0) + 1
    levels = sorted(d_levels)
    results = []
    for choice in product(*(range(d_levels[k] + 1) for k in levels)):
        if sum(k * j for k, j in zip(levels, choice)) != level_sum:
            continue
        coef = 1
        reduced = b
        for k, j in zip(levels, choice):
            coef *= (-2 * m) ** j * comb(d_levels[k], j)
            for _ in range(j):
                reduced = reduced.without_mode(Generator.D, k)
        results.append((reduced, coef))
    return results


def shift_top(m: int, b: FockBasisVector) -> List[Tuple[FockBasisVector, Scalar]]:
    """
    T_m on a basis vector: exponent += m c; on Whittaker, lambda^m with d0 -> d0 - 2m.
    """
    if isinstance(b.space, Whittaker):
        lam_m = b.space.lam ** m
        k = b.d0power
        return [(replace(b, d0power=i), lam_m * comb(k, i) * (-2 * m) ** (k - i)) for i in range(k + 1)]
    return [(replace(b, exponent=b.exponent + LatticeVector(rational(m), ZERO)), ONE)]


def top_shift_apply(m: int, v: FockElement) -> FockElement:
    return v.map_basis(lambda b: FockElement(v.space, dict(shift_top(m, b))))


@lru_cache(maxsize=None)
def _exp_mode_basis(m: int, n: int, b: FockBasisVector) -> FockElement:
    if m == 0:
        return FockElement.basis(b) if n == -1 else FockElement.zero(b.space)
    a_exp = z_exponent(m, b)
    total = b.degree
    if n > total - 1 - a_exp + _slack:
        return FockElement.zero(b.space)
    pieces = []
    mc = LatticeVector(rational(m), ZERO)
    for level_sum in range(total + 1):
        schur_degree = level_sum - a_exp - n - 1
        if schur_degree < 0:
            continue
        for reduced, coef in _annihilator_terms(m, level_sum, b):
            for shifted, shift_coef in shift_top(m, reduced):
                created = schur_apply(mc, schur_degree, FockElement.basis(shifted))
                pieces.append((rational(coef) * shift_coef, created))
    return FockElement.combine(b.space, pieces)


def exp_mode_apply(m: int, n: int, v: FockElement) -> FockElement:
    """
    e^{mc}_n v, the coefficient of z^{-n-1} in Y(e^{mc}, z) v.

    The result is zero when n > deg(b) - 1 - A for every basis vector b.

    Raises:
        NonIntegerPower: the z-exponent on some basis vector is not an integer
    """
    return v.map_basis(lambda b: _exp_mode_basis(m, n, b))


def exp_mode_weight_apply(m: int, k: int, v: FockElement) -> FockElement:
    """e^{mc} mode with weight label k (degree shift -k)."""
    return v.map_basis(lambda b: _exp_mode_basis(m, ordinary_index(m, k, b), b))


# ============================================================================
# General states (iterate identity)
# ============================================================================

def _vanishing_bound(a: FockBasisVector, b: FockBasisVector) -> int:
    """Largest k with a_k b possibly nonzero."""
    m = a.exponent_multiple()
    return b.degree + a.degree - 1 - (z_exponent(m, b) if m else 0) + _slack


@lru_cache(maxsize=None)
def _state_mode_basis(a: FockBasisVector, k: int, b: FockBasisVector) -> FockElement:
    m = a.exponent_multiple()
    if not a.modes:
        return _exp_mode_basis(m, k, b)
    if k > _vanishing_bound(a, b):
        return FockElement.zero(b.space)
    gen, n = a.modes[0]
    if m == 0 and len(a.modes) == 1:
        # (h(-n)1)_k = (-1)^{n-1} C(k, n-1) h(k-n+1)
        coef = (-1) ** (n - 1) * binom(k, n - 1)
        if not coef:
            return FockElement.zero(b.space)
        return heis_apply(gen, k - n + 1, FockElement.basis(b)).scale(rational(coef))
    rest = a.without_mode(gen, n)
    pieces = []
    j = 0
    while k + j <= _vanishing_bound(rest, b):
        inner = _state_mode_basis(rest, k + j, b)
        if inner:
            pieces.append((rational(binom(n + j - 1, j)), heis_apply(gen, -n - j, inner)))
        j += 1
    sign = -((-1) ** n)
    for j in range(b.degree + 1 + _slack):
        for b2, c2 in heis_basis_terms(gen, j, b):
            pieces.append((sign * binom(n + j - 1, j) * c2, _state_mode_basis(rest, -n + k - j, b2)))
    return FockElement.combine(b.space, pieces)


def state_mode_apply(a: VAState, k: int, v: FockElement) -> FockElement:
    """
    a_k v for a state a of Pi(0), via
        (h(-n) B)_k = sum_j C(n+j-1, j) [h(-n-j) B_{k+j} - (-1)^n B_{-n+k-j} h(j)].

    Truncation is exact: B_k v = 0 once k > deg v + deg B - 1 - A_B.
    """
    pieces = []
    for a_basis, a_coef in a.terms.items():
        pieces.append((a_coef, v.map_basis(lambda b, a_basis=a_basis: _state_mode_basis(a_basis, k, b))))
    return FockElement.combine(v.space, pieces)


@trace_calls
def vertex_operator_modes(a: VAState, v: FockElement, k_min: int) -> Dict[int, FockElement]:
    """All nonzero modes a_k v for k >= k_min."""
    k_max = max(_vanishing_bound(ab, b) for ab in a.terms for b in v.terms)
    modes = {}
    for k in range(k_min, k_max + 1):
        image = state_mode_apply(a, k, v)
        if image:
            modes[k] = image
    return modes


# ============================================================================
# Translation
# ============================================================================

def _translate_basis(b: FockBasisVector) -> FockElement:
    pieces = []
    for gen, level in sorted(set(b.modes), key=lambda mode: (mode[0].value, mode[1])):
        t = b.multiplicity(gen, level)
        raised = b.without_mode(gen, level).with_mode(gen, level + 1)
        pieces.append((rational(t * level), FockElement.basis(raised)))
    m = b.exponent_multiple()
    if m:
        pieces.append((rational(m), FockElement.basis(b.with_mode(Generator.C, 1))))
    return FockElement.combine(b.space, pieces)


def translate(a: VAState) -> VAState:
    """D a, with D h(-n) = n h(-n-1) and D e^{mc} = m c(-1) e^{mc}; (Da)_k = -k a_{k-1}."""
    return a.map_basis(_translate_basis)


def translate_power(a: VAState, k: int) -> VAState:
    for _ in range(k):
        a = translate(a)
    return a


def exp_descendant(m: int, k: int) -> VAState:
    """e^{mc}_{-k-1} 1 = D^k e^{mc} / k!"""
    return translate_power(exp_state(m), k).scale(rational(1, factorial(k)))


def is_pipr(v: FockElement) -> bool:
    return isinstance(v.space, PiPR)
