"""
Abstract Verma modules of the twisted Heisenberg-Virasoro algebra at level zero.

Elements are combinations of PBW monomials L(-a1)...L(-ak) I(-b1)...I(-bj) v,
each block weakly decreasing. The action commutes a generator rightward with

    [L(n), L(m)] = (n-m) L(n+m) + delta_{n,-m} (n^3-n) cL/12
    [L(n), I(m)] = -m I(n+m) - delta_{n,-m} (n^2+n) cLI
    [I(n), I(m)] = 0
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import npartitions
from sympy.utilities.iterables import partitions

from hv_freefield.constants import HGen, Param
from hv_freefield.fock import FockElement
from hv_freefield.linalg import kernel
from hv_freefield.scalars import ONE, ZERO, RationalLike, Scalar, as_rational, divide, param, rational, substitute
from hv_freefield.trace_util import trace_calls

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class HWData:
    """Highest weight (h, hI) with central charges cL, cLI; cI is 0."""
    h: Scalar
    hI: Scalar
    cL: Scalar = field(default_factory=lambda: param(Param.CL))
    cLI: Scalar = field(default_factory=lambda: param(Param.CLI))

    @classmethod
    def symbolic(cls) -> 'HWData':
        return cls(param(Param.H), param(Param.HI))

    def substitute(self, bindings: Mapping[Param, RationalLike]) -> 'HWData':
        return HWData(*(substitute(s, bindings) for s in (self.h, self.hI, self.cL, self.cLI)))


@dataclass(frozen=True, order=True)
class PBWMonomial:
    """L(-l1)...L(-lk) I(-i1)...I(-ij) with both level tuples weakly decreasing."""
    l_levels: Tuple[int, ...] = ()
    i_levels: Tuple[int, ...] = ()

    def __post_init__(self):
        for levels in (self.l_levels, self.i_levels):
            if any(level < 1 for level in levels):
                raise ValueError(f"PBW levels must be positive: {levels}")
            if list(levels) != sorted(levels, reverse=True):
                raise ValueError(f"PBW levels must be weakly decreasing: {levels}")

    @property
    def level(self) -> int:
        return sum(self.l_levels) + sum(self.i_levels)

    def word(self) -> Tuple[Tuple[HGen, int], ...]:
        """(generator, mode index) left to right."""
        return tuple((HGen.L, -a) for a in self.l_levels) + tuple((HGen.I, -b) for b in self.i_levels)

    def is_vacuum(self) -> bool:
        return not self.l_levels and not self.i_levels


VACUUM_MONOMIAL = PBWMonomial()


class VermaElement:
    """Canonical combination of PBW monomials applied to the highest-weight vector."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[PBWMonomial, Scalar]] = None):
        self._terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def highest_weight(cls) -> 'VermaElement':
        return cls({VACUUM_MONOMIAL: ONE})

    @classmethod
    def monomial(cls, mono: PBWMonomial, coef: Scalar = ONE) -> 'VermaElement':
        return cls({mono: coef})

    @classmethod
    def combine(cls, pieces: Iterable[Tuple[Scalar, 'VermaElement']]) -> 'VermaElement':
        acc: Dict[PBWMonomial, Scalar] = {}
        for coef, element in pieces:
            if not coef:
                continue
            for m, c in element._terms.items():
                acc[m] = acc.get(m, ZERO) + coef * c
        return cls(acc)

    @property
    def terms(self) -> Mapping[PBWMonomial, Scalar]:
        return dict(self._terms)

    def items(self) -> List[Tuple[PBWMonomial, Scalar]]:
        return sorted(self._terms.items(), key=lambda item: (item[0].level, item[0]))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: 'VermaElement') -> 'VermaElement':
        return VermaElement.combine([(ONE, self), (ONE, other)])

    def __sub__(self, other: 'VermaElement') -> 'VermaElement':
        return VermaElement.combine([(ONE, self), (-ONE, other)])

    def __neg__(self) -> 'VermaElement':
        return self.scale(-ONE)

    def scale(self, s: Scalar) -> 'VermaElement':
        return VermaElement({m: s * c for m, c in self._terms.items()})

    def substitute(self, bindings: Mapping[Param, RationalLike]) -> 'VermaElement':
        return VermaElement({m: substitute(c, bindings) for m, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VermaElement):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def levels(self) -> List[int]:
        return sorted({m.level for m in self._terms})

    def __repr__(self) -> str:
        return f"VermaElement({len(self)} terms)"


def format_verma(e: VermaElement, hw: HWData) -> str:
    from hv_freefield.grammar import format_terms, format_verma_basis
    return format_terms([(format_verma_basis(m.word(), hw.h, hw.hI), c) for m, c in e.items()])


# ============================================================================
# Action
# ============================================================================

def _bracket(x: Tuple[HGen, int], y: Tuple[HGen, int], hw: HWData) -> Tuple[Optional[Tuple[HGen, int]], Scalar, Scalar]:
    """[x, y] = coef * z + central; returns (z, coef, central)."""
    (gx, n), (gy, m) = x, y
    if gx is HGen.I and gy is HGen.I:
        return None, ZERO, ZERO
    if gx is HGen.L and gy is HGen.L:
        central = hw.cL * rational(n ** 3 - n, 12) if n == -m else ZERO
        return (HGen.L, n + m), rational(n - m), central
    if gx is HGen.L:
        central = -hw.cLI * (n * n + n) if n == -m else ZERO
        return (HGen.I, n + m), rational(-m), central
    # [I(n), L(m)] = -[L(m), I(n)] = n I(n+m) + delta_{m,-n} (m^2+m) cLI
    central = hw.cLI * (m * m + m) if m == -n else ZERO
    return (HGen.I, n + m), rational(n), central


def _prepend(gen: HGen, level: int, mono: PBWMonomial) -> Optional[PBWMonomial]:
    """gen(-level) * mono if that product is already in PBW order, else None."""
    if gen is HGen.L:
        if not mono.l_levels or level >= mono.l_levels[0]:
            return PBWMonomial((level,) + mono.l_levels, mono.i_levels)
        return None
    if mono.l_levels:
        return None
    # I's commute: insert into the sorted block
    levels = tuple(sorted(mono.i_levels + (level,), reverse=True))
    return PBWMonomial((), levels)


def _first_factor(mono: PBWMonomial) -> Tuple[Tuple[HGen, int], PBWMonomial]:
    if mono.l_levels:
        return (HGen.L, -mono.l_levels[0]), PBWMonomial(mono.l_levels[1:], mono.i_levels)
    return (HGen.I, -mono.i_levels[0]), PBWMonomial((), mono.i_levels[1:])


@lru_cache(maxsize=None)
def _act_monomial(gen: HGen, n: int, mono: PBWMonomial, hw: HWData) -> Tuple[Tuple[PBWMonomial, Scalar], ...]:
    if mono.is_vacuum():
        if n > 0:
            return ()
        if n == 0:
            weight = hw.h if gen is HGen.L else hw.hI
            return ((mono, weight),) if weight else ()
        return ((PBWMonomial((-n,), ()) if gen is HGen.L else PBWMonomial((), (-n,)), ONE),)
    if n < 0:
        placed = _prepend(gen, -n, mono)
        if placed is not None:
            return ((placed, ONE),)
    # X Y rest = Y (X rest) + [X, Y] rest
    first, rest = _first_factor(mono)
    acc: Dict[PBWMonomial, Scalar] = {}

    def add(element: Iterable[Tuple[PBWMonomial, Scalar]], scale: Scalar):
        for m, c in element:
            acc[m] = acc.get(m, ZERO) + scale * c

    for m1, c1 in _act_monomial(gen, n, rest, hw):
        add(_act_monomial(first[0], first[1], m1, hw), c1)
    target, coef, central = _bracket((gen, n), first, hw)
    if target is not None and coef:
        add(_act_monomial(target[0], target[1], rest, hw), coef)
    if central:
        add(((rest, ONE),), central)
    return tuple((m, c) for m, c in acc.items() if c)


def act(gen: HGen, n: int, e: VermaElement, hw: HWData) -> VermaElement:
    """gen(n) e, reduced to PBW normal order."""
    acc: Dict[PBWMonomial, Scalar] = {}
    for mono, coef in e._terms.items():
        for m, c in _act_monomial(gen, n, mono, hw):
            acc[m] = acc.get(m, ZERO) + coef * c
    return VermaElement(acc)


def apply_word(word: Sequence[Tuple[HGen, int]], e: VermaElement, hw: HWData) -> VermaElement:
    """Apply a left-to-right operator word (rightmost factor first)."""
    for gen, n in reversed(word):
        e = act(gen, n, e, hw)
    return e


# ============================================================================
# Singular vectors
# ============================================================================

def _schur_in_i(p: int, e: VermaElement, hw: HWData, sign: int) -> VermaElement:
    """S_p(x) e with x(-k) = sign * I(-k)/cLI."""
    from hv_freefield.voperator import schur_terms

    unit = divide(rational(sign), hw.cLI)
    pieces = []
    for monomial, coef in schur_terms(p):
        w = e
        total = 0
        for level, mult in monomial:
            for _ in range(mult):
                w = act(HGen.I, -level, w, hw)
                total += 1
        pieces.append((rational(coef.numerator, coef.denominator) * unit ** total, w))
    return VermaElement.combine(pieces)


def phi_operator_apply(p: int, e: VermaElement, hw: HWData) -> VermaElement:
    """
    Phi_p(L, c) e with c(-i) = -I(-i)/cLI:
        sum_i L(-i) S_{p-i}(-c) + S_p(-c) (L(0) + (cL-2)(p-1)/24)
        - (cL-26)/24 sum_i (i-1) c(-i) S_{p-i}(-c)

    Raises:
        DivisionByZeroScalar: cLI is zero
    """
    pieces = []
    minus_c_unit = divide(-ONE, hw.cLI)
    for i in range(1, p + 1):
        lowered = _schur_in_i(p - i, e, hw, sign=1)
        pieces.append((ONE, act(HGen.L, -i, lowered, hw)))
        if i > 1:
            c_term = act(HGen.I, -i, lowered, hw).scale(minus_c_unit)
            pieces.append((-(hw.cL - 26) * (i - 1) / 24, c_term))
    zero_mode = act(HGen.L, 0, e, hw) + e.scale((hw.cL - 2) * (p - 1) / 24)
    pieces.append((ONE, _schur_in_i(p, zero_mode, hw, sign=1)))
    return VermaElement.combine(pieces)


def phi_element(p: int, hw: HWData) -> VermaElement:
    """Phi_p(L, c) v at level p."""
    return phi_operator_apply(p, VermaElement.highest_weight(), hw)


def schur_operator_apply(p: int, e: VermaElement, hw: HWData) -> VermaElement:
    """S_p(c) e with c(-k) = -I(-k)/cLI."""
    return _schur_in_i(p, e, hw, sign=-1)


def schur_singular_element(p: int, hw: HWData) -> VermaElement:
    """S_p(c) v; singular when hI = (1+p) cLI."""
    return schur_operator_apply(p, VermaElement.highest_weight(), hw)


def is_singular(e: VermaElement, p: int, hw: HWData) -> bool:
    """L(k) e = I(k) e = 0 for 1 <= k <= p."""
    for k in range(1, p + 1):
        for gen in HGen:
            if act(gen, k, e, hw):
                return False
    return True


# ============================================================================
# PBW basis and dimensions
# ============================================================================

def _partition_levels(n: int) -> List[Tuple[int, ...]]:
    if n == 0:
        return [()]
    result = []
    for part in partitions(n):
        levels: List[int] = []
        for k in sorted(part, reverse=True):
            levels.extend([k] * part[k])
        result.append(tuple(levels))
    return result


@lru_cache(maxsize=None)
def pbw_basis(level: int) -> Tuple[PBWMonomial, ...]:
    """All PBW monomials of the given level, in a fixed order."""
    basis = []
    for k in range(level + 1):
        for l_levels in _partition_levels(k):
            for i_levels in _partition_levels(level - k):
                basis.append(PBWMonomial(l_levels, i_levels))
    return tuple(sorted(basis))


def graded_dimension(level: int) -> int:
    return len(pbw_basis(level))


def bipartition_count(n: int) -> int:
    """sum_k p(k) p(n-k)"""
    return sum(int(npartitions(k)) * int(npartitions(n - k)) for k in range(n + 1))


class Reducibility(Enum):
    REDUCIBLE = "reducible"
    IRREDUCIBLE = "irreducible"
    INDETERMINATE = "indeterminate"

    def __str__(self) -> str:
        return self.value


def reducibility(hw: HWData) -> Reducibility:
    """Reducible iff hI/cLI - 1 is a nonzero integer; decided only for explicit rationals."""
    if not hw.cLI:
        return Reducibility.INDETERMINATE
    ratio = as_rational(hw.hI / hw.cLI)
    if ratio is None:
        return Reducibility.INDETERMINATE
    shifted = ratio - 1
    if shifted.denominator == 1 and shifted != 0:
        return Reducibility.REDUCIBLE
    return Reducibility.IRREDUCIBLE


@trace_calls
def enumerate_singular(p: int, hw: HWData) -> List[VermaElement]:
    """Basis of the singular vectors at level p, as an exact nullspace."""
    sources = [VermaElement.monomial(m) for m in pbw_basis(p)]
    images = []
    for source in sources:
        stacked: Dict[Tuple[HGen, int, PBWMonomial], Scalar] = {}
        for k in range(1, p + 1):
            for gen in HGen:
                for m, c in act(gen, k, source, hw).terms.items():
                    stacked[(gen, k, m)] = c
        images.append(stacked)
    return kernel(sources, images, VermaElement.combine)


# ============================================================================
# Free-field realization
# ============================================================================

def free_field_weights(p: int, r: Scalar) -> HWData:
    """(h_{p,r+2}, (1-p) cLI): the highest weight of v_{p,r+2}."""
    from hv_freefield.hvrealize import conformal_weight, heisenberg_weight
    return HWData(conformal_weight(p, r + 2), heisenberg_weight(p))


def realize(e: VermaElement, p: int, r: Scalar) -> FockElement:
    """Send each PBW monomial to the same operator word applied to v_{p,r+2}."""
    from hv_freefield.hvrealize import heisenberg, make_v, virasoro

    top = make_v(p, r + 2)
    pieces = []
    for mono, coef in e._terms.items():
        state = top
        for gen, n in reversed(mono.word()):
            state = virasoro(n, state) if gen is HGen.L else heisenberg(n, state)
        pieces.append((coef, state))
    return FockElement.combine(top.space, pieces)
