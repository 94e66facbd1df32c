"""
Fock spaces of the rank-two Heisenberg algebra generated by c, d.

A FockBasisVector is a monomial in negative modes c(-k), d(-k) applied to a
top vector: e^gamma for the lattice spaces Pi0 / Pi(p, r), or d0^k w for the
Whittaker space. FockElement is a finite linear combination of basis vectors
living in one space; zero coefficients are never stored.
"""

import logging
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from sympy.utilities.iterables import partitions

from hv_freefield.constants import LATTICE_CD_PAIRING, Generator, Param
from hv_freefield.errors import ConfigurationError, UnsupportedSpace
from hv_freefield.scalars import ONE, ZERO, RationalLike, Scalar, as_integer, format_scalar, param, rational, substitute

log = logging.getLogger(__name__)

Mode = Tuple[Generator, int]


# ============================================================================
# Lattice
# ============================================================================

@dataclass(frozen=True)
class LatticeVector:
    """alpha * c + beta * d in the complexified hyperbolic lattice."""
    alpha: Scalar
    beta: Scalar

    @classmethod
    def zero(cls) -> 'LatticeVector':
        return cls(ZERO, ZERO)

    @classmethod
    def of(cls, gen: Generator) -> 'LatticeVector':
        return cls(ONE, ZERO) if gen is Generator.C else cls(ZERO, ONE)

    def __add__(self, other: 'LatticeVector') -> 'LatticeVector':
        return LatticeVector(self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other: 'LatticeVector') -> 'LatticeVector':
        return LatticeVector(self.alpha - other.alpha, self.beta - other.beta)

    def __neg__(self) -> 'LatticeVector':
        return LatticeVector(-self.alpha, -self.beta)

    def scale(self, s: Scalar) -> 'LatticeVector':
        return LatticeVector(s * self.alpha, s * self.beta)

    def coefficient(self, gen: Generator) -> Scalar:
        return self.alpha if gen is Generator.C else self.beta

    def substitute(self, bindings: Mapping[Param, RationalLike]) -> 'LatticeVector':
        return LatticeVector(substitute(self.alpha, bindings), substitute(self.beta, bindings))

    def __str__(self) -> str:
        return f"({format_scalar(self.alpha)})*c + ({format_scalar(self.beta)})*d"


def pairing(a: LatticeVector, b: LatticeVector) -> Scalar:
    """Bilinear form with <c,d> = 2 and <c,c> = <d,d> = 0."""
    return LATTICE_CD_PAIRING * (a.alpha * b.beta + a.beta * b.alpha)


def central_shift() -> Scalar:
    """(cL - 26)/12, the c-component separating d1, d2 from d."""
    return (param(Param.CL) - 26) / 12


def d1_vector() -> LatticeVector:
    """d1 = d + (cL - 26)/12 c"""
    return LatticeVector(central_shift(), ONE)


def d2_vector() -> LatticeVector:
    """d2 = d - (cL - 26)/12 c"""
    return LatticeVector(-central_shift(), ONE)


def gamma(p: int, s: Scalar) -> LatticeVector:
    """gamma_{p,s} = (p-1)/2 d2 + (1-s)/2 c"""
    return d2_vector().scale(rational(p - 1, 2)) + LatticeVector((1 - s) / 2, ZERO)


# ============================================================================
# Spaces
# ============================================================================

@dataclass(frozen=True)
class Pi0:
    """The vertex algebra Pi(0): top vectors e^{mc}, m integer."""

    def __str__(self) -> str:
        return "Pi0"


@dataclass(frozen=True)
class PiPR:
    """The module Pi(p, r): top vectors e^{gamma_{p, r-2l}}, l integer."""
    p: int
    r: Scalar

    def __str__(self) -> str:
        return f"Pi({self.p}, {format_scalar(self.r)})"


@dataclass(frozen=True)
class Whittaker:
    """Whittaker-type module with top vectors d0^k w, c(0) = -1, e^c_{-1} w = lambda w."""
    lam: Scalar

    def __post_init__(self):
        if not self.lam:
            raise ConfigurationError("Whittaker eigenvalue lambda must be nonzero")

    def __str__(self) -> str:
        return f"Whittaker({format_scalar(self.lam)})"


SpaceTag = Union[Pi0, PiPR, Whittaker]


def substitute_space(space: SpaceTag, bindings: Mapping[Param, RationalLike]) -> SpaceTag:
    if isinstance(space, PiPR):
        return PiPR(space.p, substitute(space.r, bindings))
    if isinstance(space, Whittaker):
        return Whittaker(substitute(space.lam, bindings))
    return space


# ============================================================================
# Basis vectors
# ============================================================================

def _mode_key(mode: Mode) -> Tuple[str, int]:
    return mode[0].value, mode[1]


@dataclass(frozen=True)
class FockBasisVector:
    """
    Monomial prod h(-k) applied to a top vector.

    Attributes:
        space: the space the vector lives in
        exponent: lattice top vector (None on Whittaker)
        d0power: power of d0 on Whittaker (0 elsewhere)
        modes: sorted multiset of (generator, level) with level >= 1
    """
    space: SpaceTag
    exponent: Optional[LatticeVector] = None
    d0power: int = 0
    modes: Tuple[Mode, ...] = ()

    def __post_init__(self):
        if isinstance(self.space, Whittaker):
            if self.exponent is not None:
                raise UnsupportedSpace("lattice exponent", self.space)
            if self.d0power < 0:
                raise ValueError(f"negative d0 power {self.d0power}")
        else:
            if self.exponent is None:
                raise ValueError(f"basis vector of {self.space} needs a lattice exponent")
            if self.d0power:
                raise UnsupportedSpace("d0^k", self.space)
        if any(level < 1 for _, level in self.modes):
            raise ValueError(f"mode levels must be positive: {self.modes}")
        object.__setattr__(self, "modes", tuple(sorted(self.modes, key=_mode_key)))

    @property
    def degree(self) -> int:
        """Sum of the levels of the negative modes."""
        return sum(level for _, level in self.modes)

    def multiplicity(self, gen: Generator, level: int) -> int:
        return sum(1 for mode in self.modes if mode == (gen, level))

    def with_mode(self, gen: Generator, level: int) -> 'FockBasisVector':
        return replace(self, modes=self.modes + ((gen, level),))

    def without_mode(self, gen: Generator, level: int) -> 'FockBasisVector':
        modes = list(self.modes)
        modes.remove((gen, level))
        return replace(self, modes=tuple(modes))

    def top(self) -> 'FockBasisVector':
        """The same top vector with no modes."""
        return replace(self, modes=())

    def exponent_multiple(self) -> int:
        """m such that the exponent is m*c (Pi0 states only)."""
        if self.exponent is None or self.exponent.beta:
            raise UnsupportedSpace("state-field correspondence", self.space)
        m = as_integer(self.exponent.alpha)
        if m is None:
            raise UnsupportedSpace("state-field correspondence", self.exponent)
        return m

    def sort_key(self) -> Tuple:
        exponent = "" if self.exponent is None else str(self.exponent)
        return self.degree, self.d0power, tuple(_mode_key(m) for m in self.modes), exponent


# ============================================================================
# Elements
# ============================================================================

class FockElement:
    """
    Finite linear combination of FockBasisVectors over the coefficient field.

    Instances are immutable and canonical: zero coefficients are dropped,
    so equality of elements is equality of their term maps.
    """

    __slots__ = ("space", "_terms")

    def __init__(self, space: SpaceTag, terms: Optional[Mapping[FockBasisVector, Scalar]] = None):
        self.space = space
        clean: Dict[FockBasisVector, Scalar] = {}
        for basis, coef in (terms or {}).items():
            if basis.space != space:
                raise UnsupportedSpace(f"basis vector of {basis.space}", space)
            if coef:
                clean[basis] = coef
        self._terms = clean

    @classmethod
    def basis(cls, b: FockBasisVector, coef: Scalar = ONE) -> 'FockElement':
        return cls(b.space, {b: coef})

    @classmethod
    def zero(cls, space: SpaceTag) -> 'FockElement':
        return cls(space)

    @classmethod
    def combine(cls, space: SpaceTag, pieces: Iterable[Tuple[Scalar, 'FockElement']]) -> 'FockElement':
        """sum coef * element"""
        acc: Dict[FockBasisVector, Scalar] = {}
        for coef, element in pieces:
            if not coef:
                continue
            for b, c in element._terms.items():
                acc[b] = acc.get(b, ZERO) + coef * c
        return cls(space, acc)

    @property
    def terms(self) -> Mapping[FockBasisVector, Scalar]:
        return dict(self._terms)

    def items(self) -> List[Tuple[FockBasisVector, Scalar]]:
        """Terms in deterministic display order."""
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def __iter__(self) -> Iterator[Tuple[FockBasisVector, Scalar]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, b: FockBasisVector) -> Scalar:
        return self._terms.get(b, ZERO)

    def __add__(self, other: 'FockElement') -> 'FockElement':
        if not isinstance(other, FockElement):
            return NotImplemented
        self._check_space(other)
        return FockElement.combine(self.space, [(ONE, self), (ONE, other)])

    def __sub__(self, other: 'FockElement') -> 'FockElement':
        if not isinstance(other, FockElement):
            return NotImplemented
        self._check_space(other)
        return FockElement.combine(self.space, [(ONE, self), (-ONE, other)])

    def __neg__(self) -> 'FockElement':
        return self.scale(-ONE)

    def scale(self, s: Scalar) -> 'FockElement':
        return FockElement(self.space, {b: s * c for b, c in self._terms.items()})

    def __rmul__(self, s: Scalar) -> 'FockElement':
        if isinstance(s, int):
            s = rational(s)
        return self.scale(s)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockElement):
            return NotImplemented
        return self.space == other.space and self._terms == other._terms

    __hash__ = None

    def map_basis(self, fn: Callable[[FockBasisVector], 'FockElement'],
                  space: Optional[SpaceTag] = None) -> 'FockElement':
        """Linear extension of fn."""
        return FockElement.combine(space or self.space, [(c, fn(b)) for b, c in self._terms.items()])

    def degrees(self) -> List[int]:
        return sorted({b.degree for b in self._terms})

    def homogeneous_degree(self) -> Optional[int]:
        """The common degree of all terms, or None if mixed or zero."""
        degrees = self.degrees()
        return degrees[0] if len(degrees) == 1 else None

    def relabel(self, space: SpaceTag) -> 'FockElement':
        """Move every term to another space tag (same exponents)."""
        return FockElement(space, {replace(b, space=space): c for b, c in self._terms.items()})

    def _check_space(self, other: 'FockElement'):
        if self.space != other.space:
            raise UnsupportedSpace(f"combining an element of {other.space}", self.space)

    def __str__(self) -> str:
        from hv_freefield.grammar import format_state
        return format_state(self)

    def __repr__(self) -> str:
        return f"FockElement({self.space}, {len(self)} terms)"


def substitute_element(v: FockElement, bindings: Mapping[Param, RationalLike]) -> FockElement:
    """Apply parameter bindings to coefficients, exponents and the space tag."""
    if not bindings:
        return v
    space = substitute_space(v.space, bindings)
    acc: Dict[FockBasisVector, Scalar] = {}
    for b, c in v._terms.items():
        exponent = None if b.exponent is None else b.exponent.substitute(bindings)
        nb = replace(b, space=space, exponent=exponent)
        acc[nb] = acc.get(nb, ZERO) + substitute(c, bindings)
    return FockElement(space, acc)


# ============================================================================
# Heisenberg action
# ============================================================================

@lru_cache(maxsize=None)
def _heis_basis(gen: Generator, n: int, b: FockBasisVector) -> Tuple[Tuple[FockBasisVector, Scalar], ...]:
    if n < 0:
        return ((b.with_mode(gen, -n), ONE),)
    if n > 0:
        t = b.multiplicity(gen.partner, n)
        if not t:
            return ()
        return ((b.without_mode(gen.partner, n), rational(LATTICE_CD_PAIRING * n * t)),)
    if isinstance(b.space, Whittaker):
        if gen is Generator.C:
            return ((b, -ONE),)
        return ((replace(b, d0power=b.d0power + 1), ONE),)
    weight = pairing(LatticeVector.of(gen), b.exponent)
    return ((b, weight),) if weight else ()


def heis_basis_terms(gen: Generator, n: int, b: FockBasisVector) -> Tuple[Tuple[FockBasisVector, Scalar], ...]:
    """h(n) on a single basis vector, as (basis, coefficient) pairs."""
    return _heis_basis(gen, n, b)


def heis_apply(g: Union[Generator, LatticeVector], n: int, v: FockElement) -> FockElement:
    """
    Apply the Heisenberg mode g(n) for g = c, d or a lattice vector alpha c + beta d.

    n < 0 adds a creation mode, n > 0 contracts with the partner generator
    (factor 2 n t, t the multiplicity), n = 0 multiplies by <g, exponent>
    (on Whittaker: c(0) = -1, d(0) raises the d0 power).
    """
    if isinstance(g, LatticeVector):
        return FockElement.combine(v.space, [
            (g.alpha, heis_apply(Generator.C, n, v)),
            (g.beta, heis_apply(Generator.D, n, v)),
        ])
    acc: Dict[FockBasisVector, Scalar] = {}
    for b, c in v._terms.items():
        for nb, nc in _heis_basis(g, n, b):
            acc[nb] = acc.get(nb, ZERO) + c * nc
    return FockElement(v.space, acc)


def degree(b: FockBasisVector) -> int:
    return b.degree


# ============================================================================
# Graded bases
# ============================================================================

def _partition_tuples(n: int) -> List[Tuple[int, ...]]:
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
def mode_monomials(n: int) -> Tuple[Tuple[Mode, ...], ...]:
    """All multisets of c/d modes of total level n (bipartitions of n)."""
    monomials = []
    for k in range(n + 1):
        for c_levels in _partition_tuples(k):
            for d_levels in _partition_tuples(n - k):
                monomials.append(tuple((Generator.C, lv) for lv in c_levels)
                                 + tuple((Generator.D, lv) for lv in d_levels))
    return tuple(monomials)


def graded_basis(top: FockBasisVector, n: int) -> List[FockBasisVector]:
    """Basis of the degree-n piece above the given top vector."""
    return [replace(top, modes=modes) for modes in mode_monomials(n)]


# ============================================================================
# Constructors
# ============================================================================

def exp_basis(m: int) -> FockBasisVector:
    """e^{mc} in Pi0."""
    return FockBasisVector(Pi0(), exponent=LatticeVector(rational(m), ZERO))


def vacuum() -> FockElement:
    return FockElement.basis(exp_basis(0))


def exp_state(m: int) -> FockElement:
    return FockElement.basis(exp_basis(m))


def mode_state(modes: Iterable[Mode], m: int = 0) -> FockElement:
    """prod h(-k) e^{mc} in Pi0."""
    return FockElement.basis(FockBasisVector(Pi0(), exponent=exp_basis(m).exponent, modes=tuple(modes)))


def whittaker_vector(lam: Scalar, d0power: int = 0) -> FockElement:
    """d0^k w_lambda"""
    return FockElement.basis(FockBasisVector(Whittaker(lam), d0power=d0power))
