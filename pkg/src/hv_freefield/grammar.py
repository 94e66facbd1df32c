"""
Canonical text grammar for states and operator words.

Fock states:
    (cL/24 - 1) * c(-1)^2 d(-3) E[p=2,r=r,l=0]
    lam * d0^3 c(-2) W[lam]
    c(-2) E[m=-1]          (Pi0; `vac` is E[m=0])

Verma states:
    L(-2)L(-1)^2 I(-3) v[h,hI]

Shorthands accepted on input only:
    v[p,r,l]      v_{p, r-2l} (l defaults to 0)
    cos[p,r,l,m]  the cosingular vector v^(m) above v_{p, r-2l}
    w[lam]        w_lambda
    vac-verma[h,hI]

Terms are joined by ` + ` / ` - `; a coefficient is separated from its basis
vector by ` * ` and must be parenthesised unless it is a single name or number.
"""

import logging
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from hv_freefield.constants import Generator, HGen
from hv_freefield.errors import GrammarError, HvFreeFieldError
from hv_freefield.fock import (
    FockBasisVector, FockElement, LatticeVector, Pi0, PiPR, SpaceTag, Whittaker, gamma, heis_apply,
)
from hv_freefield.scalars import ONE, ZERO, Scalar, as_integer, format_coefficient, format_scalar, parse_scalar, rational

log = logging.getLogger(__name__)

_VAC = re.compile(r"(?<![\w\-])vac(?![\w\-\[])")
_MODE = re.compile(r"([cdLI])\((-?\d+)\)(?:\^(\d+))?")
_D0 = re.compile(r"d0(?:\^(\d+))?(?!\()")
_ATOM = re.compile(r"(vac-verma|cos|E|W|v|w)\[")


# ============================================================================
# Printing
# ============================================================================

def _format_modes(modes: Sequence[Tuple[str, int]]) -> str:
    """Group repeated (name, level) pairs as name(-k)^t."""
    parts: List[str] = []
    i = 0
    while i < len(modes):
        j = i
        while j < len(modes) and modes[j] == modes[i]:
            j += 1
        name, level = modes[i]
        power = j - i
        parts.append(f"{name}(-{level})" + (f"^{power}" if power > 1 else ""))
        i = j
    return " ".join(parts)


def shift_of(b: FockBasisVector) -> int:
    """l such that a Pi(p, r) basis vector sits above e^{gamma_{p, r-2l}}."""
    space = b.space
    diff = b.exponent.alpha - gamma(space.p, space.r).alpha
    shift = as_integer(diff)
    if shift is None or b.exponent.beta != gamma(space.p, space.r).beta:
        raise HvFreeFieldError(f"exponent {b.exponent} is not of the form gamma_(p, r-2l) in {space}")
    return shift


def format_top(b: FockBasisVector) -> str:
    space = b.space
    if isinstance(space, PiPR):
        return f"E[p={space.p},r={format_scalar(space.r)},l={shift_of(b)}]"
    if isinstance(space, Whittaker):
        return f"W[{format_scalar(space.lam)}]"
    return f"E[m={b.exponent_multiple()}]"


def format_basis(b: FockBasisVector) -> str:
    pieces = []
    if b.d0power:
        pieces.append("d0" + (f"^{b.d0power}" if b.d0power > 1 else ""))
    modes = _format_modes([(g.value, level) for g, level in b.modes])
    if modes:
        pieces.append(modes)
    pieces.append(format_top(b))
    return " ".join(pieces)


def format_terms(terms: Sequence[Tuple[str, Scalar]]) -> str:
    """Join (basis text, coefficient) pairs."""
    if not terms:
        return "0"
    rendered = []
    for basis, coef in terms:
        if coef == ONE:
            rendered.append(basis)
        else:
            rendered.append(f"{format_coefficient(coef)} * {basis}")
    return " + ".join(rendered)


def format_state(v: FockElement) -> str:
    """Canonical text of a FockElement; parse_state(format_state(v)) == v."""
    return format_terms([(format_basis(b), c) for b, c in v.items()])


# ============================================================================
# Parsing helpers
# ============================================================================

def _split_depth0(text: str, offset: int, is_split: Callable[[str, int], bool]) -> List[Tuple[str, int]]:
    pieces = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise GrammarError("unbalanced bracket", text, i)
        elif depth == 0 and is_split(text, i):
            pieces.append((text[start:i], offset + start))
            start = i
    if depth != 0:
        raise GrammarError("unbalanced bracket", text, len(text))
    pieces.append((text[start:], offset + start))
    return pieces


def _is_term_boundary(text: str, i: int) -> bool:
    if text[i] not in "+-":
        return False
    before = text[:i].rstrip()
    return before.endswith("]")


def split_terms(text: str) -> List[Tuple[int, str, int]]:
    """Split a linear combination into (sign, term text, offset)."""
    result = []
    for index, (piece, offset) in enumerate(_split_depth0(text, 0, _is_term_boundary)):
        sign = 1
        if index > 0:
            # later pieces start exactly at their +/- separator
            sign = -1 if piece[0] == "-" else 1
            piece = piece[1:]
            offset += 1
        stripped = piece.strip()
        if not stripped:
            raise GrammarError("empty term", text, offset)
        result.append((sign, stripped, offset + len(piece) - len(piece.lstrip())))
    return result


def split_coefficient(term: str, text: str, offset: int) -> Tuple[Scalar, str, int]:
    """Separate `coef * basis` at the last depth-0 `*`."""
    star = -1
    depth = 0
    for i, ch in enumerate(term):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "*" and depth == 0:
            star = i
    if star < 0:
        if term.startswith("-"):
            return -ONE, term[1:].strip(), offset + 1
        return ONE, term, offset
    coef_text = term[:star].strip()
    if coef_text == "-":
        coef = -ONE
    else:
        try:
            coef = parse_scalar(coef_text)
        except GrammarError as e:
            raise GrammarError(e.reason, text, offset + e.position) from e
    basis = term[star + 1:]
    lead = len(basis) - len(basis.lstrip())
    return coef, basis.strip(), offset + star + 1 + lead


def _split_commas(body: str, text: str, offset: int) -> List[Tuple[str, int]]:
    pieces = []
    depth = 0
    start = 0
    for i, ch in enumerate(body):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            pieces.append((body[start:i].strip(), offset + start))
            start = i + 1
    pieces.append((body[start:].strip(), offset + start))
    return pieces


def _scalar_at(piece: str, text: str, offset: int) -> Scalar:
    try:
        return parse_scalar(piece)
    except GrammarError as e:
        raise GrammarError(e.reason, text, offset + e.position) from e


def _int_at(piece: str, text: str, offset: int) -> int:
    try:
        return int(piece)
    except ValueError:
        raise GrammarError(f"expected an integer, got {piece!r}", text, offset) from None


@dataclass
class _Prefix:
    """Modes and d0 power read before the top-vector atom."""
    d0power: int
    modes: List[Tuple[str, int, int]]  # (name, index, power)
    atom_start: int


def _read_prefix(basis: str, text: str, offset: int) -> _Prefix:
    pos = 0
    d0power = 0
    modes: List[Tuple[str, int, int]] = []
    while True:
        while pos < len(basis) and basis[pos].isspace():
            pos += 1
        if pos >= len(basis):
            raise GrammarError("missing top vector", text, offset + pos)
        m = _D0.match(basis, pos)
        if m:
            d0power += int(m.group(1) or 1)
            pos = m.end()
            continue
        m = _MODE.match(basis, pos)
        if m:
            modes.append((m.group(1), int(m.group(2)), int(m.group(3) or 1)))
            pos = m.end()
            continue
        return _Prefix(d0power, modes, pos)


def _read_atom(basis: str, pos: int, text: str, offset: int) -> Tuple[str, List[Tuple[str, int]]]:
    m = _ATOM.match(basis, pos)
    if not m:
        raise GrammarError("expected a top vector (E[..], W[..], v[..], cos[..], w[..], vac)", text, offset + pos)
    if not basis.endswith("]"):
        raise GrammarError("trailing text after top vector", text, offset + len(basis))
    body_start = m.end()
    body = basis[body_start:-1]
    if "[" in body or "]" in body:
        raise GrammarError("nested brackets in top vector", text, offset + body_start)
    return m.group(1), _split_commas(body, text, offset + body_start)


# ============================================================================
# Fock states
# ============================================================================

def _keyed(args: List[Tuple[str, int]], keys: Sequence[str], text: str) -> Dict[str, Tuple[str, int]]:
    values = {}
    for piece, off in args:
        if "=" not in piece:
            raise GrammarError(f"expected key=value with key in {list(keys)}", text, off)
        key, value = piece.split("=", 1)
        key = key.strip()
        if key not in keys:
            raise GrammarError(f"unknown key {key!r}", text, off)
        values[key] = (value.strip(), off + piece.index("=") + 1)
    missing = [k for k in keys if k not in values]
    if missing:
        raise GrammarError(f"missing keys {missing}", text, args[-1][1] if args else 0)
    return values


def _fock_atom(kind: str, args: List[Tuple[str, int]], d0power: int, text: str, offset: int) -> FockElement:
    """Top vector (or shorthand combination) named by an atom."""
    if kind == "E":
        if len(args) == 1:
            m_text, m_off = _keyed(args, ("m",), text)["m"]
            m = _int_at(m_text, text, m_off)
            return FockElement.basis(FockBasisVector(Pi0(), exponent=LatticeVector(rational(m), ZERO)))
        fields = _keyed(args, ("p", "r", "l"), text)
        p = _int_at(fields["p"][0], text, fields["p"][1])
        r = _scalar_at(fields["r"][0], text, fields["r"][1])
        ell = _int_at(fields["l"][0], text, fields["l"][1])
        return _pipr_top(p, r, ell)
    if kind in ("W", "w"):
        if len(args) != 1:
            raise GrammarError("Whittaker top vector takes one argument", text, offset)
        lam = _scalar_at(args[0][0], text, args[0][1])
        return FockElement.basis(FockBasisVector(Whittaker(lam), d0power=d0power))
    if kind == "v":
        if len(args) not in (2, 3):
            raise GrammarError("v[p,r,l] takes two or three arguments", text, offset)
        p = _int_at(args[0][0], text, args[0][1])
        r = _scalar_at(args[1][0], text, args[1][1])
        ell = _int_at(args[2][0], text, args[2][1]) if len(args) == 3 else 0
        return _pipr_top(p, r, ell)
    if kind == "cos":
        if len(args) != 4:
            raise GrammarError("cos[p,r,l,m] takes four arguments", text, offset)
        from hv_freefield.hvrealize import make_cosingular
        p = _int_at(args[0][0], text, args[0][1])
        r = _scalar_at(args[1][0], text, args[1][1])
        ell = _int_at(args[2][0], text, args[2][1])
        m = _int_at(args[3][0], text, args[3][1])
        if m < 0:
            raise GrammarError("cosingular order must be non-negative", text, args[3][1])
        return make_cosingular(p, r, ell, m)
    raise GrammarError(f"{kind}[..] is not a Fock state", text, offset)


def _pipr_top(p: int, r: Scalar, ell: int) -> FockElement:
    return FockElement.basis(FockBasisVector(PiPR(p, r), exponent=gamma(p, r - 2 * ell)))


def _parse_fock_basis(basis: str, text: str, offset: int) -> FockElement:
    prefix = _read_prefix(basis, text, offset)
    kind, args = _read_atom(basis, prefix.atom_start, text, offset)
    if prefix.d0power and kind not in ("W", "w"):
        raise GrammarError("d0^k is only valid on Whittaker states", text, offset)
    state = _fock_atom(kind, args, prefix.d0power, text, offset + prefix.atom_start)
    for name, index, power in reversed(prefix.modes):
        if name not in ("c", "d"):
            raise GrammarError(f"{name}(..) is not a Heisenberg mode", text, offset)
        if index >= 0:
            raise GrammarError("basis modes must have negative index", text, offset)
        for _ in range(power):
            state = heis_apply(Generator(name), index, state)
    return state


def parse_state(text: str) -> FockElement:
    """
    Parse the canonical Fock-state grammar (plus input shorthands).

    Raises:
        GrammarError: with the offending position
    """
    source = _VAC.sub("E[m=0]", text)
    if source != text:
        # positions after a substituted `vac` shift; report against the rewritten text
        text = source
    if not source.strip():
        raise GrammarError("empty state", text, 0)
    if source.strip() == "0":
        raise GrammarError("the zero state carries no space; give a basis vector", text, 0)
    result: Optional[FockElement] = None
    for sign, term, offset in split_terms(source):
        coef, basis, basis_offset = split_coefficient(term, text, offset)
        element = _parse_fock_basis(basis, text, basis_offset)
        if result is None:
            result = FockElement.zero(element.space)
        if element.space != result.space:
            raise GrammarError(f"term lives in {element.space}, expected {result.space}", text, offset)
        result = FockElement.combine(result.space, [(ONE, result), (sign * coef, element)])
    log.debug(f"[GRAMMAR] parsed {len(result)} terms in {result.space}")
    return result


def space_of_text(text: str) -> SpaceTag:
    return parse_state(text).space


# ============================================================================
# Verma states
# ============================================================================

@dataclass(frozen=True)
class VermaTerm:
    """One parsed Verma term: coefficient, ordered (gen, index) word, hw scalars."""
    coefficient: Scalar
    word: Tuple[Tuple[HGen, int], ...]
    h: Scalar
    hI: Scalar


def parse_verma_terms(text: str) -> List[VermaTerm]:
    """
    Parse `coef * L(-2)L(-1)^2 I(-3) v[h,hI]` combinations.

    Words are returned left-to-right as written; they need not be in PBW order.
    """
    terms: List[VermaTerm] = []
    for sign, term, offset in split_terms(text):
        coef, basis, basis_offset = split_coefficient(term, text, offset)
        prefix = _read_prefix(basis, text, basis_offset)
        if prefix.d0power:
            raise GrammarError("d0^k is not a Verma generator", text, basis_offset)
        kind, args = _read_atom(basis, prefix.atom_start, text, basis_offset)
        if kind not in ("v", "vac-verma") or len(args) != 2:
            raise GrammarError("expected v[h,hI] or vac-verma[h,hI]", text, basis_offset + prefix.atom_start)
        h = _scalar_at(args[0][0], text, args[0][1])
        h_i = _scalar_at(args[1][0], text, args[1][1])
        word = []
        for name, index, power in prefix.modes:
            if name not in ("L", "I"):
                raise GrammarError(f"{name}(..) is not a Verma generator", text, basis_offset)
            word.extend([(HGen(name), index)] * power)
        terms.append(VermaTerm(sign * coef, tuple(word), h, h_i))
    hws = {(t.h, t.hI) for t in terms}
    if len(hws) > 1:
        raise GrammarError("terms use different highest weights", text, 0)
    return terms


def looks_like_verma(text: str) -> bool:
    """Verma text uses L/I generators or vac-verma; Fock text never does."""
    return "vac-verma[" in text or bool(re.search(r"(?<![\w])[LI]\(", text))


def format_verma_basis(word: Sequence[Tuple[HGen, int]], h: Scalar, h_i: Scalar) -> str:
    blocks = []
    for gen in HGen:
        modes = [(g.value, -index) for g, index in word if g is gen]
        if modes:
            blocks.append(_format_modes(modes).replace(" ", ""))
    blocks.append(f"v[{format_scalar(h)},{format_scalar(h_i)}]")
    return " ".join(blocks)


# ============================================================================
# Operator words
# ============================================================================

OPERATOR_NAMES = ("L", "Lt", "I", "W", "Wbar", "Q", "S", "calQ", "e", "c", "d", "phi", "phit", "T", "D", "Schur")

_OPERATOR = re.compile(r"\s*([A-Za-z]+)(?:\(([^()]*)\))?")


@dataclass(frozen=True)
class OperatorToken:
    """One factor of an operator word, e.g. L(-2) or e(1,-3)."""
    name: str
    args: Tuple[int, ...]
    position: int

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(str(a) for a in self.args)})"


def parse_operator_word(text: str) -> List[OperatorToken]:
    """Parse `L(-1) Q e(1,-3)`; factors apply right to left."""
    tokens: List[OperatorToken] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _OPERATOR.match(text, pos)
        if not m or m.start(1) != pos:
            raise GrammarError("expected an operator", text, pos)
        name = m.group(1)
        if name not in OPERATOR_NAMES:
            raise GrammarError(f"unknown operator {name!r}", text, pos)
        args: Tuple[int, ...] = ()
        if m.group(2) is not None:
            try:
                args = tuple(int(a) for a in m.group(2).split(","))
            except ValueError:
                raise GrammarError("operator arguments must be integers", text, m.start(2)) from None
        tokens.append(OperatorToken(name, args, pos))
        pos = m.end()
    if not tokens:
        raise GrammarError("empty operator word", text, 0)
    return tokens


def split_compute_expression(text: str) -> Tuple[str, str, int]:
    """`OPS @ STATE` -> (ops, state, state offset)."""
    if "@" not in text:
        raise GrammarError("expected `OPERATORS @ STATE`", text, len(text))
    at = text.index("@")
    return text[:at], text[at + 1:], at + 1
