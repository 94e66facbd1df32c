"""
Exact coefficient field: rational functions over QQ in the fixed parameters
cL, cLI, r, h, hI, lambda, mu, cW (graded-lex order, in that order).

A Scalar is a sympy FracElement of FIELD. sympy keeps every element in
reduced form (numerator and denominator coprime), so two Scalars are equal
exactly when their canonical forms agree.

Usage:
    from hv_freefield.scalars import param, rational, parse_scalar
    from hv_freefield.constants import Param

    cL = param(Param.CL)
    h21 = (cL - 26) / 24 * rational(-3) - 1
    parse_scalar("(cL - 26)/24")
"""

import logging
import re
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple, Union

from sympy import Rational, Symbol, zoo
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, field
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.rings import PolyElement

from hv_freefield.constants import PARAM_ORDER, Param
from hv_freefield.errors import DivisionByZeroScalar, GrammarError

log = logging.getLogger(__name__)

Scalar = FracElement
RationalLike = Union[int, Fraction, str]

FIELD, *_GENS = field(",".join(PARAM_ORDER), QQ, grlex)
_PARAM_GENS: Dict[Param, Scalar] = dict(zip(Param, _GENS))

ZERO: Scalar = FIELD.zero
ONE: Scalar = FIELD.one

# `lambda` is a Python keyword, so it is renamed before sympy sees the text
_LAMBDA_ALIAS = "lambda_"
_LOCALS = {name: Symbol(name) for name in PARAM_ORDER if name != Param.LAMBDA.value}
_LOCALS[_LAMBDA_ALIAS] = Symbol(Param.LAMBDA.value)
_LOCALS["lam"] = Symbol(Param.LAMBDA.value)

_ALLOWED_CHARS = re.compile(r"[0-9A-Za-z_+\-*/^() \t]")
_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_ATOM = re.compile(r"-?[A-Za-z_][A-Za-z_0-9]*|-?\d+(/\d+)?")
_BARE = re.compile(r"-?[A-Za-z_][A-Za-z_0-9]*|-?\d+")
_TRANSFORMS = standard_transformations + (convert_xor,)


def param(p: Param) -> Scalar:
    """The generator of FIELD for a parameter."""
    return _PARAM_GENS[p]


def rational(numerator: int, denominator: int = 1) -> Scalar:
    """Constant Scalar numerator/denominator."""
    if denominator == 0:
        raise DivisionByZeroScalar(expression=f"{numerator}/{denominator}")
    return FIELD(QQ(numerator, denominator))


def from_fraction(value: RationalLike) -> Scalar:
    """Constant Scalar from an int, Fraction or "p/q" string."""
    fr = parse_rational(value) if isinstance(value, str) else Fraction(value)
    return rational(fr.numerator, fr.denominator)


def is_zero(s: Scalar) -> bool:
    return not s


def scalar_arith(op: str, a: Scalar, b: Scalar) -> Scalar:
    """
    Field operation on two Scalars.

    Args:
        op: one of "add", "sub", "mul", "div"
        a, b: operands

    Returns:
        Canonical result.

    Raises:
        DivisionByZeroScalar: op is "div" and b is zero
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return divide(a, b)
    raise ValueError(f"unknown scalar operation: {op}")


def divide(a: Scalar, b: Scalar) -> Scalar:
    if not b:
        raise DivisionByZeroScalar(expression=f"({format_scalar(a)})/0")
    return a / b


def canonicalize(s: Scalar) -> Scalar:
    """Re-reduce numerator/denominator; idempotent."""
    return FIELD.new(s.numer, s.denom)


def canonical_pair(s: Scalar) -> Tuple[PolyElement, PolyElement]:
    """
    (numerator, denominator) scaled so the denominator's leading coefficient
    under graded-lex order is 1.
    """
    lc = s.denom.LC
    return s.numer.quo_ground(lc), s.denom.quo_ground(lc)


def as_rational(s: Scalar) -> Optional[Fraction]:
    """The value of a constant Scalar, or None if it depends on a parameter."""
    if not (s.numer.is_ground and s.denom.is_ground):
        return None
    expr = s.as_expr()
    return Fraction(int(expr.p), int(expr.q))


def as_integer(s: Scalar) -> Optional[int]:
    """The value of an integer-constant Scalar, or None."""
    value = as_rational(s)
    if value is None or value.denominator != 1:
        return None
    return value.numerator


def substitute(s: Scalar, bindings: Mapping[Param, RationalLike]) -> Scalar:
    """
    Replace bound parameters by rational values.

    Raises:
        DivisionByZeroScalar: a binding annihilates the denominator
    """
    if not bindings:
        return s
    subs = {Symbol(p.value): _to_sympy_rational(v) for p, v in bindings.items()}
    denom = s.denom.as_expr().subs(subs)
    if denom == 0:
        raise DivisionByZeroScalar("binding annihilates a denominator", format_scalar(s))
    numer = s.numer.as_expr().subs(subs)
    return FIELD.from_expr(numer) / FIELD.from_expr(denom)


def parse_rational(text: RationalLike) -> Fraction:
    """Parse "26", "-3/2" into a Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise GrammarError(f"not a rational number ({e})", text, 0) from e


def parse_scalar(text: str) -> Scalar:
    """
    Parse integer-coefficient polynomial syntax with `/` into a Scalar.

    Parameters are spelled cL, cLI, r, h, hI, lambda (or lam), mu, cW;
    `^` and `**` both denote powers.

    Raises:
        GrammarError: bad character, unknown name or malformed expression
    """
    source = text.strip()
    if not source:
        raise GrammarError("empty scalar", text, 0)
    for i, ch in enumerate(text):
        if not _ALLOWED_CHARS.fullmatch(ch):
            raise GrammarError(f"unexpected character {ch!r} in scalar", text, i)
    for match in _IDENTIFIER.finditer(text):
        name = match.group(0)
        if name not in _LOCALS and name != Param.LAMBDA.value:
            raise GrammarError(f"unknown parameter {name!r}", text, match.start())
    source = re.sub(r"\blambda\b", _LAMBDA_ALIAS, source)
    try:
        expr = parse_expr(source, local_dict=dict(_LOCALS), transformations=_TRANSFORMS)
    except (SyntaxError, TypeError, ValueError, ZeroDivisionError) as e:
        offset = getattr(e, "offset", None) or 0
        raise GrammarError(f"malformed scalar ({type(e).__name__})", text, max(offset - 1, 0)) from e
    if expr.has(zoo):
        raise DivisionByZeroScalar("division by zero in scalar text", text)
    try:
        return FIELD.from_expr(expr)
    except (ValueError, CoercionFailed) as e:
        raise GrammarError("not a rational function of the parameters", text, 0) from e


def format_scalar(s: Scalar) -> str:
    """
    Canonical text form, parseable by parse_scalar.

    Printed from canonical_pair: the denominator is monic under graded-lex
    order and omitted when it is 1.
    """
    numer, denom = canonical_pair(s)
    if denom == 1:
        return str(numer)
    return f"{_grouped(str(numer))}/{_grouped(str(denom))}"


def _grouped(text: str) -> str:
    return text if _BARE.fullmatch(text) else f"({text})"


def format_coefficient(s: Scalar) -> str:
    """Scalar text for use as a coefficient: bare when atomic, parenthesised otherwise."""
    text = format_scalar(s)
    if _ATOM.fullmatch(text):
        return text
    return f"({text})"


def _to_sympy_rational(value: RationalLike) -> Rational:
    fr = parse_rational(value)
    return Rational(fr.numerator, fr.denominator)