"""
Unit tests for the exact coefficient field.

Tests parsing, canonical equality, bindings and zero-division handling.
"""

import random
from fractions import Fraction

import pytest

from hv_freefield.constants import Param
from hv_freefield.errors import DivisionByZeroScalar, GrammarError
from hv_freefield.scalars import (
    FIELD, ONE, ZERO, as_integer, as_rational, canonical_pair, canonicalize, divide, format_scalar, from_fraction,
    param, parse_rational, parse_scalar, rational, scalar_arith, substitute,
)


class TestArithmetic:
    """Field operations stay canonical."""

    def test_equal_rational_functions_compare_equal(self, cl):
        """Differently built but equal Scalars are equal."""
        a = (cl - 26) / 24
        b = (cl * 2 - 52) / 48
        assert a == b, f"Canonical forms differ\nGot: {a}\nExpected: {b}"

    def test_scalar_arith_operations(self, cl):
        """scalar_arith dispatches the four field operations."""
        assert scalar_arith("add", cl, ONE) == cl + 1
        assert scalar_arith("sub", cl, ONE) == cl - 1
        assert scalar_arith("mul", cl, rational(2)) == 2 * cl
        assert scalar_arith("div", cl, rational(2)) == cl / 2

    def test_division_by_zero_raises(self, cl):
        """Dividing by the zero Scalar raises DivisionByZeroScalar."""
        with pytest.raises(DivisionByZeroScalar):
            divide(cl, ZERO)
        with pytest.raises(DivisionByZeroScalar):
            scalar_arith("div", ONE, ZERO)
        with pytest.raises(DivisionByZeroScalar):
            rational(1, 0)

    def test_unknown_operation_rejected(self):
        with pytest.raises(ValueError):
            scalar_arith("pow", ONE, ONE)

    def test_constant_extraction(self, cl):
        """as_rational / as_integer only succeed on constants."""
        assert as_rational(rational(3, 4)) == Fraction(3, 4)
        assert as_integer(rational(6, 3)) == 2
        assert as_integer(rational(1, 2)) is None
        assert as_rational(cl) is None


class TestParsing:
    """Scalar text grammar."""

    def test_parse_central_shift(self, cl):
        """(cL - 26)/24 parses to the field element."""
        assert parse_scalar("(cL - 26)/24") == (cl - 26) / 24

    def test_parse_power_syntaxes(self, lam):
        """`^` and `**` both denote powers, `lam` aliases lambda."""
        assert parse_scalar("lambda^2") == lam ** 2
        assert parse_scalar("lam**2") == lam ** 2

    def test_parse_all_parameters(self):
        """Every Param spelling is accepted."""
        for p in Param:
            assert parse_scalar(p.value) == param(p), f"Parameter {p.value} did not parse to its generator"

    def test_format_parses_back(self, cl, cli, r):
        """format_scalar output is accepted by parse_scalar."""
        for s in ((cl - 2) / 24, rational(-1, 2), cli ** 2 * (1 - r) / (cl - 26)):
            text = format_scalar(s)
            assert parse_scalar(text) == s, f"Round trip failed\nGot: {parse_scalar(text)}\nExpected: {s}"

    def test_bad_character_position(self):
        """GrammarError points at the offending character."""
        with pytest.raises(GrammarError) as exc_info:
            parse_scalar("cL + $")
        assert exc_info.value.position == 5

    def test_unknown_name(self):
        with pytest.raises(GrammarError) as exc_info:
            parse_scalar("foo + 1")
        assert exc_info.value.position == 0
        assert "foo" in exc_info.value.reason

    def test_empty_text(self):
        with pytest.raises(GrammarError) as exc_info:
            parse_scalar("   ")
        assert "empty" in exc_info.value.reason

    def test_literal_division_by_zero(self):
        with pytest.raises(DivisionByZeroScalar):
            parse_scalar("1/0")

    def test_parse_rational(self):
        assert parse_rational("-3/2") == Fraction(-3, 2)
        assert from_fraction("26") == rational(26)
        with pytest.raises(GrammarError):
            parse_rational("three")


class TestSubstitution:
    """Parameter bindings."""

    def test_binding_cl_26_kills_shift(self, cl):
        """(cL-26)/24 vanishes under cL = 26."""
        assert substitute((cl - 26) / 24, {Param.CL: 26}) == ZERO

    def test_partial_binding_keeps_free_parameters(self, cl, cli):
        got = substitute(cl * cli, {Param.CL: Fraction(1, 2)})
        assert got == cli / 2, f"Partial binding wrong\nGot: {got}\nExpected: {cli / 2}"

    def test_binding_annihilating_denominator_raises(self, cl):
        """A binding that zeroes a denominator raises DivisionByZeroScalar."""
        with pytest.raises(DivisionByZeroScalar):
            substitute(ONE / (cl - 26), {Param.CL: 26})

    def test_empty_binding_is_identity(self, cl):
        s = (cl - 2) / 24
        assert substitute(s, {}) is s


def _random_polynomial(rng, gens):
    terms = [rng.randint(-3, 3) * g ** rng.randint(0, 2) for g in gens]
    return sum(terms, rational(rng.randint(-3, 3)))


def _random_scalars(seed, count=6):
    """Deterministic nonzero rational functions of cL, cLI, r."""
    rng = random.Random(seed)
    gens = [param(Param.CL), param(Param.CLI), param(Param.R)]
    scalars = []
    while len(scalars) < count:
        numer, denom = _random_polynomial(rng, gens), _random_polynomial(rng, gens)
        if numer and denom:
            scalars.append(numer / denom)
    return scalars


class TestFieldAxioms:
    """Arithmetic on random rational functions obeys the field laws exactly."""

    @pytest.mark.parametrize("seed", [3, 17, 2024])
    def test_ring_laws(self, seed):
        a, b, c, *_ = _random_scalars(seed)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + ZERO == a and a * ONE == a
        assert a - a == ZERO

    @pytest.mark.parametrize("seed", [3, 17, 2024])
    def test_inverses(self, seed):
        for s in _random_scalars(seed):
            assert divide(ONE, s) * s == ONE
            assert divide(s, s) == ONE


class TestCanonicalForm:
    """canonicalize / canonical_pair are idempotent and normalise the denominator."""

    @pytest.mark.parametrize("seed", [5, 11])
    def test_canonicalize_idempotent(self, seed):
        for s in _random_scalars(seed):
            once = canonicalize(s)
            assert once == s
            assert canonicalize(once) == once
            assert canonical_pair(once) == canonical_pair(s)

    @pytest.mark.parametrize("seed", [5, 11])
    def test_denominator_monic(self, seed):
        for s in _random_scalars(seed):
            numer, denom = canonical_pair(s)
            assert denom.LC == 1
            assert FIELD.new(numer, denom) == s

    def test_equal_scalars_format_identically(self, cl):
        """Text is printed from canonical_pair, so equal Scalars print the same."""
        a = cl / (2 * cl - 4)
        b = (3 * cl) / (6 * cl - 12)
        assert format_scalar(a) == format_scalar(b)

    def test_format_uses_monic_denominator(self, cl):
        text = format_scalar(cl / (2 * cl - 4))
        assert text.endswith("/(cL - 2)"), f"Got: {text}"
        assert parse_scalar(text) == cl / (2 * cl - 4)

    def test_format_omits_unit_denominator(self, cl):
        assert "/" not in format_scalar(2 * cl + 1)
        assert format_scalar(rational(-1)) == "-1"

    @pytest.mark.parametrize("seed", [3, 17])
    def test_random_format_parses_back(self, seed):
        for s in _random_scalars(seed):
            assert parse_scalar(format_scalar(s)) == s
