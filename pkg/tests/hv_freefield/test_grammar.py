"""
Unit tests for the state and operator-word grammar.
"""

import pytest

from hv_freefield.constants import Generator, HGen, Param
from hv_freefield.errors import GrammarError
from hv_freefield.fock import exp_state, mode_state, vacuum, whittaker_vector
from hv_freefield.grammar import (
    format_state, looks_like_verma, parse_operator_word, parse_state, parse_verma_terms, split_compute_expression,
)
from hv_freefield.hvrealize import make_cosingular, make_v, omega_state
from hv_freefield.scalars import ONE, param, rational

C, D = Generator.C, Generator.D


class TestFockStates:
    """parse_state / format_state."""

    def test_vac_shorthand(self):
        assert parse_state("vac") == vacuum()

    def test_grouped_modes(self):
        text = format_state(mode_state([(C, 1), (C, 1)]))
        assert text == "c(-1)^2 E[m=0]", f"Got: {text}\nExpected: c(-1)^2 E[m=0]"

    def test_omega_parses_back(self):
        """The Virasoro vector survives printing and parsing."""
        omega = omega_state()
        assert parse_state(format_state(omega)) == omega

    def test_shorthand_v_and_explicit_e_agree(self, r):
        assert parse_state("v[2,r,1]") == make_v(2, r, 1)
        assert parse_state("E[p=2,r=r,l=1]") == make_v(2, r, 1)

    def test_cosingular_shorthand(self, r):
        assert parse_state("cos[1,r,0,2]") == make_cosingular(1, r, 0, 2)

    def test_whittaker_with_d0(self, lam):
        assert parse_state("d0^2 w[lam]") == whittaker_vector(lam, 2)

    def test_linear_combination(self, cl):
        """Coefficients and signs combine term by term."""
        got = parse_state("(cL - 2)/24 * c(-2) vac - 1/2 * d(-2) vac")
        expected = mode_state([(C, 2)]).scale((cl - 2) / 24) - mode_state([(D, 2)]).scale(rational(1, 2))
        assert got == expected, f"Got: {format_state(got)}\nExpected: {format_state(expected)}"

    def test_exponential_top(self):
        assert parse_state("c(-1) E[m=1]") == mode_state([(C, 1)], 1)
        assert parse_state("E[m=-1]") == exp_state(-1)


class TestFockErrors:
    """Malformed states report a position."""

    def test_unknown_top_vector(self):
        """The error points at the top-vector atom."""
        with pytest.raises(GrammarError) as exc_info:
            parse_state("c(-1) X[m=0]")
        assert exc_info.value.position == 6

    def test_zero_state_rejected(self):
        with pytest.raises(GrammarError):
            parse_state("0")

    def test_positive_basis_mode_rejected(self):
        with pytest.raises(GrammarError) as exc_info:
            parse_state("c(1) vac")
        assert "negative" in exc_info.value.reason

    def test_d0_only_on_whittaker(self):
        with pytest.raises(GrammarError):
            parse_state("d0 vac")

    def test_mixed_spaces_rejected(self):
        with pytest.raises(GrammarError):
            parse_state("vac + v[1,r,0]")

    def test_unbalanced_bracket(self):
        with pytest.raises(GrammarError):
            parse_state("c(-1 vac")


class TestVermaStates:

    def test_terms_and_word_order(self):
        """Words are kept as written; coefficients carry the sign."""
        terms = parse_verma_terms("L(-1) I(-2) v[h,hI] - 2 * L(-2) v[h,hI]")
        assert len(terms) == 2
        assert terms[0].word == ((HGen.L, -1), (HGen.I, -2))
        assert terms[0].coefficient == ONE
        assert terms[1].coefficient == rational(-2)
        assert terms[0].h == param(Param.H)
        assert terms[0].hI == param(Param.HI)

    def test_mismatched_weights_rejected(self):
        with pytest.raises(GrammarError):
            parse_verma_terms("L(-1) v[h,hI] + v[h,0]")

    def test_looks_like_verma(self):
        assert looks_like_verma("L(-1) v[h,hI]")
        assert looks_like_verma("vac-verma[h,0]")
        assert not looks_like_verma("c(-1) vac")


class TestOperatorWords:
    """Operator words and the `OPS @ STATE` split."""

    def test_parse_word(self):
        tokens = parse_operator_word("L(-1) Q e(1,-3)")
        assert [t.name for t in tokens] == ["L", "Q", "e"]
        assert tokens[2].args == (1, -3)
        assert str(tokens[2]) == "e(1,-3)"
        assert tokens[1].position == 6

    def test_unknown_operator(self):
        with pytest.raises(GrammarError) as exc_info:
            parse_operator_word("L(-1) Foo")
        assert exc_info.value.position == 6

    def test_non_integer_argument(self):
        with pytest.raises(GrammarError):
            parse_operator_word("L(x)")

    def test_empty_word(self):
        with pytest.raises(GrammarError):
            parse_operator_word("   ")

    def test_split_expression(self):
        ops, state, offset = split_compute_expression("Q @ v[-2,r,0]")
        assert ops.strip() == "Q"
        assert state.strip() == "v[-2,r,0]"
        assert offset == 3

    def test_missing_at_sign(self):
        with pytest.raises(GrammarError) as exc_info:
            split_compute_expression("Q v[1,r]")
        assert exc_info.value.is_at_end()
