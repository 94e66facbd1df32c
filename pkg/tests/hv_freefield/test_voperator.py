"""
Unit tests for vertex operators: Schur polynomials, exponential modes,
general state modes and the translation operator.
"""

import pytest

from hv_freefield.constants import Generator
from hv_freefield.errors import NonIntegerPower
from hv_freefield.fock import FockBasisVector, FockElement, LatticeVector, Pi0, exp_state, mode_state, vacuum
from hv_freefield.hvrealize import make_v, omega_state, screening_s
from hv_freefield.scalars import ZERO, rational
from hv_freefield.suites.base import graded_states
from hv_freefield.voperator import (
    binom, exp_descendant, exp_mode_apply, exp_mode_weight_apply, ordinary_index, schur_apply, schur_terms, slack,
    state_mode_apply, translate, truncation_slack, vertex_operator_modes, weight_index,
)

C, D = Generator.C, Generator.D


class TestSchur:

    def test_low_degrees(self):
        """S_0 = 1, S_p = 0 for p < 0, S_2 has two monomials."""
        assert schur_terms(0) == (((), 1),)
        assert schur_terms(-1) == ()
        assert len(schur_terms(2)) == 2

    def test_s2_of_c_on_vacuum(self):
        """S_2(c) 1 = 1/2 c(-1)^2 + 1/2 c(-2)."""
        got = schur_apply(C, 2, vacuum())
        expected = mode_state([(C, 1), (C, 1)]).scale(rational(1, 2)) + mode_state([(C, 2)]).scale(rational(1, 2))
        assert got == expected, f"Got: {got}\nExpected: {expected}"

    def test_generalised_binomial(self):
        assert binom(5, 2) == 10
        assert binom(-1, 2) == 1
        assert binom(-2, 3) == -4
        assert binom(3, -1) == 0


class TestExponentialModes:
    """e^{mc}_n on lattice states."""

    def test_creation_on_vacuum(self):
        """e^c_{-1} 1 = e^c and e^c_0 1 = 0."""
        assert exp_mode_apply(1, -1, vacuum()) == exp_state(1)
        assert not exp_mode_apply(1, 0, vacuum())

    def test_second_descendant(self):
        """e^c_{-2} 1 = c(-1) e^c = D e^c."""
        assert exp_mode_apply(1, -2, vacuum()) == mode_state([(C, 1)], 1)
        assert exp_descendant(1, 1) == mode_state([(C, 1)], 1)

    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_lowering_in_pipr(self, p, r):
        """e^c_{-p} v_{p,r} = v_{p,r-2}."""
        got = exp_mode_apply(1, -p, make_v(p, r))
        assert got == make_v(p, r, 1), f"p={p}\nGot: {got}\nExpected: {make_v(p, r, 1)}"

    def test_weight_indexing_inverts_ordinary(self, r):
        (b,) = make_v(2, r).terms
        for n in range(-3, 2):
            assert ordinary_index(1, weight_index(1, n, b), b) == n

    def test_weight_indexed_mode_matches(self, r):
        """Weight label 0 is the degree-preserving mode."""
        v = make_v(2, r)
        (b,) = v.terms
        assert exp_mode_weight_apply(1, 0, v) == exp_mode_apply(1, ordinary_index(1, 0, b), v)

    def test_non_integer_exponent_raises(self):
        """A half-integer z power has no mode expansion."""
        b = FockBasisVector(Pi0(), exponent=LatticeVector(ZERO, rational(1, 4)))
        with pytest.raises(NonIntegerPower):
            exp_mode_apply(1, 0, FockElement.basis(b))


class TestStateModes:

    def test_heisenberg_field_modes(self):
        """(c(-1)1)_k = c(k)."""
        got = state_mode_apply(mode_state([(C, 1)]), 1, mode_state([(D, 1)]))
        assert got == vacuum().scale(rational(2))

    def test_vacuum_is_identity(self, r):
        """1_{-1} = Id."""
        v = make_v(2, r)
        assert state_mode_apply(vacuum(), -1, v) == v
        assert not state_mode_apply(vacuum(), 0, v)


class TestTranslation:

    def test_translate_exponential(self):
        """D e^c = c(-1) e^c."""
        assert translate(exp_state(1)) == mode_state([(C, 1)], 1)

    def test_translate_mode(self):
        """D c(-1) 1 = c(-2) 1."""
        assert translate(mode_state([(C, 1)])) == mode_state([(C, 2)])

    def test_translate_vacuum(self):
        assert not translate(vacuum())


class TestTruncationSoundness:
    """Evaluating three modes past every vanishing bound changes no result."""

    EXTRA = 3

    def _compare(self, compute, cases):
        exact = {case: compute(*case) for case in cases}
        with truncation_slack(self.EXTRA):
            assert slack() == self.EXTRA
            for case, expected in exact.items():
                got = compute(*case)
                assert got == expected, f"{case}\nGot: {got}\nExpected: {expected}"
        assert slack() == 0

    def test_exponential_modes(self, r):
        states = graded_states(make_v(2, r), 2)
        cases = [(m, n, i) for m in (1, -1) for n in range(-4, 3) for i in range(len(states))]
        self._compare(lambda m, n, i: exp_mode_apply(m, n, states[i]), cases)

    def test_virasoro_state_modes(self, r):
        states = graded_states(make_v(1, r), 2) + graded_states(exp_state(1), 1)
        cases = [(k, i) for k in range(-2, 5) for i in range(len(states))]
        self._compare(lambda k, i: state_mode_apply(omega_state(), k, states[i]), cases)

    def test_composite_state_modes(self, r):
        """A state carrying both modes and an exponential."""
        a = mode_state([(D, 1), (C, 2)], -1)
        states = graded_states(make_v(1, r), 1)
        cases = [(k, i) for k in range(-3, 4) for i in range(len(states))]
        self._compare(lambda k, i: state_mode_apply(a, k, states[i]), cases)

    def test_mode_listing(self, r):
        """No mode beyond the listed ones appears when the bound is relaxed."""
        v = make_v(1, r)
        exact = vertex_operator_modes(omega_state(), v, -2)
        with truncation_slack(self.EXTRA):
            relaxed = vertex_operator_modes(omega_state(), v, -2)
        assert relaxed == exact

    def test_screening(self, r):
        states = graded_states(make_v(1, r), 2)
        self._compare(lambda i: screening_s(states[i]), [(i,) for i in range(len(states))])
