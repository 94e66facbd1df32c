"""
Unit tests for the realized Heisenberg-Virasoro operators, the screening
operators and the module families.
"""

from functools import partial

import pytest

from hv_freefield.constants import Generator, Param
from hv_freefield.errors import UnsupportedSpace
from hv_freefield.fock import FockElement, d1_vector, exp_state, graded_basis, heis_apply, vacuum, whittaker_vector
from hv_freefield.hvrealize import (
    OpKind, RealizedOp, apply, conformal_weight, heisenberg, heisenberg_state, image_filtration,
    infinite_rank_witness, kernel_filtration, make_cosingular, make_v, omega_state, phi_apply, q_power,
    screening_q, screening_s, subsingular_relation, verify_relacija, virasoro,
)
from hv_freefield.linalg import rank
from hv_freefield.scalars import param, rational
from hv_freefield.suites.base import commutator, graded_states
from hv_freefield.suites.calq import CALQ, calq_mode_sum
from hv_freefield.voperator import exp_mode_apply, schur_apply

C, D = Generator.C, Generator.D


class TestStateFieldCorrespondence:
    """Fields applied to the vacuum return their states."""

    def test_virasoro_vector(self):
        """L(-2) 1 = omega."""
        assert virasoro(-2, vacuum()) == omega_state()

    def test_heisenberg_vector(self):
        """I(-1) 1 = -cLI c(-1) 1."""
        assert heisenberg(-1, vacuum()) == heisenberg_state()

    def test_vacuum_annihilated(self):
        for n in (-1, 0, 1, 2):
            assert not virasoro(n, vacuum()), f"L({n}) 1 should vanish"


class TestTopVectors:
    """Highest-weight data of v_{p,r}."""

    @pytest.mark.parametrize("p", [-2, 0, 1, 2])
    def test_zero_modes(self, p, r, cli):
        v = make_v(p, r)
        h = conformal_weight(p, r)
        assert virasoro(0, v) == v.scale(h)
        assert heisenberg(0, v) == v.scale((1 - p) * cli)

    @pytest.mark.parametrize("p", [1, 2])
    def test_positive_modes_annihilate(self, p, r):
        v = make_v(p, r)
        for n in (1, 2, 3):
            assert not virasoro(n, v)
            assert not heisenberg(n, v)

    def test_weight_shift(self, r):
        """h_{p,r+2} = h_{p,r} - p."""
        for p in (-1, 1, 3):
            assert conformal_weight(p, r + 2) == conformal_weight(p, r) - p

    @pytest.mark.parametrize("p", [1, 2])
    def test_virasoro_norms(self, p, r, cl):
        """L(1)L(-1) v = 2h v and L(2)L(-2) v = (4h + cL/2) v."""
        v = make_v(p, r)
        h = conformal_weight(p, r)
        assert virasoro(1, virasoro(-1, v)) == v.scale(2 * h)
        got = virasoro(2, virasoro(-2, v))
        expected = v.scale(4 * h + cl / 2)
        assert got == expected, f"Got: {got}\nExpected: {expected}"

    @pytest.mark.parametrize("p", [1, 2])
    def test_twisted_term(self, p, r, cli):
        """L(1) I(-1) v = (I(0) - 2 cLI) v."""
        v = make_v(p, r)
        assert virasoro(1, heisenberg(-1, v)) == v.scale((1 - p) * cli - 2 * cli)


class TestScreening:

    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_q_kills_positive_tops(self, p, r):
        assert not screening_q(make_v(p, r))

    @pytest.mark.parametrize("p", [1, 2])
    def test_q_on_first_cosingular(self, p, r):
        """Q v^(1)_{p,r} = v_{p,r-2}."""
        got = screening_q(make_cosingular(p, r, 0, 1))
        assert got == make_v(p, r, 1), f"Got: {got}\nExpected: {make_v(p, r, 1)}"

    def test_q_on_negative_top(self, r):
        """Q v_{-2,r} = S_2(c) v_{-2,r-2}."""
        got = screening_q(make_v(-2, r))
        expected = schur_apply(Generator.C, 2, make_v(-2, r, 1))
        assert got == expected, f"Got: {got}\nExpected: {expected}"

    def test_subsingular_relation_at_first_order(self, r):
        assert not subsingular_relation(1, r, 0, 1, 1)

    def test_q_power_composes(self, r):
        v = make_cosingular(1, r, 0, 2)
        assert q_power(v, 2) == screening_q(screening_q(v))

    def test_s_undefined_off_pipr(self):
        with pytest.raises(UnsupportedSpace):
            screening_s(vacuum())

    def test_calq_undefined_on_whittaker(self, lam):
        with pytest.raises(UnsupportedSpace):
            apply(RealizedOp(OpKind.CALQ), whittaker_vector(lam))


class TestRealizedOp:

    def test_only_l_deforms(self):
        with pytest.raises(ValueError):
            RealizedOp(OpKind.I, 1, deformed=True)

    def test_names(self):
        assert str(RealizedOp(OpKind.L, -2, deformed=True)) == "Lt(-2)"
        assert str(RealizedOp(OpKind.Q)) == "Q"


class TestRelacija:

    def test_identity_holds(self):
        assert verify_relacija()

    def test_mutated_coefficient_detected(self, cl):
        assert not verify_relacija((cl - 25) / 24)

    def test_identity_under_binding(self):
        assert verify_relacija(bindings={Param.CL: 26})


class TestFiltrations:

    def test_infinite_rank_residues_vanish(self, r):
        residues = infinite_rank_witness(r, 3)
        assert len(residues) == 4
        assert all(not res for res in residues)

    def test_kernel_vectors_are_killed(self, r):
        cells = kernel_filtration(1, r, 0, 2)
        assert len(cells[0]) == 1
        for degree, vectors in cells.items():
            for v in vectors:
                assert not screening_q(v), f"degree {degree}: Q {v} != 0"


    def test_rank_nullity_per_cell(self, r):
        """dim Ker Q + rank Q = dim of each graded cell above v_{1,r}."""
        (top,) = make_v(1, r).terms
        cells = kernel_filtration(1, r, 0, 3)
        for degree in range(4):
            sources = [FockElement.basis(b) for b in graded_basis(top, degree)]
            image_rank = rank([screening_q(s) for s in sources])
            assert len(cells[degree]) + image_rank == len(sources), f"degree {degree}"

    def test_kernel_chain_nested(self, r):
        """Ker Q^1 sits inside Ker Q^2 cell by cell."""
        small, large = kernel_filtration(1, r, 0, 2), kernel_filtration(1, r, 1, 2)
        for degree in range(3):
            assert rank(small[degree] + large[degree]) == rank(large[degree]), f"degree {degree}"
            assert len(small[degree]) <= len(large[degree])

    @pytest.mark.parametrize("m", [1, 2])
    def test_cosingular_nilpotency_order(self, m, r):
        """v^(m) lies in Ker Q^{m+1} but not in Ker Q^m."""
        cos = make_cosingular(1, r, 0, m)
        assert q_power(cos, m)
        assert not q_power(cos, m + 1)

    def test_q_injective_on_negative_module(self, r):
        cells = kernel_filtration(-1, r, 0, 3)
        assert all(not cell for cell in cells.values()), f"Got kernel dims: {[len(c) for c in cells.values()]}"

    def test_image_chain_on_negative_module(self, r):
        """Im Q^{m+1} sits inside Im Q^m on Pi(-1, r)."""
        images = [image_filtration(-1, r, m, 2) for m in range(3)]
        for m in range(2):
            for degree in range(3):
                outer, inner = images[m][degree], images[m + 1][degree]
                assert rank(outer + inner) == rank(outer), f"m={m}, degree {degree}"


class TestScreeningCommutes:
    """Q = e^c_0 commutes with the realized algebra."""

    @pytest.mark.parametrize("p", [1, 2])
    def test_commutes_with_l_and_i(self, p, r):
        for v in graded_states(make_v(p, r), 2):
            for n in range(-2, 3):
                assert not commutator(screening_q, partial(virasoro, n), v), f"[Q, L({n})] on {v}"
                assert not commutator(screening_q, partial(heisenberg, n), v), f"[Q, I({n})] on {v}"

    @pytest.mark.parametrize("p", [1, 2])
    def test_q_on_negative_top(self, p, r):
        """Q v_{-p,r} = S_p(c) v_{-p,r-2}."""
        assert screening_q(make_v(-p, r)) == schur_apply(C, p, make_v(-p, r, 1))


class TestPhiLowering:
    """Phi_p(L, c) kills v_{p,r+2}; the deformed Phi_p lowers it."""

    @pytest.mark.parametrize("p", [1, 2])
    def test_phi_vanishes_on_top(self, p, r):
        got = phi_apply(p, make_v(p, r + 2))
        assert not got, f"Got: {got}\nExpected: 0"

    @pytest.mark.parametrize("p", [1, 2])
    @pytest.mark.parametrize("n", [0, 1])
    def test_deformed_phi_lowers(self, p, n, r):
        got = phi_apply(p, make_v(p, r + 2, n), deformed=True)
        expected = make_v(p, r + 2, n + 1)
        assert got == expected, f"Got: {got}\nExpected: {expected}"


class TestScreeningCommutators:
    """Brackets of c(m), I(m), L(m) with the non-local screening S on Pi(1, r)."""

    MODES = range(-2, 3)

    def test_c_bracket(self, r):
        """[c(m), S] = 2 e^c_m - 2 delta_{m,0} e^c_0"""
        for v in graded_states(make_v(1, r), 2):
            for m in self.MODES:
                got = commutator(partial(heis_apply, C, m), screening_s, v)
                expected = exp_mode_apply(1, m, v).scale(rational(2))
                if m == 0:
                    expected = expected - screening_q(v).scale(rational(2))
                assert got == expected, f"m={m} on {v}\nGot: {got}\nExpected: {expected}"

    def test_i_bracket(self, r, cli):
        """[I(m), S] = -2 cLI (e^c_m - delta_{m,0} e^c_0)"""
        for v in graded_states(make_v(1, r), 2):
            for m in self.MODES:
                got = commutator(partial(heisenberg, m), screening_s, v)
                inner = exp_mode_apply(1, m, v)
                if m == 0:
                    inner = inner - screening_q(v)
                assert got == inner.scale(-2 * cli), f"m={m} on {v}"

    def test_l_bracket(self, r):
        """[L(m), S] = e^c_m d1(0) - d1(m) e^c_0 + 2 delta_{m,0} e^c_0"""
        d1 = d1_vector()
        for v in graded_states(make_v(1, r), 2):
            for m in self.MODES:
                got = commutator(partial(virasoro, m), screening_s, v)
                expected = exp_mode_apply(1, m, heis_apply(d1, 0, v)) - heis_apply(d1, m, screening_q(v))
                if m == 0:
                    expected = expected + screening_q(v).scale(rational(2))
                assert got == expected, f"m={m} on {v}\nGot: {got}\nExpected: {expected}"


class TestDeformedAction:
    """tilde L(n) = L(n) + e^c_n on the lattice modules."""

    @pytest.mark.parametrize("p", [1, 2])
    def test_lowering_by_l_minus_p(self, p, r):
        """tilde L(-p) v_{p,r-2n} = L(-p) v_{p,r-2n} + v_{p,r-2(n+1)}"""
        for n in range(2):
            v = make_v(p, r, n)
            assert virasoro(-p, v, deformed=True) == virasoro(-p, v) + make_v(p, r, n + 1)

    @pytest.mark.parametrize("p", [1, 2])
    def test_cosingular_vectors(self, p, r):
        """Q^m v^(m) = v_{p,r-2m} and Q^{m+1} v^(m) = 0."""
        for m in (1, 2):
            cos = make_cosingular(p, r, 0, m)
            assert q_power(cos, m) == make_v(p, r, m)
            assert not q_power(cos, m + 1)

    def test_q_on_pi0r(self, r):
        assert screening_q(make_v(0, r)) == make_v(0, r, 1)

    @pytest.mark.parametrize("p", [1, 2])
    def test_negative_module(self, p, r):
        """tilde L(n) v_{-p,r} = S_{p-n}(c) v_{-p,r-2} for 1 <= n <= p, zero above."""
        top, lowered = make_v(-p, r), make_v(-p, r, 1)
        for n in range(1, p + 3):
            got = virasoro(n, top, deformed=True)
            if n <= p:
                assert got == schur_apply(C, p - n, lowered), f"n={n}\nGot: {got}"
            else:
                assert not got, f"n={n}\nGot: {got}"


def _quadratic_virasoro(n, v):
    """
    L(n) = 1/2 sum_k :c(k) d(n-k): - (cL-2)(n+1)/24 c(n) + (n+1)/2 d(n),
    annihilation modes to the right.
    """
    top = max(v.degrees())
    pieces = []
    for k in range(n - top - 1, top + 2):
        if k > 0:
            term = heis_apply(D, n - k, heis_apply(C, k, v))
        else:
            term = heis_apply(C, k, heis_apply(D, n - k, v))
        pieces.append((rational(1, 2), term))
    pieces.append((-(param(Param.CL) - 2) * (n + 1) / 24, heis_apply(C, n, v)))
    pieces.append((rational(n + 1, 2), heis_apply(D, n, v)))
    return FockElement.combine(v.space, pieces)


class TestQuadraticVirasoro:
    """omega_{n+1} from the iterate identity agrees with the normal-ordered Heisenberg form."""

    @pytest.mark.parametrize("n", range(-3, 4))
    def test_matches_on_pi_2_1(self, n):
        for v in graded_states(make_v(2, rational(1)), 3):
            got = virasoro(n, v)
            expected = _quadratic_virasoro(n, v)
            assert got == expected, f"L({n}) on {v}\nGot: {got}\nExpected: {expected}"

    def test_matches_with_symbolic_label(self, r):
        for v in graded_states(make_v(1, r), 2):
            for n in (-2, 0, 2):
                assert virasoro(n, v) == _quadratic_virasoro(n, v), f"L({n}) on {v}"


class TestCalQModeSum:
    """calQ from the state s agrees with its explicit mode expansion."""

    @pytest.mark.parametrize("p", [1, 2])
    def test_agrees_on_pipr(self, p, r):
        for v in graded_states(make_v(p, r), 2):
            got = apply(CALQ, v)
            expected = calq_mode_sum(v)
            assert got == expected, f"on {v}\nGot: {got}\nExpected: {expected}"
            assert not got

    @pytest.mark.parametrize("m", [0, 1])
    def test_agrees_on_pi0(self, m):
        for v in graded_states(exp_state(m), 1):
            assert apply(CALQ, v) == calq_mode_sum(v), f"on {v}"
