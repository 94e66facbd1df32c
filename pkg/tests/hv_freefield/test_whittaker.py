"""
Unit tests for the Whittaker module and its deformed action.
"""

import pytest

from hv_freefield.constants import HGen
from hv_freefield.scalars import rational
from hv_freefield.voperator import weight_index
from hv_freefield.whittaker import (
    cell_rank, cyclic_span, deformed_apply, degree0_matrix, exp_eigenvalue, in_cyclic_span, is_lower_triangular,
    lowest_weight, nilpotent_rank, self_extension_witness, top_operator, top_relation_residues, w_lambda,
)


class TestTopWeights:
    """Eigenvalues on w_lambda."""

    def test_heisenberg_zero_mode(self, lam, cli):
        """tilde I(0) w = cLI w."""
        w = w_lambda(lam)
        assert deformed_apply(HGen.I, 0, w) == w.scale(cli)

    def test_virasoro_zero_mode(self, lam):
        """tilde L(0) w = ((cL-2)/24 + lambda) w."""
        w = w_lambda(lam)
        got = deformed_apply(HGen.L, 0, w)
        assert got == w.scale(lowest_weight(lam)), f"Got: {got}\nExpected: {w.scale(lowest_weight(lam))}"

    def test_top_operator(self, lam):
        assert top_operator(1, w_lambda(lam)) == w_lambda(lam).scale(lam)

    @pytest.mark.parametrize("m", [-2, -1, 1, 2])
    def test_exp_eigenvalue(self, m, lam):
        """The degree-preserving mode of e^{mc} acts as lambda^m."""
        index, image = exp_eigenvalue(m, lam)
        assert index == m - 1
        assert image == w_lambda(lam).scale(lam ** m)
        (basis,) = w_lambda(lam).terms
        assert weight_index(m, index, basis) == 0

    def test_exp_eigenvalue_at_bound_lambda(self):
        lam = rational(3, 2)
        for m in (-1, 2):
            _, image = exp_eigenvalue(m, lam)
            assert image == w_lambda(lam).scale(lam ** m)


class TestDegreeZeroSlice:
    """tilde L(0) on span{d(0)^k w}."""

    def test_lower_triangular(self, lam):
        rows = degree0_matrix(lam, 3)
        assert is_lower_triangular(rows)
        assert all(rows[k][k] == lowest_weight(lam) for k in range(4))

    @pytest.mark.parametrize("size", [1, 2, 3])
    def test_nilpotent_part_rank(self, size, lam):
        """One Jordan block: the nilpotent part has full rank on d(0)^k w, k <= size."""
        assert nilpotent_rank(lam, size) == size

    def test_self_extension_at_bound_lambda(self):
        lam = rational(3, 2)
        assert self_extension_witness(lam) == w_lambda(lam).scale(rational(-3))

    def test_self_extension_witness(self, lam):
        """(tilde L(0) - h) d(0) w = -2 lambda w."""
        got = self_extension_witness(lam)
        assert got == w_lambda(lam).scale(-2 * lam), f"Got: {got}"


class TestCyclicSpan:

    def test_lowered_states_in_span(self, lam):
        cells = cyclic_span(0, 1, 0, lam)
        assert cell_rank(cells, 0) == 1
        assert in_cyclic_span(deformed_apply(HGen.L, -1, w_lambda(lam)), cells)
        assert in_cyclic_span(deformed_apply(HGen.I, -1, w_lambda(lam)), cells)

    def test_higher_d0_power_outside_span(self, lam):
        """d(0) w is not reached from w at degree 0."""
        cells = cyclic_span(0, 1, 1, lam)
        assert not in_cyclic_span(w_lambda(lam, 1), cells)


class TestCyclicFiltration:
    """d(0)^{n+1} w is highest weight modulo U(H) d(0)^n w."""

    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_lifted_vector_outside_span(self, n, lam):
        cells = cyclic_span(n, 2, n, lam)
        assert not in_cyclic_span(w_lambda(lam, n + 1), cells)
        for m in range(n + 1):
            assert in_cyclic_span(w_lambda(lam, m), cells)

    @pytest.mark.parametrize("n", [0, 1, 2])
    @pytest.mark.parametrize("m", [0, 1, 2])
    def test_residues_in_span(self, n, m, lam):
        cells = cyclic_span(n, 2, n, lam)
        for relation, residue in top_relation_residues(n, m, lam).items():
            assert in_cyclic_span(residue, cells), f"{relation}, n={n}\nGot residue: {residue}"

    @pytest.mark.parametrize("m", [1, 2])
    def test_virasoro_residue_is_not_trivial(self, m, lam):
        """For x = d(0) w the residue is 2m (tilde L(0) - h) x = -4m lambda w."""
        residue = top_relation_residues(0, m, lam)[f"tilde L({m}) tilde L(-{m})"]
        assert residue == w_lambda(lam).scale(-4 * m * lam), f"Got: {residue}"

    @pytest.mark.parametrize("m", [1, 2])
    def test_mixed_residue_vanishes(self, m, lam):
        """tilde L(m) I(-m) x = -m^2 cLI x exactly."""
        residue = top_relation_residues(1, m, lam)[f"tilde L({m}) I(-{m})"]
        assert not residue, f"Got: {residue}"
