"""
End-to-end tests for the hv-freefield command line.

Each test calls main() with an argv list and inspects stdout / stderr and the
exit code.
"""

import json

import pytest

from hv_freefield.constants import Param
from hv_freefield.fock import PiPR
from hv_freefield.grammar import parse_state
from hv_freefield.hvrealize import conformal_weight, make_v, screening_q
from hv_freefield.main import main
from hv_freefield.scalars import param, parse_scalar


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCompute:

    def test_zero_mode_json(self, capsys):
        """L(0) v_{3,r} = h_{3,r} v_{3,r}."""
        code, out, _ = _run(capsys, "compute", "L(0) @ v[3,r,0]", "--format", "json")
        assert code == 0
        data = json.loads(out)
        r = param(Param.R)
        assert data["space"] == str(PiPR(3, r))
        assert len(data["terms"]) == 1
        assert data["terms"][0]["degree"] == 0
        got = parse_scalar(data["terms"][0]["coefficient"])
        assert got == conformal_weight(3, r), f"Got: {got}\nExpected: {conformal_weight(3, r)}"

    def test_screening_result_parses_back(self, capsys):
        code, out, _ = _run(capsys, "compute", "Q @ v[-2,r,0]", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["operators"] == ["Q"]
        assert parse_state(data["result"]) == screening_q(make_v(-2, param(Param.R)))

    def test_verma_phi(self, capsys):
        code, out, _ = _run(capsys, "compute", "phi(1) @ vac-verma[h,0]")
        assert code == 0
        assert "L(-1) v[h,0]" in out

    def test_binding_applied(self, capsys):
        """With r bound the module label is a number."""
        code, out, _ = _run(capsys, "compute", "L(0) @ v[1,r,0]", "--bind", "r=1", "--format", "json")
        assert code == 0
        assert json.loads(out)["space"] == str(PiPR(1, parse_scalar("1")))

    def test_parse_error_exit_code(self, capsys):
        code, _, err = _run(capsys, "compute", "L(0) @ v[3,r")
        assert code == 2
        assert err.startswith("error:")

    def test_operator_undefined_on_verma(self, capsys):
        code, _, err = _run(capsys, "compute", "Q @ vac-verma[h,0]")
        assert code == 2
        assert "Verma" in err

    def test_dot_format_rejected(self, capsys):
        code, _, _ = _run(capsys, "compute", "Q @ vac", "--format", "dot")
        assert code == 2


class TestVerify:

    def test_relacija_passes(self, capsys):
        code, out, _ = _run(capsys, "verify", "relacija", "--degree", "2", "--modes", "2")
        assert code == 0
        assert out.strip().endswith("5/5 checks passed")

    def test_json_report(self, capsys):
        code, out, _ = _run(capsys, "verify", "relacija", "--degree", "2", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["passed"] is True
        assert data["config"]["degree_bound"] == 2

    def test_unknown_suite(self, capsys):
        code, _, err = _run(capsys, "verify", "nope")
        assert code == 2
        assert "nope" in err

    def test_bad_bound(self, capsys):
        code, _, _ = _run(capsys, "verify", "relacija", "--degree", "0")
        assert code == 2

    def test_bad_binding(self, capsys):
        code, _, _ = _run(capsys, "verify", "relacija", "--bind", "cL=abc")
        assert code == 2


class TestDiagram:

    def test_single_node(self, capsys):
        code, out, _ = _run(capsys, "diagram", "--family", "Pi0r", "--depth", "0")
        assert code == 0
        assert out.startswith("digraph Pi0r {")
        assert "n_l0 [label=" in out
        assert "->" not in out

    def test_pipr_edges(self, capsys):
        """e^c(-2) and Q both land on v_{2,r-2}."""
        code, out, _ = _run(capsys, "diagram", "--family", "PiPR", "--p", "2", "--depth", "1")
        assert code == 0
        assert "n_l0_m0 -> n_l1_m0" in out
        assert "n_l0_m1 -> n_l1_m0" in out

    def test_whittaker_chain(self, capsys):
        code, out, _ = _run(capsys, "diagram", "--family", "Whittaker", "--depth", "1")
        assert code == 0
        assert "n_k1 -> n_k0" in out
        assert "∝" in out

    def test_depth_limit(self, capsys):
        code, _, _ = _run(capsys, "diagram", "--family", "Pi0r", "--depth", "99")
        assert code == 2

    def test_json_diagram(self, capsys):
        code, out, _ = _run(capsys, "diagram", "--family", "Pi0r", "--depth", "1", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert [n["id"] for n in data["nodes"]] == ["n_l0", "n_l1"]


class TestEnumerateSingular:

    def test_free_field_level_one(self, capsys):
        code, out, _ = _run(capsys, "enumerate-singular", "--p", "1", "--format", "json")
        assert code == 0
        (level,) = json.loads(out)["levels"]
        assert level["level_dimension"] == 2
        assert len(level["singular"]) == 1
        assert level["phi_spans"] is True

    def test_explicit_weights(self, capsys):
        code, out, _ = _run(capsys, "enumerate-singular", "--p", "1", "--h", "h", "--hI", "2*cLI")
        assert code == 0
        assert "singular subspace: 1 of 2" in out
        assert "Phi_1" not in out

    def test_weights_must_pair(self, capsys):
        code, _, _ = _run(capsys, "enumerate-singular", "--h", "h")
        assert code == 2

    @pytest.mark.parametrize("p", ["4", "0"])
    def test_level_range(self, capsys, p):
        code, _, _ = _run(capsys, "enumerate-singular", "--p", p)
        assert code == 2
