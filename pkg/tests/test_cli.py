"""
Tests for the click front end: exit codes, report rendering and file output
"""

import json

import pytest
from click.testing import CliRunner

from src.cli import cli
from src.core.constants import ExitCode
from src.fileformat.algebra_file import load_document


SINGULAR = """
[generators]
a:even

[alpha]
a = "d a"

[map zero]
k = 0
"""


@pytest.fixture
def invoke(fixtures_dir):
    runner = CliRunner()

    def _invoke(*args, files=(), extra=()):
        paths = [str(fixtures_dir / name) for name in files] + [str(p) for p in extra]
        return runner.invoke(cli, ["--log-level", "ERROR", "--no-timing", *args, *paths])

    return _invoke


class TestCheck:

    def test_passing_algebra(self, invoke):
        result = invoke("check", files=["ns.alg"])
        assert result.exit_code == ExitCode.PASS
        assert "check hom-jacobi: pass" in result.stdout
        assert "check regularity: pass" in result.stdout
        assert result.stdout.rstrip().endswith("status: pass")

    def test_failing_algebra(self, invoke):
        result = invoke("check", files=["ns_mutant.alg"])
        assert result.exit_code == ExitCode.CHECK_FAILURE
        assert "check hom-jacobi: fail" in result.stdout
        assert "(L, L, L)" in result.stdout

    def test_singular_alpha_fails_the_check(self, invoke, tmp_path):
        path = tmp_path / "singular.alg"
        path.write_text(SINGULAR, encoding="utf-8")
        result = invoke("check", str(path))
        assert result.exit_code == ExitCode.CHECK_FAILURE
        assert "check hom-jacobi: pass" in result.stdout
        assert "check regularity: fail" in result.stdout
        assert result.stdout.rstrip().endswith("status: fail")

    def test_json_report_is_deterministic(self, invoke):
        first = invoke("--format", "json", "check", files=["ns.alg"])
        second = invoke("--format", "json", "check", files=["ns.alg"])
        assert first.stdout == second.stdout
        payload = json.loads(first.stdout)
        assert payload["status"] == "pass"
        assert payload["command"] == "check"
        assert "timing" not in payload
        assert set(payload["inputs"]) == {"ns.alg"}

    def test_missing_file_is_a_usage_error(self, invoke):
        result = invoke("check", "nowhere.alg")
        assert result.exit_code == ExitCode.USAGE_ERROR

    def test_malformed_file(self, invoke, tmp_path):
        path = tmp_path / "broken.alg"
        path.write_text("[generators]\nL:even\n[bracket]\nL L = \"(d + $) L\"\n", encoding="utf-8")
        result = invoke("check", str(path))
        assert result.exit_code == ExitCode.USAGE_ERROR

    def test_duplicate_representation_generator(self, invoke, tmp_path):
        path = tmp_path / "rep.alg"
        path.write_text("[rep dens]\ngenerators = v:even, v:even\n", encoding="utf-8")
        result = invoke("rep", files=["ns.alg"], extra=[path])
        assert result.exit_code == ExitCode.USAGE_ERROR
        assert "line 2" in result.output
        assert result.exception is None or isinstance(result.exception, SystemExit)

    def test_invalid_configuration(self, invoke, tmp_path):
        path = tmp_path / "engine.yaml"
        path.write_text("solver:\n  bogus: 1\n", encoding="utf-8")
        result = invoke("--config", str(path), "check", files=["ns.alg"])
        assert result.exit_code == ExitCode.USAGE_ERROR


class TestCohomologyCommands:

    def test_d2_needs_a_seed_for_random_trials(self, invoke):
        result = invoke("d2", "--trials", "3", files=["ns.alg"])
        assert result.exit_code == ExitCode.USAGE_ERROR

    def test_d2_with_declared_and_random_cochains(self, invoke):
        result = invoke("d2", "--cochain", "gamma", "--trials", "4", "--seed", "7",
                        files=["ns.alg", "ns_cochains.alg"])
        assert result.exit_code == ExitCode.PASS
        assert "check d2 gamma: pass" in result.stdout
        assert "note: seed 7, 4 trials, target adjoint" in result.stdout

    def test_cocycle_of_the_zero_cochain(self, invoke):
        result = invoke("cocycle", "--cochain", "zero2", files=["ns.alg", "ns_cochains.alg"])
        assert result.exit_code == ExitCode.PASS

    def test_deform_needs_a_two_cochain(self, invoke):
        result = invoke("deform", "--cochain", "gamma", files=["ns.alg", "ns_cochains.alg"])
        assert result.exit_code == ExitCode.USAGE_ERROR

    def test_deform_rejects_an_adjoint_valued_cochain(self, invoke, tmp_path):
        path = tmp_path / "psi.alg"
        path.write_text("[cochain psi]\ntarget = adjoint\narity = 2\n", encoding="utf-8")
        result = invoke("deform", "--cochain", "psi", files=["ns.alg"], extra=[path])
        assert result.exit_code == ExitCode.PRECONDITION_FAILURE
        assert "ModuleMismatchError" in result.output

    def test_nijenhuis_scalar_operator(self, invoke):
        result = invoke("nijenhuis", "--map", "twice", files=["ns.alg", "ns_maps.alg"])
        assert result.exit_code == ExitCode.PASS
        assert "operator: twice: L -> 2 L; E -> 2 E" in result.stdout


class TestDerivationCommands:

    def test_negative_bounds_are_rejected(self, invoke):
        result = invoke("solve", "--class", "der", "--deg-l", "-1", files=["ns.alg"])
        assert result.exit_code == ExitCode.USAGE_ERROR

    def test_solve_then_verify(self, invoke, fixtures_dir, tmp_path):
        out = tmp_path / "der.maps"
        solved = invoke("solve", "--class", "der", "--k", "0", "--deg-l", "1", "--deg-d", "1",
                        "--out", str(out), files=["ns.alg"])
        assert solved.exit_code == ExitCode.PASS
        assert "written: der.maps" in solved.stdout
        assert "bounds: deg-l<=1, deg-d<=1" in solved.stdout
        document = load_document([fixtures_dir / "ns.alg", out])
        assert document.maps

        verified = invoke("verify", files=["ns.alg"], extra=[out])
        assert verified.exit_code == ExitCode.PASS

    def test_verify_without_classes(self, invoke, tmp_path):
        path = tmp_path / "plain.maps"
        path.write_text('[map twice]\nimage L = "2 L"\n', encoding="utf-8")
        result = invoke("verify", files=["ns.alg"], extra=[path])
        assert result.exit_code == ExitCode.USAGE_ERROR

    def test_extend_by_a_derivation(self, invoke, tmp_path):
        out = tmp_path / "extended.alg"
        result = invoke("extend", "--map", "adL", "--out", str(out), files=["ns.alg", "ns_maps.alg"])
        assert result.exit_code == ExitCode.PASS
        assert "new generator: D:even" in result.stdout
        assert "check extension hom-jacobi (D, D, .): fail (informational)" in result.stdout
        assert load_document([out]).algebra.names == ("L", "E", "D")

    def test_extend_needs_a_regular_alpha(self, invoke, tmp_path):
        path = tmp_path / "singular.alg"
        path.write_text(SINGULAR, encoding="utf-8")
        result = invoke("extend", str(path))
        assert result.exit_code == ExitCode.PRECONDITION_FAILURE
        assert "NotRegularError" in result.output

    def test_center_of_an_abelian_algebra(self, invoke):
        result = invoke("solve", "--class", "center", "--deg-l", "0", "--deg-d", "1", files=["abelian.alg"])
        assert result.exit_code == ExitCode.PASS
        assert "dimension: 4" in result.stdout

    def test_audit_of_a_current_algebra(self, invoke):
        result = invoke("audit", "--k", "0", "--deg-l", "0", "--deg-d", "0", files=["cur_lie.alg"])
        assert result.exit_code == ExitCode.PASS
        assert "dimension der: 2" in result.stdout
        assert "dimension c: 1" in result.stdout
        assert "check gder decomposition: pass" in result.stdout


class TestOperatorFiles:

    def test_current_algebra_file(self, invoke):
        assert invoke("check", files=["cur_lie.alg"]).exit_code == ExitCode.PASS

    def test_single_map_file_needs_no_map_name(self, invoke):
        result = invoke("nijenhuis", files=["ns.alg", "ns_scalar.alg"])
        assert result.exit_code == ExitCode.PASS
        assert "operator: half: L -> (1/2) L; E -> (1/2) E" in result.stdout
        assert "check triviality: pass" in result.stdout
