"""End-to-end runs of the command-line front end."""

import json
from io import StringIO

import pytest

from src.cli import ExitCode, main


def run(*argv):
    out, err = StringIO(), StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", ["triangle.gyro", "quad.gyro", "converse.gyro", "transversal.gyro"])
def test_verify_passing_scenes(fixtures_dir, name):
    code, out, _ = run("verify", str(fixtures_dir / name))
    assert code == ExitCode.OK
    assert "PASS" in out
    assert "FAIL" not in out


def test_verify_json(fixtures_dir):
    code, out, _ = run("verify", str(fixtures_dir / "quad.gyro"), "--json")
    assert code == ExitCode.OK
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["passed"] is True
    assert payload["assertions"][0]["theorem"] == "menelaus_quad"


def test_verify_failing_assertion(fixtures_dir):
    code, out, _ = run("verify", str(fixtures_dir / "through_vertex.gyro"))
    assert code == ExitCode.ASSERTION_FAILED
    assert "FAIL" in out


def test_verify_malformed_scene(fixtures_dir):
    code, out, err = run("verify", str(fixtures_dir / "malformed.gyro"))
    assert code == ExitCode.INPUT_ERROR
    assert out == ""
    assert "malformed.gyro:3:9: lexical error" in err


def test_verify_missing_file(tmp_path):
    code, _, err = run("verify", str(tmp_path / "absent.gyro"))
    assert code == ExitCode.INPUT_ERROR
    assert "cannot read scene" in err


def test_random_campaign_is_reproducible():
    first = run("random", "t3", "-n", "50", "--seed", "42", "--json")
    second = run("random", "t3", "-n", "50", "--seed", "42", "--json")
    assert first[0] == ExitCode.OK
    assert first[1] == second[1]

    payload = json.loads(first[1])
    assert payload["schema"] == 1
    assert payload["seed"] == 42
    assert payload["rng"].startswith("numpy.random.Philox")
    assert payload["command"] == ["random", "t3", "-n", "50", "--seed", "42"]
    assert "timing" not in payload
    assert payload["aggregate"]["count"] == 50
    assert payload["aggregate"]["failures"] == 0
    assert payload["aggregate"]["max_deviation"] == max(case["deviation"] for case in payload["cases"])
    assert all(case["checks"]["telescoping"] <= 1e-12 for case in payload["cases"])


@pytest.mark.parametrize("theorem", ["t2", "t5", "t4-converse"])
def test_random_campaigns_pass(theorem):
    code, out, _ = run("random", theorem, "-n", "20", "--seed", "7")
    assert code == ExitCode.OK
    assert out.startswith(f"{theorem}: 20 cases")
    assert "0 failure(s)" in out


def test_random_timing_is_opt_in():
    code, out, _ = run("random", "t2", "-n", "2", "--seed", "1", "--json", "--timing")
    assert code == ExitCode.OK
    assert json.loads(out)["timing"]["seconds"] >= 0.0


def test_random_writes_repro_files_for_failures(tmp_path):
    out_dir = tmp_path / "repro"
    code, out, _ = run("random", "t2", "-n", "3", "--seed", "5", "--tolerance", "1e-300", "--json", "--out", str(out_dir))
    payload = json.loads(out)
    failing = [case for case in payload["cases"] if not case["passed"]]
    if failing:
        assert code == ExitCode.ASSERTION_FAILED
        for case in failing:
            code_again, verify_out, _ = run("verify", case["repro"])
            assert code_again in (ExitCode.OK, ExitCode.ASSERTION_FAILED)
            assert "menelaus_triangle" in verify_out
    else:
        assert code == ExitCode.OK


def test_random_generator_exhaustion(tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("verification:\n  vertex_guard: 10.0\ngeneration:\n  max_retries: 20\n")
    code, out, err = run("--config", str(config), "random", "t2", "-n", "5")
    assert code == ExitCode.GENERATOR_EXHAUSTED
    assert out == ""
    assert "No valid triangle configuration after 20 draws" in err


def test_random_rejects_bad_arguments():
    assert run("random", "t2", "-n", "0")[0] == ExitCode.INPUT_ERROR
    assert run("random", "t2", "--max-radius", "1.5")[0] == ExitCode.INPUT_ERROR
    assert run("random", "t9")[0] == ExitCode.INPUT_ERROR


def test_render_is_deterministic(fixtures_dir, tmp_path):
    code, first, _ = run("render", str(fixtures_dir / "quad.gyro"))
    assert code == ExitCode.OK
    assert first.lstrip().startswith("<?xml") or first.lstrip().startswith("<svg")
    assert run("render", str(fixtures_dir / "quad.gyro"))[1] == first

    target = tmp_path / "quad.svg"
    code, out, _ = run("render", str(fixtures_dir / "quad.gyro"), "--out", str(target))
    assert code == ExitCode.OK
    assert out == ""
    assert target.read_text(encoding="utf-8").rstrip("\n") == first.rstrip("\n")


def test_limit_sweep(fixtures_dir):
    code, out, _ = run("limit", str(fixtures_dir / "quad.gyro"), "--json")
    assert code == ExitCode.OK
    payload = json.loads(out)
    assert [row["s"] for row in payload["rows"]] == [10.0, 100.0, 1000.0, 10000.0]
    assert payload["monotone"] is True
    assert payload["slope"] == pytest.approx(-2.0, abs=0.2)

    code, out, _ = run("limit", str(fixtures_dir / "transversal.gyro"))
    assert code == ExitCode.OK
    assert "log-log slope" in out


def test_limit_arguments(fixtures_dir):
    scene = str(fixtures_dir / "quad.gyro")
    code, out, _ = run("limit", scene, "--s", "10000", "--json")
    assert code == ExitCode.OK
    assert json.loads(out)["slope"] is None

    assert run("limit", scene, "--s", "1000", "10")[0] == ExitCode.INPUT_ERROR
    assert run("limit", scene, "--s", "0.3")[0] == ExitCode.INPUT_ERROR
    assert run("limit", str(fixtures_dir / "minimal.gyro"))[0] == ExitCode.INPUT_ERROR


def test_bad_configuration(tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("generation:\n  max_radius: 2\n")
    code, _, err = run("--config", str(config), "verify", "x.gyro")
    assert code == ExitCode.INPUT_ERROR
    assert "configuration error" in err

    assert run("--config", str(tmp_path / "missing.yaml"), "verify", "x.gyro")[0] == ExitCode.INPUT_ERROR


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("GYRO_TOLERANCE", "1e-6")
    code, out, _ = run("random", "t2", "-n", "2", "--seed", "3", "--json")
    assert code == ExitCode.OK
    assert json.loads(out)["tolerance"] == 1e-6


def test_invalid_environment_override(monkeypatch):
    monkeypatch.setenv("GYRO_TOLERANCE", "-1")
    assert run("random", "t2", "-n", "1")[0] == ExitCode.INPUT_ERROR


def test_stress_radius_uses_stress_tolerance():
    code, out, _ = run("random", "t2", "-n", "3", "--seed", "2", "--max-radius", "0.99", "--json")
    assert code == ExitCode.OK
    payload = json.loads(out)
    assert payload["tolerance"] == 1e-6
    assert payload["policy"]["max_radius"] == 0.99

    _, out, _ = run("random", "t2", "-n", "3", "--seed", "2", "--max-radius", "0.99", "--tolerance", "1e-3", "--json")
    assert json.loads(out)["tolerance"] == 1e-3

    _, out, _ = run("random", "t2", "-n", "3", "--seed", "2", "--json")
    assert json.loads(out)["tolerance"] == 1e-9
