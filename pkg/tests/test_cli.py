import json
import math

import numpy as np
import pytest
from typer.testing import CliRunner

from src.cli import ExitCode, app
from src.distance import report
from src.hamiltonian import HamiltonianInstance
from src.linalg import matrix_from_json
from src.reduction import Gate, LayeredCircuit, NicInstance, simulate

runner = CliRunner(mix_stderr=False)

EMPIRICAL = ["--c-mode", "empirical", "--samples", "100", "--seed", "7"]


def write_circuit(path, unitary, n=1, d=2):
    c = LayeredCircuit(n=n, d=d, layers=[[Gate(first_site=0, span=1, unitary=unitary)]])
    path.write_text(c.to_json())
    return c


@pytest.fixture
def z_circuit(tmp_path):
    path = tmp_path / "z.json"
    write_circuit(path, np.diag([1.0, -1.0]).astype(complex))
    return path


@pytest.fixture
def identity_circuit(tmp_path):
    path = tmp_path / "id.json"
    write_circuit(path, np.eye(2, dtype=complex))
    return path


def generate(tmp_path, kind, seed=0, n=3):
    path = tmp_path / f"{kind}-{seed}.json"
    result = runner.invoke(app, ["gen", "--n", str(n), "--d", "2", "--seed", str(seed), "--kind", kind, "--out", str(path)])
    assert result.exit_code == 0, result.stderr
    return path


def reduced(tmp_path, kind, seed=0):
    source = generate(tmp_path, kind, seed)
    path = tmp_path / f"nic-{kind}-{seed}.json"
    result = runner.invoke(app, ["reduce", str(source), *EMPIRICAL, "--out", str(path)])
    assert result.exit_code == 0, result.stderr
    return path, json.loads(result.stdout)


# ========================
# gen / reduce
# ========================
def test_gen_is_seed_deterministic(tmp_path):
    first = runner.invoke(app, ["gen", "--n", "3", "--seed", "4", "--kind", "yes-biased"])
    second = runner.invoke(app, ["gen", "--n", "3", "--seed", "4", "--kind", "yes-biased"])
    assert first.exit_code == 0
    assert first.stdout == second.stdout
    inst = HamiltonianInstance.from_json(first.stdout)
    assert inst.metadata["kind"] == "yes-biased"


def test_gen_rejects_bad_chain():
    result = runner.invoke(app, ["gen", "--n", "2", "--kind", "no-biased"])
    assert result.exit_code == ExitCode.INPUT_ERROR


def test_reduce_writes_instance_and_summary(tmp_path):
    path, summary = reduced(tmp_path, "yes-biased")
    assert set(summary) == {"l", "s", "t", "c", "gap"}
    assert summary["gap"] == pytest.approx((summary["l"] - summary["s"]) ** 2 / (4 * summary["c"]))
    nic = NicInstance.from_json(path.read_text())
    assert nic.circuit.depth == 2
    assert all(gate.span == 2 for _, _, gate in nic.circuit.gates())


def test_reduce_to_stdout_round_trips(tmp_path):
    source = generate(tmp_path, "random", seed=2)
    result = runner.invoke(app, ["reduce", str(source)])
    assert result.exit_code == 0
    nic = NicInstance.from_json(result.stdout)
    assert json.loads(nic.to_json()) == json.loads(result.stdout)


def test_reduce_malformed_input(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    result = runner.invoke(app, ["reduce", str(bad)])
    assert result.exit_code == ExitCode.INPUT_ERROR
    assert "error" in result.stderr


def test_reduce_missing_file(tmp_path):
    result = runner.invoke(app, ["reduce", str(tmp_path / "absent.json")])
    assert result.exit_code == ExitCode.INPUT_ERROR


def test_reduce_unwritable_out(tmp_path):
    source = generate(tmp_path, "random")
    result = runner.invoke(app, ["reduce", str(source), "--out", str(tmp_path / "missing" / "x.json")])
    assert result.exit_code == ExitCode.INPUT_ERROR
    assert "cannot write" in result.stderr


def test_size_limit_exit_code(tmp_path, monkeypatch):
    monkeypatch.setenv("NICLAB_MAX_DIM", "512")
    from src.utils.config import get_settings
    get_settings.cache_clear()
    try:
        path = tmp_path / "wide.json"
        write_circuit(path, np.eye(2, dtype=complex), n=10)
        result = runner.invoke(app, ["alpha", str(path)])
        assert result.exit_code == ExitCode.RESOURCE_LIMIT
    finally:
        get_settings.cache_clear()


# ========================
# alpha / simulate / compare
# ========================
def test_alpha_identity(identity_circuit):
    result = runner.invoke(app, ["alpha", str(identity_circuit)])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["alpha"] == 0.0


def test_alpha_z_gate(z_circuit):
    result = runner.invoke(app, ["alpha", str(z_circuit)])
    doc = json.loads(result.stdout)
    assert doc["alpha"] == pytest.approx(math.pi)
    assert doc["min_phase_dist"] == pytest.approx(math.sqrt(2), abs=1e-9)


def test_alpha_matches_library(tmp_path):
    path, _ = reduced(tmp_path, "no-biased")
    nic = NicInstance.from_json(path.read_text())
    result = runner.invoke(app, ["alpha", str(path)])
    assert json.loads(result.stdout) == report(simulate(nic.circuit)).model_dump()


def test_simulate_writes_matrix(z_circuit, tmp_path):
    out = tmp_path / "u.json"
    result = runner.invoke(app, ["simulate", str(z_circuit), "--out", str(out)])
    assert result.exit_code == 0
    assert json.loads(result.stdout) == {"n": 1, "d": 2, "dim": 2}
    assert np.array_equal(matrix_from_json(json.loads(out.read_text())), np.diag([1.0, -1.0]))


def test_compare_same_circuit(z_circuit):
    result = runner.invoke(app, ["compare", str(z_circuit), str(z_circuit)])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["alpha"] == pytest.approx(0.0, abs=1e-12)


def test_compare_register_mismatch(z_circuit, tmp_path):
    wide = tmp_path / "wide.json"
    write_circuit(wide, np.eye(2, dtype=complex), n=2)
    result = runner.invoke(app, ["compare", str(z_circuit), str(wide)])
    assert result.exit_code == ExitCode.INPUT_ERROR


# ========================
# decide
# ========================
@pytest.mark.parametrize("kind, code, answer", [("yes-biased", ExitCode.OK, "Yes"), ("no-biased", ExitCode.NO, "No")])
def test_decide_exit_codes(tmp_path, kind, code, answer):
    path, _ = reduced(tmp_path, kind)
    for metric in ("phase_range", "diamond", "min_phase_dist"):
        result = runner.invoke(app, ["decide", str(path), "--metric", metric])
        assert result.exit_code == code
        assert json.loads(result.stdout)["decision"] == answer


def test_decide_promise_violated(tmp_path):
    u = np.diag([1.0, np.exp(1j)])
    c = LayeredCircuit(n=1, d=2, layers=[[Gate(first_site=0, span=1, unitary=u)]])
    path = tmp_path / "nic.json"
    path.write_text(NicInstance(circuit=c, a_nic=0.5, b_nic=1.5).to_json())
    result = runner.invoke(app, ["decide", str(path)])
    assert result.exit_code == ExitCode.PROMISE_VIOLATED


@pytest.mark.parametrize("metric", ["phase_range", "diamond", "min_phase_dist"])
def test_decide_thresholds_above_pi(tmp_path, metric):
    c = LayeredCircuit(n=1, d=2, layers=[[Gate(first_site=0, span=1, unitary=np.diag([1.0, -1.0]))]])
    path = tmp_path / "nic.json"
    path.write_text(NicInstance(circuit=c, a_nic=3.0, b_nic=4.0).to_json())
    result = runner.invoke(app, ["decide", str(path), "--metric", metric])
    assert result.exit_code == ExitCode.OK
    doc = json.loads(result.stdout)
    assert doc["decision"] == "Yes"
    assert doc["low"] < doc["high"]


def test_quiet_keeps_exit_code(tmp_path):
    path, _ = reduced(tmp_path, "no-biased")
    result = runner.invoke(app, ["--quiet", "decide", str(path)])
    assert result.exit_code == ExitCode.NO
    assert result.stdout == ""


# ========================
# lemmas
# ========================
def test_lemmas_small_run_passes():
    result = runner.invoke(app, ["lemmas", "--trials", "5", "--dim", "2", "--dim", "3", "--lemma", "lemma3", "--lemma", "eq5"])
    assert result.exit_code == 0, result.stdout
    doc = json.loads(result.stdout)
    assert doc["passed"] is True
    assert doc["suites"] == 4


def test_lemmas_forced_failure(tmp_path):
    out = tmp_path / "reports.json"
    result = runner.invoke(
        app, ["lemmas", "--trials", "3", "--dim", "2", "--lemma", "lemma4", "--tolerance", "-10", "--out", str(out)]
    )
    assert result.exit_code == ExitCode.SUITE_FAILED
    assert json.loads(result.stdout)["passed"] is False
    reports = json.loads(out.read_text())["reports"]
    assert reports[0]["failures"][0]["inputs"]["U"]["dim"] == 2


def test_lemmas_output_is_deterministic():
    args = ["lemmas", "--trials", "4", "--dim", "2", "--lemma", "gate_errors"]
    assert runner.invoke(app, args).stdout == runner.invoke(app, args).stdout


def test_lemmas_rejects_zero_trials():
    result = runner.invoke(app, ["lemmas", "--trials", "0", "--dim", "2", "--lemma", "lemma1"])
    assert result.exit_code == ExitCode.INPUT_ERROR


# ========================
# perturb / budget
# ========================
def test_perturb_sweep_holds(tmp_path):
    path, _ = reduced(tmp_path, "yes-biased")
    result = runner.invoke(app, ["perturb", str(path), "--epsilon", "0.05", "--sweeps", "3"])
    assert result.exit_code == 0
    doc = json.loads(result.stdout)
    assert doc["passed"] is True
    assert [r["seed"] for r in doc["reports"]] == [0, 1, 2]


def test_perturb_forced_violation(z_circuit):
    result = runner.invoke(app, ["perturb", str(z_circuit), "--epsilon", "0.1", "--tolerance", "-10"])
    assert result.exit_code == ExitCode.SUITE_FAILED


def test_perturb_rejects_epsilon(z_circuit):
    result = runner.invoke(app, ["perturb", str(z_circuit), "--epsilon", "1.5"])
    assert result.exit_code == ExitCode.INPUT_ERROR


def test_budget_arithmetic():
    result = runner.invoke(app, ["budget", "--gate-count", "100", "--gap", "0.01", "--sk-exponent", "3"])
    assert result.exit_code == 0
    doc = json.loads(result.stdout)
    assert doc["per_gate_epsilon"] == pytest.approx(1 / (2 * math.pi * 1e4))


def test_budget_from_instance(tmp_path):
    path, summary = reduced(tmp_path, "yes-biased")
    result = runner.invoke(app, ["budget", "--instance", str(path), "--sk-exponent", "3"])
    doc = json.loads(result.stdout)
    assert doc["gate_count"] == 2
    assert doc["target_gap"] == pytest.approx(summary["gap"], rel=1e-9)


@pytest.mark.parametrize("args", [["--sk-exponent", "3"], ["--gate-count", "1", "--gap", "7", "--sk-exponent", "3"]])
def test_budget_input_errors(args):
    result = runner.invoke(app, ["budget", *args])
    assert result.exit_code == ExitCode.INPUT_ERROR
