import json
from enum import IntEnum
from functools import wraps
from pathlib import Path
from typing import Any, Callable, List, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape

from src.distance import report
from src.gateset import (
    StabilityViolation,
    alpha_stability_check,
    depth_budget,
    instance_budget,
    perturb_circuit,
)
from src.hamiltonian import HamiltonianInstance, InstanceKind, generate_instance
from src.lemmalab import LemmaId, default_suite, run_suite, suite_passed
from src.linalg import matrix_to_json
from src.reduction import (
    ConstantMode,
    LayeredCircuit,
    NicDecision,
    NicInstance,
    NicMetric,
    equivalence_report,
    nic_decision,
    reduce,
    simulate,
    trotter_constant,
)
from src.utils.errors import InputError, NicLabError, ResourceLimitError
from src.utils.logger import NicLogger

logger = NicLogger()
console = Console(stderr=True)

app = typer.Typer(
    add_completion=False,
    no_args_is_help=True,
    help="Phase-range calculus and the Local Hamiltonian → Non-Identity Check reduction.",
)


class ExitCode(IntEnum):
    OK = 0
    NO = 1
    INPUT_ERROR = 2
    RESOURCE_LIMIT = 3
    PROMISE_VIOLATED = 4
    SUITE_FAILED = 5


_DECISION_EXIT = {
    NicDecision.YES: ExitCode.OK,
    NicDecision.NO: ExitCode.NO,
    NicDecision.PROMISE_VIOLATED: ExitCode.PROMISE_VIOLATED,
}


def _exit_code_for(error: Exception) -> ExitCode:
    if isinstance(error, ResourceLimitError):
        return ExitCode.RESOURCE_LIMIT
    return ExitCode.INPUT_ERROR


def handled(command: Callable) -> Callable:
    """Turn library errors into exit codes with a message on stderr"""
    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (NicLabError, ValidationError) as e:
            code = _exit_code_for(e)
            logger.error(action="cli_error", response={"command": command.__name__, "error": str(e)})
            console.print(f"[red]error:[/red] {escape(str(e))}")
            raise typer.Exit(code=int(code))
    return wrapper


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}", original=e) from None


def _emit(ctx: typer.Context, payload: Any, out: Optional[Path] = None, summary: Any = None) -> None:
    """Write payload to --out (echoing the summary) or to stdout; --quiet silences stdout"""
    text = json.dumps(payload, indent=2)
    if out is not None:
        try:
            out.write_text(text)
        except OSError as e:
            raise InputError(f"cannot write {out}", original=e) from None
        text = json.dumps(summary, indent=2) if summary is not None else None
    if text is not None and not ctx.obj.get("quiet", False):
        typer.echo(text)


@app.callback()
def main(
    ctx: typer.Context,
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Suppress JSON on standard output."),
):
    ctx.obj = {"quiet": quiet}


@app.command()
@handled
def gen(
    ctx: typer.Context,
    n: int = typer.Option(..., "--n", help="Number of sites."),
    d: int = typer.Option(2, "--d", help="Local dimension."),
    seed: int = typer.Option(0, "--seed"),
    kind: InstanceKind = typer.Option(InstanceKind.RANDOM, "--kind"),
    out: Optional[Path] = typer.Option(None, "--out"),
):
    """Generate a Local Hamiltonian instance."""
    inst = generate_instance(kind, n, d, seed)
    _emit(ctx, inst.to_document(), out, {"n": n, "d": d, "kind": kind.value, "a": inst.a, "b": inst.b})


@app.command("reduce")
@handled
def reduce_cmd(
    ctx: typer.Context,
    instance: Path = typer.Argument(..., help="Hamiltonian instance JSON."),
    c_mode: ConstantMode = typer.Option(ConstantMode.ANALYTIC, "--c-mode"),
    samples: int = typer.Option(200, "--samples", help="Samples for the empirical constant."),
    seed: int = typer.Option(0, "--seed", help="Seed for the empirical constant."),
    out: Optional[Path] = typer.Option(None, "--out"),
):
    """Reduce a Hamiltonian instance to a depth-2 NIC instance."""
    inst = HamiltonianInstance.from_json(_read(instance))
    nic = reduce(inst, trotter_constant(c_mode, samples=samples, seed=seed))
    summary = {key: nic.metadata[key] for key in ("l", "s", "t", "c", "gap")}
    _emit(ctx, nic.to_document(), out, summary)


@app.command()
@handled
def alpha(
    ctx: typer.Context,
    circuit: Path = typer.Argument(..., help="Circuit or NIC instance JSON."),
):
    """Distance report of a circuit's unitary."""
    c = LayeredCircuit.from_json(_read(circuit))
    _emit(ctx, report(simulate(c)).model_dump())


@app.command("simulate")
@handled
def simulate_cmd(
    ctx: typer.Context,
    circuit: Path = typer.Argument(...),
    out: Optional[Path] = typer.Option(None, "--out"),
):
    """Write the circuit's unitary as Matrix JSON."""
    c = LayeredCircuit.from_json(_read(circuit))
    _emit(ctx, matrix_to_json(simulate(c)), out, {"n": c.n, "d": c.d, "dim": c.dim})


@app.command()
@handled
def decide(
    ctx: typer.Context,
    instance: Path = typer.Argument(..., help="NIC instance JSON."),
    metric: NicMetric = typer.Option(NicMetric.PHASE_RANGE, "--metric"),
):
    """Decide a NIC instance by simulation: exit 0 Yes, 1 No, 4 promise violated."""
    nic = NicInstance.from_json(_read(instance))
    decision, value, lo, hi = nic_decision(nic, metric)
    _emit(ctx, {"decision": decision.value, "metric": metric.value, "value": value, "low": lo, "high": hi})
    raise typer.Exit(code=int(_DECISION_EXIT[decision]))


@app.command()
@handled
def compare(
    ctx: typer.Context,
    first: Path = typer.Argument(...),
    second: Path = typer.Argument(...),
):
    """Distance report of U₁†U₂ for two circuits on the same register."""
    c1 = LayeredCircuit.from_json(_read(first))
    c2 = LayeredCircuit.from_json(_read(second))
    _emit(ctx, equivalence_report(c1, c2).model_dump())


@app.command()
@handled
def lemmas(
    ctx: typer.Context,
    trials: int = typer.Option(1000, "--trials"),
    seed: int = typer.Option(0, "--seed"),
    tolerance: float = typer.Option(1e-9, "--tolerance"),
    dim: Optional[List[int]] = typer.Option(None, "--dim", help="Restrict to these dimensions."),
    lemma: Optional[List[LemmaId]] = typer.Option(None, "--lemma", help="Restrict to these checks."),
    workers: int = typer.Option(1, "--workers"),
    out: Optional[Path] = typer.Option(None, "--out"),
):
    """Run the randomized lemma suites; exit 5 on any failure."""
    plan = [
        (lemma_id, config)
        for lemma_id, config in default_suite(trials=trials, seed=seed, tolerance=tolerance)
        if (not dim or config.dim in dim) and (not lemma or lemma_id in lemma)
    ]
    reports = run_suite(plan, workers=workers)
    passed = suite_passed(reports)
    summary = {
        "passed": passed,
        "suites": len(reports),
        "failures": sum(len(r.failures) for r in reports),
    }
    _emit(ctx, {**summary, "reports": [r.model_dump(mode="json") for r in reports]}, out, summary)
    if not passed:
        raise typer.Exit(code=int(ExitCode.SUITE_FAILED))


@app.command()
@handled
def perturb(
    ctx: typer.Context,
    circuit: Path = typer.Argument(..., help="Circuit or NIC instance JSON."),
    epsilon: float = typer.Option(..., "--epsilon"),
    seed: int = typer.Option(0, "--seed"),
    sweeps: int = typer.Option(1, "--sweeps", help="Perturbation seeds seed … seed+sweeps−1."),
    tolerance: float = typer.Option(1e-9, "--tolerance"),
    out: Optional[Path] = typer.Option(None, "--out"),
):
    """Perturb every gate by at most epsilon and check the phase-range shift; exit 5 on violation."""
    c = LayeredCircuit.from_json(_read(circuit))
    reports = []
    violated = False
    for offset in range(sweeps):
        noisy, _ = perturb_circuit(c, epsilon, seed + offset)
        try:
            result = alpha_stability_check(c, noisy, tolerance=tolerance)
        except StabilityViolation as e:
            result = e.report
            violated = True
        reports.append({"seed": seed + offset, **result.model_dump(), "holds": result.holds(tolerance)})
    summary = {"passed": not violated, "sweeps": sweeps, "epsilon": epsilon}
    _emit(ctx, {**summary, "reports": reports}, out, summary)
    if violated:
        raise typer.Exit(code=int(ExitCode.SUITE_FAILED))


@app.command()
@handled
def budget(
    ctx: typer.Context,
    sk_exponent: float = typer.Option(..., "--sk-exponent", help="Solovay–Kitaev exponent δ."),
    gate_count: Optional[int] = typer.Option(None, "--gate-count"),
    gap: Optional[float] = typer.Option(None, "--gap"),
    instance: Optional[Path] = typer.Option(None, "--instance", help="NIC instance JSON."),
):
    """Per-gate precision and depth factor for a gate count and promise gap."""
    if instance is not None:
        result = instance_budget(NicInstance.from_json(_read(instance)), sk_exponent)
    elif gate_count is not None and gap is not None:
        result = depth_budget(gate_count, gap, sk_exponent)
    else:
        raise InputError("budget needs --instance or both --gate-count and --gap")
    _emit(ctx, result.model_dump())
