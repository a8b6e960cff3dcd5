"""Command-line front end.

Every solving subcommand goes through the same service-layer handlers as
the HTTP endpoints and serializes with the same canonical encoder, so
`--json` output is byte-identical to the corresponding endpoint response.
Exit codes: 0 success, 1 validation/usage failure, 2 solver failure.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Optional

import click
import yaml

from .core import PILLARS, OpennessParams, as_printed
from .handlers import (
    run_ahp,
    run_compare,
    run_gate,
    run_openness,
    run_oracle,
    run_solve,
)
from .scenario import (
    DashboardSolverFailure,
    MetricObservation,
    Scenario,
    ScenarioValidationError,
    dashboard_to_delimited,
    dashboard_to_table,
    evaluate_checklist,
    load_scenario,
    marginal_returns_dashboard,
    sensitivity,
    sensitivity_to_delimited,
)
from .schemas import dashboard_out, model_json_bytes, render_json_bytes, sensitivity_out
from .solver import SolveOptions, SolverFailure


def _load_scenario_file(path: str) -> Scenario:
    return load_scenario(Path(path).read_text())


def _options(seed: int, tol: float) -> SolveOptions:
    return SolveOptions(tolerance=tol, random_seed=seed)


def _emit_json(model) -> None:
    click.echo(model_json_bytes(model).decode("utf-8"))


def _solver_flags(f):
    f = click.option("--seed", type=int, default=0, show_default=True, help="Random seed for multistart restarts.")(f)
    f = click.option("--tol", type=float, default=1e-8, show_default=True, help="Solver tolerance.")(f)
    return f


def _parse_cell(token: str) -> float:
    if "/" in token:
        num, _, den = token.partition("/")
        return float(num) / float(den)
    return float(token)


def _parse_matrix_text(text: str) -> list[list[float]]:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError:
        doc = None
    if isinstance(doc, list) and all(isinstance(row, list) for row in doc):
        return [[float(v) for v in row] for row in doc]
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([_parse_cell(tok) for tok in line.split()])
    if not rows:
        raise ValueError("matrix file holds no rows")
    return rows


def _load_observations(path: Optional[str]) -> list[MetricObservation]:
    if path is None:
        return []
    doc = yaml.safe_load(Path(path).read_text())
    if doc is None:
        return []
    if not isinstance(doc, list):
        raise ValueError("observations file must hold a list of {metric_id, value, period}")
    return [
        MetricObservation(metric_id=str(o["metric_id"]), value=float(o["value"]), period=str(o["period"]))
        for o in doc
    ]


@click.group()
def cli():
    """Sovereignty budget planner: solve, gate, dashboards, sweeps, service."""


@cli.command()
@click.argument("scenario_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Emit canonical JSON (matches POST /solve).")
@click.option("--table", "as_table", is_flag=True, help="Emit a human-readable table (default).")
@_solver_flags
def solve(scenario_file, as_json, as_table, seed, tol):
    """Solve the planner's problem for a scenario file."""
    scenario = _load_scenario_file(scenario_file)
    out = run_solve(scenario.model, _options(seed, tol))
    if as_json:
        _emit_json(out)
        return
    click.echo(f"scenario: {scenario.id}")
    click.echo(f"{'pillar':<10}{'spend':>14}{'capacity':>12}")
    caps = {"data": out.capacities.d, "compute": out.capacities.c, "model": out.capacities.m, "norms": out.capacities.n}
    for p in PILLARS:
        click.echo(f"{p.value:<10}{out.allocation[p.value]:>14.6f}{caps[p.value]:>12.6f}")
    click.echo(f"multiplier: {out.multiplier:.8f}  funded: {', '.join(out.funded_set) or '(none)'}")
    bound = " (at bound)" if out.flags.openness_at_bound else ""
    click.echo(f"openness O*: {out.openness:.6f}{bound}")
    click.echo(f"welfare: S={out.welfare.s:.6f} W={out.welfare.w:.6f}")
    notes = []
    if out.flags.m_clipped:
        notes.append("model autonomy clipped at 1: review allocation")
    if not out.flags.budget_binding:
        notes.append("budget not binding")
    for note in notes:
        click.echo(f"note: {note}")


@cli.command()
@click.option("--alpha", type=float, required=True)
@click.option("--g", type=float, required=True)
@click.option("--k", type=float, required=True)
@click.option("--lambda", "lam", type=float, required=True)
@click.option("--p", type=float, required=True)
@click.option("--json", "as_json", is_flag=True, help="Emit canonical JSON (matches POST /openness).")
def openness(alpha, g, k, lam, p, as_json):
    """Closed-form optimal openness for the given trade-off parameters."""
    params = OpennessParams(
        benefit_scale=g,
        benefit_curvature=k,
        exposure_slope=p,
        risk_sensitivity=lam,
        sovereignty_weight=alpha,
    )
    out = run_openness(params)
    if as_json:
        _emit_json(out)
    else:
        click.echo(str(as_printed(out.o)))


@cli.command()
@click.argument("scenario_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--mu", type=float, required=True, help="Exogenous multiplier (e.g. an MCPF estimate).")
@click.option("--json", "as_json", is_flag=True, help="Emit canonical JSON (matches POST /gate).")
@_solver_flags
def gate(scenario_file, mu, as_json, seed, tol):
    """Gate each pillar against the mu/alpha bar at an exogenous multiplier."""
    scenario = _load_scenario_file(scenario_file)
    out = run_gate(scenario.model, mu, _options(seed, tol))
    if as_json:
        _emit_json(out)
        return
    click.echo(f"bar mu/alpha: {out.bar:.6f}")
    for p in PILLARS:
        click.echo(f"{p.value:<10}{out.verdicts[p.value]:<8}{out.allocation[p.value]:>14.6f}")
    click.echo(f"implied budget: {out.implied_budget:.6f}")
    if out.all_deferred:
        click.echo("note: multiplier too high, every pillar deferred")


@cli.command()
@click.argument("scenario_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--observations", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--period", default="", help="Report period label, e.g. 2025-Q3.")
@click.option("--json", "as_json", is_flag=True, help="Emit canonical JSON (matches the dashboard endpoint).")
@click.option("--csv", "as_csv", is_flag=True, help="Emit the delimited per-pillar export.")
@_solver_flags
def dashboard(scenario_file, observations, period, as_json, as_csv, seed, tol):
    """Marginal-returns dashboard: returns vs bar, checklist, guardrails."""
    scenario = _load_scenario_file(scenario_file)
    obs = _load_observations(observations)
    report = marginal_returns_dashboard(scenario, obs, _options(seed, tol), period)
    if as_json:
        _emit_json(dashboard_out(report))
        return
    click.echo(dashboard_to_delimited(report) if as_csv else dashboard_to_table(report), nl=False)


@cli.command()
@click.argument("scenario_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
def checklist(scenario_file, as_json):
    """Approve or reject each openness increment (benefit vs exposure)."""
    scenario = _load_scenario_file(scenario_file)
    decisions = evaluate_checklist(scenario.checklist)
    if as_json:
        payload = [{"name": d.name, "approved": d.approved, "margin": d.margin} for d in decisions]
        click.echo(render_json_bytes(payload).decode("utf-8"))
        return
    for d in decisions:
        mark = "approve" if d.approved else "reject"
        click.echo(f"{mark:<8} {d.name} (margin {d.margin:+g})")


@cli.command()
@click.argument("matrix_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Emit canonical JSON (matches POST /weights/ahp).")
def ahp(matrix_file, as_json):
    """Pillar weights from a pairwise-comparison matrix file."""
    rows = _parse_matrix_text(Path(matrix_file).read_text())
    out = run_ahp(rows)
    if as_json:
        _emit_json(out)
        return
    for p in PILLARS:
        click.echo(f"{p.value:<10}{out.weights[p.value]:.6f}")
    click.echo(f"lambda_max: {out.principal_eigenvalue:.6f}  CR: {out.consistency_ratio:.6f}"
               f"  {'consistent' if out.consistent else 'inconsistent'}")


@cli.command()
@click.argument("scenario_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--param", "parameter", required=True, help="Parameter path, e.g. lambda, budget, a.data.")
@click.option("--values", required=True, help="Comma-separated sweep values.")
@click.option("--json", "as_json", is_flag=True, help="Emit canonical JSON (matches POST /sensitivity).")
@_solver_flags
def sweep(scenario_file, parameter, values, as_json, seed, tol):
    """Re-solve across a parameter sweep; default output is CSV."""
    scenario = _load_scenario_file(scenario_file)
    sweep_values = [float(tok) for tok in values.split(",") if tok.strip()]
    table = sensitivity(scenario, parameter, sweep_values, _options(seed, tol))
    if as_json:
        _emit_json(sensitivity_out(table))
        return
    click.echo(sensitivity_to_delimited(table), nl=False)


@cli.command()
@click.argument("scenario_a", type=click.Path(exists=True, dir_okay=False))
@click.argument("scenario_b", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
@_solver_flags
def compare(scenario_a, scenario_b, as_json, seed, tol):
    """Side-by-side solve of two scenarios with welfare-gap drivers."""
    a = _load_scenario_file(scenario_a)
    b = _load_scenario_file(scenario_b)
    out = run_compare(a, b, _options(seed, tol))
    if as_json:
        _emit_json(out)
        return
    click.echo(f"{a.id} vs {b.id}: welfare gap {out.welfare_gap:+.6f}")
    if not out.parameter_deltas:
        click.echo("no parameter differences")
    for path, (va, vb) in out.parameter_deltas.items():
        click.echo(f"  {path:<14}{va:>12g} -> {vb:<12g}")
    if out.drivers:
        click.echo("drivers (one-at-a-time welfare impact):")
        for d in out.drivers:
            click.echo(f"  {d.parameter:<14}{d.delta_welfare:+.6f}")


@cli.command()
@click.argument("scenario_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--resolution", type=int, default=60, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def oracle(scenario_file, resolution, as_json):
    """Exhaustive grid search over the budget simplex and openness."""
    scenario = _load_scenario_file(scenario_file)
    out = run_oracle(scenario.model, resolution)
    if as_json:
        _emit_json(out)
        return
    for p in PILLARS:
        click.echo(f"{p.value:<10}{out.allocation[p.value]:>14.6f}")
    click.echo(f"openness: {out.openness:.6f}  welfare: {out.welfare.w:.6f}  (resolution {out.grid_resolution})")


@cli.command()
@click.option("--addr", default="127.0.0.1:8080", show_default=True, help="host:port to bind.")
@click.option("--store", "store_path", default="./scenarios", show_default=True, help="Scenario store directory.")
@click.option("--timeout", type=float, default=30.0, show_default=True, help="Per-request solve timeout (s).")
@click.option("--ui", "ui_path", type=click.Path(exists=True, file_okay=False), default=None,
              help="Serve the built what-if explorer from this directory at /ui.")
def serve(addr, store_path, timeout, ui_path):
    """Run the HTTP service (seeds built-in scenarios into an empty store)."""
    import uvicorn

    from .service import create_app

    host, _, port = addr.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"--addr must look like host:port, got {addr!r}")
    app = create_app(store_path, seed_builtins=True, solve_timeout_s=timeout, ui_path=ui_path)
    uvicorn.run(app, host=host, port=int(port), log_level="warning")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        exc.show(file=sys.stderr)
        return 1
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return 1
    except click.Abort:
        return 1
    except ScenarioValidationError as exc:
        for path, reason in exc.errors:
            click.echo(f"invalid scenario: {path}: {reason}", err=True)
        return 1
    except (SolverFailure, DashboardSolverFailure) as exc:
        click.echo(f"solver failure: {exc}", err=True)
        return 2
    except (ValueError, ArithmeticError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
