"""Acceptance suite: one test per release criterion, each printing a
pass/fail line (run with -s to see them). Expected values come from
independent routes: dense grids, closed-form inversion via scipy, and
central finite differences."""

import json
import math
import time
from contextlib import contextmanager

import numpy as np
from click.testing import CliRunner
from fastapi.testclient import TestClient

from conftest import fd_marginals, random_model, waterfill_reference
from sovplan.cli import cli
from sovplan.core import (
    PILLARS,
    Allocation,
    EconomyModel,
    OpennessParams,
    PillarId,
    PillarParams,
    capacities,
    funding_bar,
    marginal_returns,
)
from sovplan.scenario import (
    ChecklistIncrement,
    MetricObservation,
    builtin_scenarios,
    evaluate_checklist,
    evaluate_guardrails,
    load_scenario,
    sensitivity,
    serialize_scenario,
)
from sovplan.schemas import model_block_from_model
from sovplan.service import create_app
from sovplan.solver import SolveOptions, grid_oracle, optimal_openness, solve_allocation, solve_joint
from sovplan.weights import PairwiseMatrix, ahp_weights


@contextmanager
def criterion(name: str):
    started = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name} ({time.perf_counter() - started:.1f}s)")


def test_bar_reproduction():
    with criterion("bar reproduction: mu in {1.54, 2.17}, alpha 0.7 -> bars 2.2 and 3.1 (2 s.f.)"):
        assert float(f"{funding_bar(1.54, 0.7):.2g}") == 2.2
        assert float(f"{funding_bar(2.17, 0.7):.2g}") == 3.1


def test_closed_form_openness_vs_grid():
    with criterion("closed-form openness matches 1e5-point grid argmax on 1000 random draws"):
        rng = np.random.default_rng(11)
        grid = np.linspace(0.0, 1.0, 100_000)
        step = float(grid[1] - grid[0])
        for i in range(1000):
            alpha = float(rng.uniform(0.0, 1.0))
            g = float(math.exp(rng.uniform(math.log(0.1), math.log(5.0))))
            k = float(math.exp(rng.uniform(math.log(0.2), math.log(20.0))))
            p = 0.0 if i % 25 == 0 else float(math.exp(rng.uniform(math.log(1e-3), math.log(2.0))))
            lam = 0.0 if i % 40 == 0 else float(math.exp(rng.uniform(math.log(0.05), math.log(5.0))))
            params = OpennessParams(
                benefit_scale=g,
                benefit_curvature=k,
                exposure_slope=p,
                risk_sensitivity=lam,
                sovereignty_weight=alpha,
            )
            o_star, _ = optimal_openness(params)
            objective = (1.0 - alpha) * g * np.log1p(k * grid) - lam * p * grid
            best = float(grid[int(objective.argmax())])
            assert abs(o_star - best) <= step + 1e-12, (params, o_star, best)
        # clamp cases hit the bounds exactly
        closed = OpennessParams(1.0, 4.0, 0.3, 1.0, 1.0)
        assert optimal_openness(closed) == (0.0, True)
        free = OpennessParams(1.0, 4.0, 0.0, 1.0, 0.4)
        assert optimal_openness(free) == (1.0, True)
        free_lam = OpennessParams(1.0, 4.0, 0.3, 0.0, 0.4)
        assert optimal_openness(free_lam) == (1.0, True)


def test_decoupled_water_filling():
    with criterion("decoupled water-filling matches closed-form inversion on 200 random instances"):
        started = time.perf_counter()
        rng = np.random.default_rng(17)
        for _ in range(200):
            model = random_model(rng)
            solution = solve_allocation(model)
            reference, mu_ref = waterfill_reference(model)
            for p in PILLARS:
                assert abs(solution.allocation.amounts[p] - reference[p]) <= 1e-6
        assert time.perf_counter() - started < 10.0


def test_oracle_dominance_coupled():
    with criterion("oracle dominance: solver within 1e-3 of grid oracle on 20 coupled instances"):
        started = time.perf_counter()
        rng = np.random.default_rng(23)
        for _ in range(20):
            model = random_model(rng, theta_range=(0.5, 3.0), budget_range=(1.0, 6.0))
            solution = solve_joint(model)
            oracle = grid_oracle(model, 60)
            assert solution.welfare.welfare >= oracle.welfare.welfare - 1e-3
        assert time.perf_counter() - started < 120.0


def test_kkt_suite():
    with criterion("KKT: equal funded marginals (1e-7), corner conditions, slackness (1e-8)"):
        rng = np.random.default_rng(29)
        opts = SolveOptions()
        interior_seen = 0
        attempts = 0
        while interior_seen < 30 and attempts < 300:
            attempts += 1
            model = random_model(rng, theta_range=(0.0, 2.0))
            solution = solve_allocation(model, opts)
            assert solution.allocation.total <= model.budget + opts.tolerance
            if solution.flags.m_clipped or solution.capacities.model > 1 - 1e-6:
                continue  # kink solutions are flagged, not interior
            interior_seen += 1
            alpha = model.openness.sovereignty_weight
            mr = marginal_returns(model, solution.allocation).per_pillar
            funded = [alpha * mr[p] for p in solution.funded_set]
            if len(funded) > 1:
                assert max(funded) - min(funded) <= 1e-7
            for p in PILLARS:
                if p not in solution.funded_set:
                    assert solution.allocation.amounts[p] == 0.0
                    assert alpha * mr[p] <= solution.multiplier + opts.tolerance
            assert abs(solution.multiplier * (model.budget - solution.allocation.total)) <= 1e-8
        assert interior_seen >= 30


def test_gradient_checks():
    with criterion("analytic marginals match central differences (rel < 1e-6) at 100 points"):
        rng = np.random.default_rng(31)
        checked = 0
        while checked < 100:
            model = random_model(rng, theta_range=(0.1, 1.5), alpha_range=(0.4, 0.9))
            amounts = {p: float(rng.uniform(0.05, 1.2)) for p in PILLARS}
            caps = capacities(model, Allocation(amounts))
            if caps.m_clipped or caps.model > 0.95:
                continue
            analytic = marginal_returns(model, Allocation(amounts)).per_pillar
            numeric = fd_marginals(model, amounts, step=1e-6)
            for p in PILLARS:
                assert abs(analytic[p] - numeric[p]) <= 1e-6 * abs(numeric[p])
            checked += 1


def test_comparative_statics():
    with criterion("comparative statics: openness and multiplier monotonicity, coupling direction"):
        base = load_scenario(serialize_scenario(builtin_scenarios()[0]))
        opts = SolveOptions()

        def column(parameter, values, field):
            table = sensitivity(base, parameter, values, opts)
            assert all(r.error is None for r in table.rows)
            return [getattr(r, field) for r in table.rows]

        o_lam = column("lambda", [0.4, 0.8, 1.2, 1.6, 2.0], "openness")
        assert all(b <= a + 1e-12 for a, b in zip(o_lam, o_lam[1:]))
        o_p = column("p", [0.05, 0.1, 0.2, 0.4, 0.8], "openness")
        assert all(b <= a + 1e-12 for a, b in zip(o_p, o_p[1:]))
        o_g = column("g", [0.5, 1.0, 1.5, 2.0], "openness")
        assert all(b >= a - 1e-12 for a, b in zip(o_g, o_g[1:]))
        o_alpha = column("alpha", [0.2, 0.4, 0.6, 0.8, 1.0], "openness")
        assert all(b <= a + 1e-12 for a, b in zip(o_alpha, o_alpha[1:]))
        mu_b = column("budget", [0.5, 1.0, 2.0, 4.0], "multiplier")
        assert all(b <= a + 1e-6 for a, b in zip(mu_b, mu_b[1:]))

        # more compute spend raises the data marginal while autonomy is interior
        model = EconomyModel(
            pillars={
                PillarId.DATA: PillarParams(1.0, 0.3),
                PillarId.COMPUTE: PillarParams(1.0, 0.3),
                PillarId.MODEL: PillarParams(0.8, 0.2),
                PillarId.NORMS: PillarParams(1.0, 0.2),
            },
            complementarity=1.0,
            openness=base.model.openness,
            budget=4.0,
        )
        previous = -math.inf
        for x_c in (0.0, 0.25, 0.5, 0.75, 1.0):
            alloc = Allocation(dict(zip(PILLARS, (0.4, x_c, 0.1, 0.2))))
            mr = marginal_returns(model, alloc)
            assert not mr.m_clipped
            current = mr.per_pillar[PillarId.DATA]
            assert current > previous
            previous = current


def test_ahp_recovery():
    with criterion("AHP recovers consistent weight vectors within 1e-9; all-ones gives equal weights"):
        for target in ((0.4, 0.3, 0.2, 0.1), (0.48, 0.24, 0.16, 0.12), (0.7, 0.1, 0.1, 0.1)):
            matrix = PairwiseMatrix(tuple(tuple(wi / wj for wj in target) for wi in target))
            result = ahp_weights(matrix)
            for p, w in zip(PILLARS, target):
                assert abs(result.weights[p] - w) <= 1e-9
            assert result.consistency_ratio <= 1e-9
        equal = ahp_weights(PairwiseMatrix(tuple(tuple(1.0 for _ in range(4)) for _ in range(4))))
        assert all(abs(v - 0.25) <= 1e-12 for v in equal.weights.values())


def test_checklist_and_guardrail_semantics():
    with criterion("checklist ties approve; guardrail comparators strict/inclusive; missing = no data"):
        [tie] = evaluate_checklist([ChecklistIncrement("tie", 2.0, 2.0)])
        assert tie.approved and tie.margin == 0.0

        gulf = builtin_scenarios()[2]
        by_metric = {g.metric_id: g for g in gulf.guardrails}
        assert by_metric["sovereign_gpu_utilization"].comparator == ">"  # "more than 75%"
        assert by_metric["low_carbon_compute_share"].comparator == ">="  # "at least 50%"
        assert by_metric["high_risk_audit_coverage"].comparator == ">="

        on_the_line = [
            MetricObservation("sovereign_gpu_utilization", 0.75, "2025-Q3"),
            MetricObservation("low_carbon_compute_share", 0.50, "2025-Q3"),
            MetricObservation("high_risk_audit_coverage", 0.80, "2025-Q3"),
        ]
        results = {r.metric_id: r for r in evaluate_guardrails(gulf.guardrails, on_the_line)}
        assert results["sovereign_gpu_utilization"].status == "fail"  # strict bound
        assert results["low_carbon_compute_share"].status == "pass"  # inclusive bound
        assert results["high_risk_audit_coverage"].status == "pass"  # inclusive bound
        assert results["arabic_tied_hours_share"].status == "no_data"
        assert results["verifiable_dataset_share"].status == "no_data"


def test_end_to_end_determinism_and_parity(tmp_path):
    with criterion("CLI solve --json equals POST /solve byte-for-byte (India and Gulf, fixed seed)"):
        runner = CliRunner()
        client = TestClient(create_app(tmp_path / "store", seed_builtins=True))
        for scenario in (builtin_scenarios()[0], builtin_scenarios()[2]):
            path = tmp_path / f"{scenario.id}.scn"
            path.write_text(serialize_scenario(scenario))
            result = runner.invoke(
                cli, ["solve", str(path), "--json", "--seed", "1234"], catch_exceptions=False
            )
            assert result.exit_code == 0
            body = {
                "model": json.loads(
                    model_block_from_model(scenario.model).model_dump_json(by_alias=True)
                ),
                "options": {"randomSeed": 1234},
            }
            first = client.post("/solve", json=body)
            second = client.post("/solve", json=body)
            assert first.status_code == 200
            assert first.content == second.content
            assert result.output.rstrip("\n").encode() == first.content
