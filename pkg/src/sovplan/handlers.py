"""Service layer shared by the HTTP endpoints and the CLI.

These functions take domain objects in and hand response schemas back;
both front ends call them and serialize through the same canonical
encoder, which is what keeps CLI and endpoint output byte-identical.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .core import EconomyModel, OpennessParams
from .scenario import (
    MetricObservation,
    Scenario,
    compare_scenarios,
    marginal_returns_dashboard,
    sensitivity,
)
from .schemas import (
    CompareOut,
    DashboardOut,
    GateOut,
    OpennessOut,
    OracleOut,
    PlannerSolutionOut,
    SensitivityOut,
    WeightResultOut,
    compare_out,
    dashboard_out,
    gate_out,
    oracle_out,
    sensitivity_out,
    solution_out,
    weight_result_out,
)
from .solver import (
    SolveOptions,
    gate_mode_allocation,
    grid_oracle,
    optimal_openness,
    solve_joint,
)
from .weights import PairwiseMatrix, ahp_weights


def run_solve(model: EconomyModel, opts: Optional[SolveOptions] = None) -> PlannerSolutionOut:
    return solution_out(solve_joint(model, opts))


def run_openness(params: OpennessParams) -> OpennessOut:
    o, at_bound = optimal_openness(params)
    return OpennessOut(o=o, at_bound=at_bound)


def run_gate(model: EconomyModel, mu: float, opts: Optional[SolveOptions] = None) -> GateOut:
    return gate_out(gate_mode_allocation(model, mu, opts))


def run_ahp(matrix_rows: Sequence[Sequence[float]]) -> WeightResultOut:
    matrix = PairwiseMatrix(tuple(tuple(row) for row in matrix_rows))
    return weight_result_out(ahp_weights(matrix))


def run_dashboard(
    scenario: Scenario,
    observations: Sequence[MetricObservation],
    period: str,
    opts: Optional[SolveOptions] = None,
) -> DashboardOut:
    return dashboard_out(marginal_returns_dashboard(scenario, observations, opts, period))


def run_sensitivity(
    scenario: Scenario,
    parameter: str,
    values: Sequence[float],
    opts: Optional[SolveOptions] = None,
) -> SensitivityOut:
    return sensitivity_out(sensitivity(scenario, parameter, values, opts))


def run_oracle(model: EconomyModel, resolution: int) -> OracleOut:
    return oracle_out(grid_oracle(model, resolution))


def run_compare(a: Scenario, b: Scenario, opts: Optional[SolveOptions] = None) -> CompareOut:
    return compare_out(compare_scenarios(a, b, opts))
