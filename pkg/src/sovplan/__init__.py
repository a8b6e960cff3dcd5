"""Planner's-model toolkit for sovereignty budget allocation."""

__version__ = "0.1.0"

from .core import (
    PILLARS,
    Allocation,
    CapacityVector,
    EconomyModel,
    MarginalReturns,
    OpennessParams,
    PillarId,
    PillarParams,
    WelfareBreakdown,
    capacities,
    capacity,
    clears_bar,
    exposure_cost,
    funding_bar,
    marginal_returns,
    model_autonomy,
    openness_benefit,
    sovereignty_index,
    welfare,
)
from .scenario import (
    ChecklistIncrement,
    DashboardReport,
    GuardrailTarget,
    MetricObservation,
    Scenario,
    ScenarioValidationError,
    builtin_scenarios,
    compare_scenarios,
    evaluate_checklist,
    evaluate_guardrails,
    load_scenario,
    marginal_returns_dashboard,
    sensitivity,
    serialize_scenario,
)
from .solver import (
    GateResult,
    OracleSolution,
    PlannerSolution,
    SolveOptions,
    SolverFailure,
    gate_mode_allocation,
    grid_oracle,
    kkt_residuals,
    optimal_openness,
    shadow_price,
    solve_allocation,
    solve_joint,
)
from .store import ScenarioNotFound, ScenarioStore, VersionConflict
from .weights import PairwiseMatrix, WeightResult, ahp_weights, normalize_weights
