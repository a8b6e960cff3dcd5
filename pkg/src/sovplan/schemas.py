"""Request/response schemas and the canonical JSON encoding.

Response field names are the domain type field names in lowerCamelCase;
scenario documents and inline model blocks keep the file-schema keys
(w_raw, lambda, mu_mode, ...) so a file can be pasted into a request
body unchanged. All JSON leaves the process through render_json_bytes,
which rounds floats to 12 significant digits, so the CLI and the HTTP
service produce byte-identical output for the same inputs.
"""

from __future__ import annotations

import json
from typing import Any, Dict, List, Optional

from fastapi.encoders import jsonable_encoder
from pydantic import BaseModel, ConfigDict, Field
from pydantic.alias_generators import to_camel

from .core import (
    PILLARS,
    Allocation,
    EconomyModel,
    OpennessParams,
    PillarParams,
    WelfareBreakdown,
    as_printed,
)
from .scenario import (
    CompareReport,
    DashboardReport,
    MetricObservation,
    SensitivityTable,
)
from .solver import GateResult, OracleSolution, PlannerSolution, SolveOptions
from .weights import WeightResult

def _round_floats(obj: Any) -> Any:
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return as_printed(obj)
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def render_json_bytes(content: Any) -> bytes:
    """Canonical JSON bytes: compact separators, floats at 12 digits."""
    return json.dumps(
        _round_floats(content), ensure_ascii=False, allow_nan=False, separators=(",", ":")
    ).encode("utf-8")


def model_json_bytes(model: BaseModel) -> bytes:
    return render_json_bytes(jsonable_encoder(model, by_alias=True))


class CamelModel(BaseModel):
    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True)


# --- shared document blocks (file-schema naming) ------------------------

class PillarBlock(BaseModel):
    a: float
    w_raw: float
    provenance: str = "user"


class OpennessBlock(BaseModel):
    g: float
    k: float
    p: float
    lambda_: float = Field(alias="lambda")
    alpha: float

    model_config = ConfigDict(populate_by_name=True)

    def to_params(self) -> OpennessParams:
        return OpennessParams(
            benefit_scale=self.g,
            benefit_curvature=self.k,
            exposure_slope=self.p,
            risk_sensitivity=self.lambda_,
            sovereignty_weight=self.alpha,
        )


class ModelBlock(BaseModel):
    """Inline economy model, shaped exactly like the scenario file fields."""

    pillars: Dict[str, PillarBlock]
    theta: float
    openness: OpennessBlock
    budget: float

    def to_model(self) -> EconomyModel:
        missing = [p.value for p in PILLARS if p.value not in self.pillars]
        if missing:
            raise ValueError(f"pillars missing: {', '.join(missing)}")
        return EconomyModel(
            pillars={
                p: PillarParams(
                    productivity=self.pillars[p.value].a, weight=self.pillars[p.value].w_raw
                )
                for p in PILLARS
            },
            complementarity=self.theta,
            openness=self.openness.to_params(),
            budget=self.budget,
        )


def model_block_from_model(model: EconomyModel) -> ModelBlock:
    op = model.openness
    return ModelBlock(
        pillars={
            p.value: PillarBlock(a=model.pillars[p].productivity, w_raw=model.pillars[p].weight)
            for p in PILLARS
        },
        theta=model.complementarity,
        openness=OpennessBlock(
            g=op.benefit_scale,
            k=op.benefit_curvature,
            p=op.exposure_slope,
            lambda_=op.risk_sensitivity,
            alpha=op.sovereignty_weight,
        ),
        budget=model.budget,
    )


class SolveOptionsBlock(CamelModel):
    tolerance: float = 1e-8
    max_iterations: int = 10_000
    multistart_count: int = 16
    random_seed: int = 0
    oracle_resolution: int = 60

    def to_options(self) -> SolveOptions:
        return SolveOptions(
            tolerance=self.tolerance,
            max_iterations=self.max_iterations,
            multistart_count=self.multistart_count,
            random_seed=self.random_seed,
            oracle_resolution=self.oracle_resolution,
        )


# --- requests ------------------------------------------------------------

class SolveRequest(CamelModel):
    scenario_id: Optional[str] = None
    model_doc: Optional[ModelBlock] = Field(default=None, alias="model")
    options: Optional[SolveOptionsBlock] = None


class GateRequest(CamelModel):
    scenario_id: Optional[str] = None
    model_doc: Optional[ModelBlock] = Field(default=None, alias="model")
    mu: float
    options: Optional[SolveOptionsBlock] = None


class AhpRequest(CamelModel):
    matrix: List[List[float]]


class ObservationIn(CamelModel):
    metric_id: str
    value: float
    period: str

    def to_observation(self) -> MetricObservation:
        return MetricObservation(metric_id=self.metric_id, value=self.value, period=self.period)


class DashboardRequest(CamelModel):
    observations: List[ObservationIn] = Field(default_factory=list)
    period: str = ""
    options: Optional[SolveOptionsBlock] = None


class SensitivityRequest(CamelModel):
    scenario_id: str
    parameter: str
    values: List[float]
    options: Optional[SolveOptionsBlock] = None


# --- responses -----------------------------------------------------------

class HealthOut(CamelModel):
    status: str
    version: str


class CapacitiesOut(CamelModel):
    d: float
    c: float
    m: float
    n: float
    m_clipped: bool


class WelfareOut(CamelModel):
    s: float
    g: float
    p: float
    w: float


class KktOut(CamelModel):
    per_pillar: Dict[str, float]
    openness: float
    complementary_slackness: float


class FlagsOut(CamelModel):
    budget_binding: bool
    m_clipped: bool
    openness_at_bound: bool
    globality_verified: bool


class PlannerSolutionOut(CamelModel):
    allocation: Dict[str, float]
    openness: float
    multiplier: float
    capacities: CapacitiesOut
    welfare: WelfareOut
    funded_set: List[str]
    kkt_residuals: KktOut
    flags: FlagsOut


class OpennessOut(CamelModel):
    o: float
    at_bound: bool


class GateOut(CamelModel):
    allocation: Dict[str, float]
    implied_budget: float
    verdicts: Dict[str, str]
    bar: float
    all_deferred: bool


class WeightResultOut(CamelModel):
    weights: Dict[str, float]
    principal_eigenvalue: float
    consistency_ratio: float
    consistent: bool


class PillarRowOut(CamelModel):
    marginal_return: float
    bar: float
    verdict: str
    allocation: float
    capacity: float


class OpennessReadoutOut(CamelModel):
    o: float
    at_bound: bool
    benefit: float
    exposure: float


class ChecklistDecisionOut(CamelModel):
    name: str
    approved: bool
    margin: float


class GuardrailResultOut(CamelModel):
    metric_id: str
    comparator: str
    threshold: float
    unit: str
    observed: Optional[float]
    period: Optional[str]
    status: str


class DashboardOut(CamelModel):
    period: str
    per_pillar: Dict[str, PillarRowOut]
    openness: OpennessReadoutOut
    checklist_decisions: List[ChecklistDecisionOut]
    guardrail_results: List[GuardrailResultOut]
    welfare: WelfareOut


class SweepRowOut(CamelModel):
    value: float
    allocation: Optional[Dict[str, float]]
    openness: Optional[float]
    multiplier: Optional[float]
    sovereignty: Optional[float]
    welfare: Optional[float]
    error: Optional[str] = None


class SensitivityOut(CamelModel):
    parameter: str
    rows: List[SweepRowOut]


class OracleOut(CamelModel):
    allocation: Dict[str, float]
    openness: float
    welfare: WelfareOut
    grid_resolution: int


class DriverOut(CamelModel):
    parameter: str
    value_a: float
    value_b: float
    delta_welfare: float


class CompareOut(CamelModel):
    id_a: str
    id_b: str
    solution_a: PlannerSolutionOut
    solution_b: PlannerSolutionOut
    parameter_deltas: Dict[str, List[float]]
    drivers: List[DriverOut]
    welfare_gap: float


class ScenarioSummaryOut(CamelModel):
    id: str
    name: str
    version: int


class ApiErrorOut(CamelModel):
    code: str
    message: str
    details: List[Dict[str, str]] = Field(default_factory=list)


# --- converters ------------------------------------------------------------

def allocation_out(alloc: Allocation) -> Dict[str, float]:
    return {p.value: alloc.amounts[p] for p in PILLARS}


def welfare_out(breakdown: WelfareBreakdown) -> WelfareOut:
    return WelfareOut(
        s=breakdown.sovereignty, g=breakdown.benefit, p=breakdown.exposure, w=breakdown.welfare
    )


def solution_out(solution: PlannerSolution) -> PlannerSolutionOut:
    caps = solution.capacities
    return PlannerSolutionOut(
        allocation=allocation_out(solution.allocation),
        openness=solution.openness,
        multiplier=solution.multiplier,
        capacities=CapacitiesOut(
            d=caps.data, c=caps.compute, m=caps.model, n=caps.norms, m_clipped=caps.m_clipped
        ),
        welfare=welfare_out(solution.welfare),
        funded_set=[p.value for p in PILLARS if p in solution.funded_set],
        kkt_residuals=KktOut(
            per_pillar={p.value: solution.kkt.per_pillar[p] for p in PILLARS},
            openness=solution.kkt.openness,
            complementary_slackness=solution.kkt.complementary_slackness,
        ),
        flags=FlagsOut(
            budget_binding=solution.flags.budget_binding,
            m_clipped=solution.flags.m_clipped,
            openness_at_bound=solution.flags.openness_at_bound,
            globality_verified=solution.flags.globality_verified,
        ),
    )


def gate_out(result: GateResult) -> GateOut:
    return GateOut(
        allocation=allocation_out(result.allocation),
        implied_budget=result.implied_budget,
        verdicts={p.value: result.verdicts[p] for p in PILLARS},
        bar=result.bar,
        all_deferred=result.all_deferred,
    )


def weight_result_out(result: WeightResult) -> WeightResultOut:
    return WeightResultOut(
        weights={p.value: result.weights[p] for p in PILLARS},
        principal_eigenvalue=result.principal_eigenvalue,
        consistency_ratio=result.consistency_ratio,
        consistent=result.consistent,
    )


def dashboard_out(report: DashboardReport) -> DashboardOut:
    return DashboardOut(
        period=report.period,
        per_pillar={
            p.value: PillarRowOut(
                marginal_return=report.per_pillar[p].marginal_return,
                bar=report.per_pillar[p].bar,
                verdict=report.per_pillar[p].verdict,
                allocation=report.per_pillar[p].allocation,
                capacity=report.per_pillar[p].capacity,
            )
            for p in PILLARS
        },
        openness=OpennessReadoutOut(
            o=report.openness.o,
            at_bound=report.openness.at_bound,
            benefit=report.openness.benefit,
            exposure=report.openness.exposure,
        ),
        checklist_decisions=[
            ChecklistDecisionOut(name=d.name, approved=d.approved, margin=d.margin)
            for d in report.checklist_decisions
        ],
        guardrail_results=[
            GuardrailResultOut(
                metric_id=g.metric_id,
                comparator=g.comparator,
                threshold=g.threshold,
                unit=g.unit,
                observed=g.observed,
                period=g.period,
                status=g.status,
            )
            for g in report.guardrail_results
        ],
        welfare=welfare_out(report.welfare),
    )


def sensitivity_out(table: SensitivityTable) -> SensitivityOut:
    rows = []
    for row in table.rows:
        rows.append(
            SweepRowOut(
                value=row.value,
                allocation=None if row.allocation is None else allocation_out(row.allocation),
                openness=row.openness,
                multiplier=row.multiplier,
                sovereignty=row.sovereignty,
                welfare=row.welfare,
                error=row.error,
            )
        )
    return SensitivityOut(parameter=table.parameter, rows=rows)


def oracle_out(result: OracleSolution) -> OracleOut:
    return OracleOut(
        allocation=allocation_out(result.allocation),
        openness=result.openness,
        welfare=welfare_out(result.welfare),
        grid_resolution=result.grid_resolution,
    )


def compare_out(report: CompareReport) -> CompareOut:
    return CompareOut(
        id_a=report.id_a,
        id_b=report.id_b,
        solution_a=solution_out(report.solution_a),
        solution_b=solution_out(report.solution_b),
        parameter_deltas={k: [v[0], v[1]] for k, v in report.parameter_deltas.items()},
        drivers=[
            DriverOut(
                parameter=d.parameter,
                value_a=d.value_a,
                value_b=d.value_b,
                delta_welfare=d.delta_welfare,
            )
            for d in report.drivers
        ],
        welfare_gap=report.welfare_gap,
    )
