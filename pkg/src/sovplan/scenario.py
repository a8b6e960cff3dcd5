"""Scenarios: persistence, built-in archetypes, dashboards, sweeps, comparison.

A scenario bundles an economy model with a multiplier mode (solve for the
budget multiplier, or gate spending against an exogenous one), an openness
checklist, guardrail targets, and provenance labels saying which numbers
are source-backed versus illustrative. Scenario documents are YAML with
the field names used by the dataclasses here; one document per file.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import yaml

from .core import (
    EQ_TOL,
    PILLARS,
    as_printed,
    Allocation,
    EconomyModel,
    OpennessParams,
    PillarId,
    PillarParams,
    WelfareBreakdown,
    capacities,
    marginal_returns,
    welfare,
)
from .solver import (
    PlannerSolution,
    SolveOptions,
    gate_mode_allocation,
    optimal_openness,
    solve_joint,
)

COMPARATORS = (">", ">=", "<", "<=")

# Parameter paths accepted by sensitivity sweeps and used for comparison
# deltas: scalars first, then per-pillar productivity and raw weight.
SWEEPABLE_PARAMETERS = (
    "alpha",
    "lambda",
    "g",
    "k",
    "p",
    "theta",
    "budget",
    *(f"a.{p.value}" for p in PILLARS),
    *(f"w_raw.{p.value}" for p in PILLARS),
)


class ScenarioValidationError(ValueError):
    """Carries every violation found in a document, each with a field path."""

    def __init__(self, errors: Sequence[Tuple[str, str]]):
        self.errors = list(errors)
        super().__init__("; ".join(f"{path}: {reason}" for path, reason in self.errors))


class DashboardSolverFailure(RuntimeError):
    """Solver failed while building a dashboard; checklist and guardrail
    sections were still evaluated and ride along for partial reporting."""

    def __init__(self, message, checklist_decisions, guardrail_results):
        super().__init__(message)
        self.checklist_decisions = checklist_decisions
        self.guardrail_results = guardrail_results


@dataclass(frozen=True)
class MuMode:
    """Endogenous (solve for the multiplier) or exogenous (gate against one)."""

    mode: str
    mu: Optional[float] = None

    def __post_init__(self) -> None:
        if self.mode not in ("endogenous", "exogenous"):
            raise ValueError(f"mode must be endogenous or exogenous, got {self.mode!r}")
        if self.mode == "exogenous":
            if self.mu is None or not (self.mu > 0.0) or not math.isfinite(self.mu):
                raise ValueError("exogenous mode requires a positive multiplier")
        elif self.mu is not None:
            raise ValueError("endogenous mode takes no multiplier")


@dataclass(frozen=True)
class ChecklistIncrement:
    """One notch of openness, scored for benefit and exposure on a shared scale."""

    name: str
    benefit_score: float
    exposure_score: float
    notes: str = ""

    def __post_init__(self) -> None:
        for label, v in (("benefit_score", self.benefit_score), ("exposure_score", self.exposure_score)):
            if v < 0.0 or not math.isfinite(v):
                raise ValueError(f"{label} must be a non-negative finite real, got {v}")


@dataclass(frozen=True)
class GuardrailTarget:
    """Quantified operational threshold attached to a scenario."""

    metric_id: str
    comparator: str
    threshold: float
    unit: str = "fraction"

    def __post_init__(self) -> None:
        if self.comparator not in COMPARATORS:
            raise ValueError(f"comparator must be one of {COMPARATORS}, got {self.comparator!r}")
        if not math.isfinite(self.threshold):
            raise ValueError("threshold must be finite")


@dataclass(frozen=True)
class MetricObservation:
    metric_id: str
    value: float
    period: str

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise ValueError("observation value must be finite")


@dataclass(frozen=True)
class Scenario:
    id: str
    name: str
    description: str
    model: EconomyModel
    mu_mode: MuMode
    checklist: Tuple[ChecklistIncrement, ...]
    guardrails: Tuple[GuardrailTarget, ...]
    provenance: Mapping[str, str]
    version: int

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("scenario id must be non-empty")
        if self.version < 1:
            raise ValueError("version must be at least 1")
        object.__setattr__(self, "checklist", tuple(self.checklist))
        object.__setattr__(self, "guardrails", tuple(self.guardrails))
        object.__setattr__(self, "provenance", dict(self.provenance))


@dataclass(frozen=True)
class ChecklistDecision:
    name: str
    approved: bool
    margin: float


@dataclass(frozen=True)
class GuardrailResult:
    metric_id: str
    comparator: str
    threshold: float
    unit: str
    observed: Optional[float]
    period: Optional[str]
    status: str  # pass | fail | no_data


@dataclass(frozen=True)
class PillarReadout:
    marginal_return: float
    bar: float
    verdict: str  # fund | defer
    allocation: float
    capacity: float


@dataclass(frozen=True)
class OpennessReadout:
    o: float
    at_bound: bool
    benefit: float
    exposure: float


@dataclass(frozen=True)
class DashboardReport:
    period: str
    per_pillar: Mapping[PillarId, PillarReadout]
    openness: OpennessReadout
    checklist_decisions: Tuple[ChecklistDecision, ...]
    guardrail_results: Tuple[GuardrailResult, ...]
    welfare: WelfareBreakdown


@dataclass(frozen=True)
class SweepRow:
    value: float
    allocation: Optional[Allocation]
    openness: Optional[float]
    multiplier: Optional[float]
    sovereignty: Optional[float]
    welfare: Optional[float]
    error: Optional[str] = None


@dataclass(frozen=True)
class SensitivityTable:
    parameter: str
    rows: Tuple[SweepRow, ...]


@dataclass(frozen=True)
class DriverImpact:
    parameter: str
    value_a: float
    value_b: float
    delta_welfare: float


@dataclass(frozen=True)
class CompareReport:
    id_a: str
    id_b: str
    solution_a: PlannerSolution
    solution_b: PlannerSolution
    parameter_deltas: Mapping[str, Tuple[float, float]]
    drivers: Tuple[DriverImpact, ...]
    welfare_gap: float


# --- document parsing -------------------------------------------------

def _expect_map(doc, path, errors) -> dict:
    if not isinstance(doc, Mapping):
        errors.append((path, "expected a mapping"))
        return {}
    return dict(doc)


def _take_number(doc, key, path, errors, required=True):
    if key not in doc:
        if required:
            errors.append((f"{path}{key}", "missing"))
        return None
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        errors.append((f"{path}{key}", f"expected a number, got {type(v).__name__}"))
        return None
    return float(v)


def _take_str(doc, key, path, errors, required=True, default=""):
    if key not in doc:
        if required:
            errors.append((f"{path}{key}", "missing"))
        return default
    v = doc[key]
    if not isinstance(v, str):
        errors.append((f"{path}{key}", f"expected a string, got {type(v).__name__}"))
        return default
    return v


def document_to_scenario(doc: Mapping) -> Scenario:
    """Validate a parsed scenario document, reporting every violation.

    Raw weights are normalized inside the model; when they do not already
    sum to one a provenance note records the original total.
    """
    errors: List[Tuple[str, str]] = []
    doc = _expect_map(doc, "$", errors)
    if errors:
        raise ScenarioValidationError(errors)

    scenario_id = _take_str(doc, "id", "", errors)
    name = _take_str(doc, "name", "", errors, required=False, default=scenario_id)
    description = _take_str(doc, "description", "", errors, required=False)

    version = doc.get("version", 1)
    if isinstance(version, bool) or not isinstance(version, int):
        errors.append(("version", "expected an integer"))
        version = 1
    elif version < 1:
        errors.append(("version", "must be at least 1"))
        version = 1

    pillars: Dict[PillarId, PillarParams] = {}
    pillars_doc = _expect_map(doc.get("pillars", {}), "pillars", errors)
    pillar_provenance: Dict[PillarId, str] = {}
    for pillar in PILLARS:
        block = pillars_doc.get(pillar.value)
        if block is None:
            errors.append((f"pillars.{pillar.value}", "missing"))
            continue
        block = _expect_map(block, f"pillars.{pillar.value}", errors)
        prefix = f"pillars.{pillar.value}."
        a = _take_number(block, "a", prefix, errors)
        w = _take_number(block, "w_raw", prefix, errors)
        pillar_provenance[pillar] = _take_str(block, "provenance", prefix, errors, required=False, default="user")
        if a is not None and (a <= 0.0 or not math.isfinite(a)):
            errors.append((f"{prefix}a", f"must be a positive finite real, got {a}"))
            a = None
        if w is not None and (w < 0.0 or not math.isfinite(w)):
            errors.append((f"{prefix}w_raw", f"must be a non-negative finite real, got {w}"))
            w = None
        if a is not None and w is not None:
            pillars[pillar] = PillarParams(productivity=a, weight=w)

    theta = _take_number(doc, "theta", "", errors)
    if theta is not None and theta < 0.0:
        errors.append(("theta", f"must be non-negative, got {theta}"))
        theta = None

    budget = _take_number(doc, "budget", "", errors)
    if budget is not None and budget <= 0.0:
        errors.append(("budget", f"must be positive, got {budget}"))
        budget = None

    openness_doc = _expect_map(doc.get("openness", {}), "openness", errors)
    openness_values = {}
    for key, check, why in (
        ("g", lambda v: v > 0.0, "must be positive"),
        ("k", lambda v: v > 0.0, "must be positive"),
        ("p", lambda v: v >= 0.0, "must be non-negative"),
        ("lambda", lambda v: v >= 0.0, "must be non-negative"),
        ("alpha", lambda v: 0.0 <= v <= 1.0, "must lie in [0, 1]"),
    ):
        v = _take_number(openness_doc, key, "openness.", errors)
        if v is not None and not check(v):
            errors.append((f"openness.{key}", f"{why}, got {v}"))
            v = None
        openness_values[key] = v

    mu_doc = _expect_map(doc.get("mu_mode", {"mode": "endogenous"}), "mu_mode", errors)
    mode = _take_str(mu_doc, "mode", "mu_mode.", errors, required=False, default="endogenous")
    mu_value = _take_number(mu_doc, "mu", "mu_mode.", errors, required=(mode == "exogenous"))
    mu_mode = None
    try:
        mu_mode = MuMode(mode=mode, mu=mu_value)
    except ValueError as exc:
        errors.append(("mu_mode", str(exc)))

    checklist: List[ChecklistIncrement] = []
    for i, item in enumerate(doc.get("checklist", []) or []):
        item = _expect_map(item, f"checklist[{i}]", errors)
        prefix = f"checklist[{i}]."
        item_name = _take_str(item, "name", prefix, errors)
        benefit = _take_number(item, "benefit_score", prefix, errors)
        exposure = _take_number(item, "exposure_score", prefix, errors)
        notes = _take_str(item, "notes", prefix, errors, required=False)
        if item_name and benefit is not None and exposure is not None:
            try:
                checklist.append(ChecklistIncrement(item_name, benefit, exposure, notes))
            except ValueError as exc:
                errors.append((f"checklist[{i}]", str(exc)))

    guardrails: List[GuardrailTarget] = []
    for i, item in enumerate(doc.get("guardrails", []) or []):
        item = _expect_map(item, f"guardrails[{i}]", errors)
        prefix = f"guardrails[{i}]."
        metric = _take_str(item, "metric_id", prefix, errors)
        comparator = _take_str(item, "comparator", prefix, errors)
        threshold = _take_number(item, "threshold", prefix, errors)
        unit = _take_str(item, "unit", prefix, errors, required=False, default="fraction")
        if metric and comparator and threshold is not None:
            try:
                guardrails.append(GuardrailTarget(metric, comparator, threshold, unit))
            except ValueError as exc:
                errors.append((f"guardrails[{i}]", str(exc)))

    provenance_doc = doc.get("provenance", {}) or {}
    provenance: Dict[str, str] = {}
    if not isinstance(provenance_doc, Mapping):
        errors.append(("provenance", "expected a mapping"))
    else:
        for key, value in provenance_doc.items():
            provenance[str(key)] = str(value)
    for pillar, label in pillar_provenance.items():
        provenance.setdefault(f"pillars.{pillar.value}", label)

    model = None
    if not errors and len(pillars) == len(PILLARS):
        raw_total = math.fsum(p.weight for p in pillars.values())
        if abs(raw_total - 1.0) > EQ_TOL:
            provenance["weights"] = f"normalized from raw sum {raw_total!r}"
        try:
            model = EconomyModel(
                pillars=pillars,
                complementarity=theta,
                openness=OpennessParams(
                    benefit_scale=openness_values["g"],
                    benefit_curvature=openness_values["k"],
                    exposure_slope=openness_values["p"],
                    risk_sensitivity=openness_values["lambda"],
                    sovereignty_weight=openness_values["alpha"],
                ),
                budget=budget,
            )
        except ValueError as exc:
            errors.append(("$", str(exc)))

    if errors or model is None or mu_mode is None:
        raise ScenarioValidationError(errors or [("$", "invalid document")])

    return Scenario(
        id=scenario_id,
        name=name,
        description=description,
        model=model,
        mu_mode=mu_mode,
        checklist=tuple(checklist),
        guardrails=tuple(guardrails),
        provenance=provenance,
        version=version,
    )


def scenario_to_document(s: Scenario) -> dict:
    """Plain-dict form of a scenario, matching the published file schema."""
    op = s.model.openness
    doc = {
        "id": s.id,
        "name": s.name,
        "description": s.description,
        "version": s.version,
        "pillars": {
            pillar.value: {
                "a": s.model.pillars[pillar].productivity,
                "w_raw": s.model.pillars[pillar].weight,
                "provenance": s.provenance.get(f"pillars.{pillar.value}", "user"),
            }
            for pillar in PILLARS
        },
        "theta": s.model.complementarity,
        "openness": {
            "g": op.benefit_scale,
            "k": op.benefit_curvature,
            "p": op.exposure_slope,
            "lambda": op.risk_sensitivity,
            "alpha": op.sovereignty_weight,
        },
        "budget": s.model.budget,
        "mu_mode": {"mode": s.mu_mode.mode}
        if s.mu_mode.mode == "endogenous"
        else {"mode": "exogenous", "mu": s.mu_mode.mu},
        "checklist": [
            {
                "name": item.name,
                "benefit_score": item.benefit_score,
                "exposure_score": item.exposure_score,
                "notes": item.notes,
            }
            for item in s.checklist
        ],
        "guardrails": [
            {
                "metric_id": g.metric_id,
                "comparator": g.comparator,
                "threshold": g.threshold,
                "unit": g.unit,
            }
            for g in s.guardrails
        ],
        "provenance": dict(s.provenance),
    }
    return doc


def load_scenario(text: str) -> Scenario:
    """Parse and validate a scenario document from YAML text."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioValidationError([("$", f"document does not parse: {exc}")]) from exc
    if doc is None:
        raise ScenarioValidationError([("$", "document is empty")])
    return document_to_scenario(doc)


def serialize_scenario(s: Scenario) -> str:
    """Render a scenario to YAML; load_scenario inverts this exactly."""
    return yaml.safe_dump(scenario_to_document(s), sort_keys=False, width=100)


# --- built-in archetypes ----------------------------------------------

def _india_scenario(mu: float, suffix: str) -> Scenario:
    pillars = {
        PillarId.DATA: PillarParams(productivity=12.0, weight=0.30),
        PillarId.COMPUTE: PillarParams(productivity=10.0, weight=0.25),
        PillarId.MODEL: PillarParams(productivity=4.0, weight=0.25),
        PillarId.NORMS: PillarParams(productivity=6.0, weight=0.20),
    }
    model = EconomyModel(
        pillars=pillars,
        complementarity=0.8,
        openness=OpennessParams(
            benefit_scale=1.0,
            benefit_curvature=4.0,
            exposure_slope=0.3,
            risk_sensitivity=1.0,
            sovereignty_weight=0.7,
        ),
        budget=1.0,
    )
    return Scenario(
        id=f"india-mcpf-{suffix}",
        name=f"India (MCPF {mu})",
        description=(
            "Tight-fiscal archetype: strong data and compute footholds, weaker "
            "model autonomy, spending gated by the marginal cost of public funds."
        ),
        model=model,
        mu_mode=MuMode(mode="exogenous", mu=mu),
        checklist=(
            ChecklistIncrement("research-partnerships", 4.0, 2.0, "joint labs and exchanges"),
            ChecklistIncrement("open-source-participation", 4.0, 1.0, "upstream contributions"),
            ChecklistIncrement(
                "foreign-cloud-inference-for-sensitive-services", 2.0, 4.0, "prefer on-shore inference"
            ),
            ChecklistIncrement("chip-imports-with-exit-clauses", 5.0, 3.0, "staged access, escrowed terms"),
        ),
        guardrails=(
            GuardrailTarget("gpu_utilization", ">", 0.75, "fraction"),
            GuardrailTarget("indic_dataset_hours_share", ">", 0.40, "fraction"),
        ),
        provenance={
            "openness.alpha": "paper",
            "mu_mode.mu": "paper",
            "guardrails.gpu_utilization.threshold": "paper",
            "guardrails.indic_dataset_hours_share.threshold": "paper",
            "theta": "illustrative",
            "budget": "illustrative",
            "openness.g": "illustrative",
            "openness.k": "illustrative",
            "openness.p": "illustrative",
            "openness.lambda": "illustrative",
            "checklist": "illustrative",
            "pillars.data": "illustrative",
            "pillars.compute": "illustrative",
            "pillars.model": "illustrative",
            "pillars.norms": "illustrative",
        },
        version=1,
    )


def _gulf_scenario() -> Scenario:
    pillars = {
        PillarId.DATA: PillarParams(productivity=8.0, weight=0.25),
        PillarId.COMPUTE: PillarParams(productivity=14.0, weight=0.30),
        PillarId.MODEL: PillarParams(productivity=6.0, weight=0.25),
        PillarId.NORMS: PillarParams(productivity=7.0, weight=0.20),
    }
    model = EconomyModel(
        pillars=pillars,
        complementarity=1.2,
        openness=OpennessParams(
            benefit_scale=1.2,
            benefit_curvature=4.0,
            exposure_slope=0.25,
            risk_sensitivity=0.8,
            sovereignty_weight=0.85,
        ),
        budget=2.0,
    )
    return Scenario(
        id="gulf-state-led",
        name="Gulf (state-led)",
        description=(
            "State-led archetype: high weight on sovereignty, cheap public funds, "
            "strong data-compute complementarity, openness kept interior with guardrails."
        ),
        model=model,
        mu_mode=MuMode(mode="exogenous", mu=1.1),
        checklist=(
            ChecklistIncrement(
                "strategic-cloud-deal-with-assurance-agreement", 5.0, 2.0, "residency and exit terms in contract"
            ),
            ChecklistIncrement("global-model-catalog-access", 4.0, 2.0, "curated catalogs, local inference"),
            ChecklistIncrement("cross-border-telemetry-sharing", 2.0, 3.0, "lock-in and compliance risk"),
            ChecklistIncrement("frontier-partnership-with-exit-clauses", 4.0, 4.0, "tie case: approve at margin"),
        ),
        guardrails=(
            GuardrailTarget("sovereign_gpu_utilization", ">", 0.75, "fraction"),
            GuardrailTarget("arabic_tied_hours_share", ">=", 0.40, "fraction"),
            GuardrailTarget("verifiable_dataset_share", ">", 0.70, "fraction"),
            GuardrailTarget("low_carbon_compute_share", ">=", 0.50, "fraction"),
            GuardrailTarget("high_risk_audit_coverage", ">=", 0.80, "fraction"),
        ),
        provenance={
            "openness.alpha": "illustrative: ordered above the tight-fiscal archetype",
            "mu_mode.mu": "illustrative: ordered below the tight-fiscal archetype",
            "theta": "illustrative: ordered above the tight-fiscal archetype",
            "guardrails.sovereign_gpu_utilization.threshold": "paper",
            "guardrails.arabic_tied_hours_share.threshold": "paper",
            "guardrails.verifiable_dataset_share.threshold": "paper",
            "guardrails.low_carbon_compute_share.threshold": "paper",
            "guardrails.high_risk_audit_coverage.threshold": "paper",
            "budget": "illustrative",
            "openness.g": "illustrative",
            "openness.k": "illustrative",
            "openness.p": "illustrative",
            "openness.lambda": "illustrative",
            "checklist": "illustrative",
            "pillars.data": "illustrative",
            "pillars.compute": "illustrative",
            "pillars.model": "illustrative",
            "pillars.norms": "illustrative",
        },
        version=1,
    )


def builtin_scenarios() -> Tuple[Scenario, ...]:
    """The built-in archetypes: two MCPF variants of the tight-fiscal case
    plus the state-led case with the stronger-complementarity profile."""
    return (
        _india_scenario(1.54, "low"),
        _india_scenario(2.17, "high"),
        _gulf_scenario(),
    )


# --- evaluation --------------------------------------------------------

def evaluate_checklist(checklist: Sequence[ChecklistIncrement]) -> List[ChecklistDecision]:
    """Approve each increment iff its benefit meets or exceeds its exposure.

    Ties approve; the margin is reported so an operator can impose a
    stricter local policy if wanted.
    """
    return [
        ChecklistDecision(
            name=item.name,
            approved=item.benefit_score >= item.exposure_score,
            margin=item.benefit_score - item.exposure_score,
        )
        for item in checklist
    ]


def evaluate_guardrails(
    targets: Sequence[GuardrailTarget], observations: Sequence[MetricObservation]
) -> List[GuardrailResult]:
    """Check each target against the latest matching observation.

    Periods compare lexicographically (the YYYY-Qn convention sorts
    correctly); a target with no matching observation reports no_data
    rather than silently passing.
    """
    results = []
    for target in targets:
        matching = [o for o in observations if o.metric_id == target.metric_id]
        if not matching:
            results.append(
                GuardrailResult(
                    metric_id=target.metric_id,
                    comparator=target.comparator,
                    threshold=target.threshold,
                    unit=target.unit,
                    observed=None,
                    period=None,
                    status="no_data",
                )
            )
            continue
        latest = max(enumerate(matching), key=lambda pair: (pair[1].period, pair[0]))[1]
        value = latest.value
        passed = {
            ">": value > target.threshold,
            ">=": value >= target.threshold,
            "<": value < target.threshold,
            "<=": value <= target.threshold,
        }[target.comparator]
        results.append(
            GuardrailResult(
                metric_id=target.metric_id,
                comparator=target.comparator,
                threshold=target.threshold,
                unit=target.unit,
                observed=value,
                period=latest.period,
                status="pass" if passed else "fail",
            )
        )
    return results


def marginal_returns_dashboard(
    scenario: Scenario,
    observations: Sequence[MetricObservation],
    opts: SolveOptions | None = None,
    period: str = "",
) -> DashboardReport:
    """Build the quarterly marginal-returns dashboard for a scenario.

    Endogenous mode solves the planner's problem and reports its
    multiplier; exogenous mode gates each pillar against the supplied
    multiplier. Verdicts are recomputed from the printed marginal return
    and bar so the report is internally consistent by construction.
    """
    opts = opts or SolveOptions()
    checklist_decisions = tuple(evaluate_checklist(scenario.checklist))
    guardrail_results = tuple(evaluate_guardrails(scenario.guardrails, observations))

    model = scenario.model
    alpha = model.openness.sovereignty_weight
    try:
        if scenario.mu_mode.mode == "exogenous":
            gate = gate_mode_allocation(model, scenario.mu_mode.mu, opts)
            alloc = gate.allocation
            bar = gate.bar
            o_star, at_bound = optimal_openness(model.openness)
            breakdown = welfare(model, alloc, o_star)
        else:
            solution = solve_joint(model, opts)
            alloc = solution.allocation
            bar = solution.multiplier / alpha if (solution.multiplier > 0.0 and alpha > 0.0) else 0.0
            o_star, at_bound = solution.openness, solution.flags.openness_at_bound
            breakdown = solution.welfare
    except (ValueError, RuntimeError) as exc:
        raise DashboardSolverFailure(str(exc), checklist_decisions, guardrail_results) from exc

    caps = capacities(model, alloc).by_pillar()
    returns = marginal_returns(model, alloc).per_pillar
    # Funded pillars sit exactly on the bar at the optimum, so the raw
    # float comparison is a coin flip there; compare at report precision,
    # which is what makes the verdict recomputable from the printed row.
    per_pillar = {
        p: PillarReadout(
            marginal_return=returns[p],
            bar=bar,
            verdict="fund" if as_printed(returns[p]) >= as_printed(bar) else "defer",
            allocation=alloc.amounts[p],
            capacity=caps[p],
        )
        for p in PILLARS
    }
    op = model.openness
    openness_block = OpennessReadout(
        o=o_star,
        at_bound=at_bound,
        benefit=breakdown.benefit,
        exposure=op.risk_sensitivity * breakdown.exposure,
    )
    return DashboardReport(
        period=period,
        per_pillar=per_pillar,
        openness=openness_block,
        checklist_decisions=checklist_decisions,
        guardrail_results=guardrail_results,
        welfare=breakdown,
    )


# --- sweeps and comparison ----------------------------------------------

def _read_parameter(model: EconomyModel, path: str) -> float:
    op = model.openness
    scalars = {
        "alpha": op.sovereignty_weight,
        "lambda": op.risk_sensitivity,
        "g": op.benefit_scale,
        "k": op.benefit_curvature,
        "p": op.exposure_slope,
        "theta": model.complementarity,
        "budget": model.budget,
    }
    if path in scalars:
        return scalars[path]
    kind, _, pillar_name = path.partition(".")
    pillar = next((p for p in PILLARS if p.value == pillar_name), None)
    if pillar is None or kind not in ("a", "w_raw"):
        raise ValueError(f"unknown parameter path {path!r}")
    params = model.pillars[pillar]
    return params.productivity if kind == "a" else params.weight


def _apply_parameter(model: EconomyModel, path: str, value: float) -> EconomyModel:
    op = model.openness
    if path == "alpha":
        return model.replace(openness=replace(op, sovereignty_weight=value))
    if path == "lambda":
        return model.replace(openness=replace(op, risk_sensitivity=value))
    if path == "g":
        return model.replace(openness=replace(op, benefit_scale=value))
    if path == "k":
        return model.replace(openness=replace(op, benefit_curvature=value))
    if path == "p":
        return model.replace(openness=replace(op, exposure_slope=value))
    if path == "theta":
        return model.replace(complementarity=value)
    if path == "budget":
        return model.replace(budget=value)
    kind, _, pillar_name = path.partition(".")
    pillar = next((p for p in PILLARS if p.value == pillar_name), None)
    if pillar is None or kind not in ("a", "w_raw"):
        raise ValueError(f"unknown parameter path {path!r}")
    params = model.pillars[pillar]
    updated = (
        PillarParams(productivity=value, weight=params.weight)
        if kind == "a"
        else PillarParams(productivity=params.productivity, weight=value)
    )
    pillars = dict(model.pillars)
    pillars[pillar] = updated
    return model.replace(pillars=pillars)


def sensitivity(
    scenario: Scenario,
    parameter: str,
    values: Sequence[float],
    opts: SolveOptions | None = None,
) -> SensitivityTable:
    """Re-solve the planner's problem across a parameter sweep.

    Each row records the solved allocation, openness, multiplier,
    sovereignty index, and welfare; rows where the modified model is
    invalid or the solver fails carry the error instead and the sweep
    continues. The multiplier mode is ignored: sweeps always solve.
    """
    if parameter not in SWEEPABLE_PARAMETERS:
        raise ValueError(f"parameter must be one of {SWEEPABLE_PARAMETERS}, got {parameter!r}")
    opts = opts or SolveOptions()
    rows: List[SweepRow] = []
    for value in values:
        try:
            model = _apply_parameter(scenario.model, parameter, value)
            solution = solve_joint(model, opts)
        except (ValueError, RuntimeError) as exc:
            rows.append(
                SweepRow(
                    value=value,
                    allocation=None,
                    openness=None,
                    multiplier=None,
                    sovereignty=None,
                    welfare=None,
                    error=str(exc),
                )
            )
            continue
        rows.append(
            SweepRow(
                value=value,
                allocation=solution.allocation,
                openness=solution.openness,
                multiplier=solution.multiplier,
                sovereignty=solution.welfare.sovereignty,
                welfare=solution.welfare.welfare,
            )
        )
    return SensitivityTable(parameter=parameter, rows=tuple(rows))


def compare_scenarios(
    a: Scenario, b: Scenario, opts: SolveOptions | None = None
) -> CompareReport:
    """Side-by-side solutions plus a ranked one-at-a-time driver analysis.

    Each differing model parameter is substituted alone from b into a and
    the welfare shift recorded; the ranking says which differences drive
    the welfare gap. Both sides are solved endogenously.
    """
    opts = opts or SolveOptions()
    sol_a = solve_joint(a.model, opts)
    sol_b = solve_joint(b.model, opts)

    deltas: Dict[str, Tuple[float, float]] = {}
    for path in SWEEPABLE_PARAMETERS:
        va = _read_parameter(a.model, path)
        vb = _read_parameter(b.model, path)
        if va != vb:
            deltas[path] = (va, vb)
    if a.mu_mode.mode == "exogenous" and b.mu_mode.mode == "exogenous" and a.mu_mode.mu != b.mu_mode.mu:
        deltas["mu"] = (a.mu_mode.mu, b.mu_mode.mu)

    drivers: List[DriverImpact] = []
    for path, (va, vb) in deltas.items():
        if path == "mu":
            continue  # informational only; solves here are endogenous
        try:
            modified = _apply_parameter(a.model, path, vb)
            w_modified = solve_joint(modified, opts).welfare.welfare
        except (ValueError, RuntimeError):
            continue
        drivers.append(
            DriverImpact(
                parameter=path,
                value_a=va,
                value_b=vb,
                delta_welfare=w_modified - sol_a.welfare.welfare,
            )
        )
    drivers.sort(key=lambda d: (-abs(d.delta_welfare), d.parameter))

    return CompareReport(
        id_a=a.id,
        id_b=b.id,
        solution_a=sol_a,
        solution_b=sol_b,
        parameter_deltas=deltas,
        drivers=tuple(drivers),
        welfare_gap=sol_b.welfare.welfare - sol_a.welfare.welfare,
    )


# --- tabular exports ----------------------------------------------------

DASHBOARD_CSV_HEADER = "period,pillar,allocation,capacity,marginal_return,bar,verdict"
SENSITIVITY_CSV_HEADER = (
    "value,x_data,x_compute,x_model,x_norms,openness,multiplier,sovereignty,welfare,error"
)


def dashboard_to_delimited(report: DashboardReport) -> str:
    """One CSV row per pillar under a fixed documented header."""
    lines = [DASHBOARD_CSV_HEADER]
    for p in PILLARS:
        row = report.per_pillar[p]
        lines.append(
            f"{report.period},{p.value},{row.allocation!r},{row.capacity!r},"
            f"{row.marginal_return!r},{row.bar!r},{row.verdict}"
        )
    return "\n".join(lines) + "\n"


def sensitivity_to_delimited(table: SensitivityTable) -> str:
    """One CSV row per sweep point under a fixed documented header."""
    lines = [SENSITIVITY_CSV_HEADER]
    for row in table.rows:
        if row.error is not None:
            message = row.error.replace(",", ";")
            lines.append(f"{row.value!r},,,,,,,,,{message}")
            continue
        x = row.allocation.amounts
        lines.append(
            f"{row.value!r},{x[PillarId.DATA]!r},{x[PillarId.COMPUTE]!r},"
            f"{x[PillarId.MODEL]!r},{x[PillarId.NORMS]!r},{row.openness!r},"
            f"{row.multiplier!r},{row.sovereignty!r},{row.welfare!r},"
        )
    return "\n".join(lines) + "\n"


def dashboard_to_table(report: DashboardReport) -> str:
    """Fixed-width terminal rendering of a dashboard report."""
    lines = [f"Dashboard {report.period}".rstrip()]
    lines.append(f"{'pillar':<10}{'spend':>12}{'capacity':>12}{'marginal':>12}{'bar':>12}  verdict")
    for p in PILLARS:
        row = report.per_pillar[p]
        lines.append(
            f"{p.value:<10}{row.allocation:>12.6f}{row.capacity:>12.6f}"
            f"{row.marginal_return:>12.6f}{row.bar:>12.6f}  {row.verdict}"
        )
    o = report.openness
    bound = " (at bound)" if o.at_bound else ""
    lines.append(f"openness  O*={o.o:.6f}{bound}  benefit={o.benefit:.6f}  exposure={o.exposure:.6f}")
    lines.append(
        f"welfare   S={report.welfare.sovereignty:.6f}  W={report.welfare.welfare:.6f}"
    )
    if report.checklist_decisions:
        lines.append("checklist:")
        for d in report.checklist_decisions:
            mark = "approve" if d.approved else "reject"
            lines.append(f"  {mark:<8} {d.name} (margin {d.margin:+.3f})")
    if report.guardrail_results:
        lines.append("guardrails:")
        for g in report.guardrail_results:
            shown = "-" if g.observed is None else f"{g.observed:g}"
            lines.append(
                f"  {g.status:<8} {g.metric_id} {g.comparator} {g.threshold:g} (observed {shown})"
            )
    return "\n".join(lines) + "\n"
