"""Pure evaluation of the four-pillar sovereignty model.

Everything here is a side-effect-free function over immutable values:
spending maps to normalized capacities through saturating exponentials,
capacities aggregate into a weighted sovereignty index, and openness
contributes a log benefit minus a linear exposure cost. No solving and
no I/O happen in this module.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, Mapping

# Centralized tolerances: equality checks on domain values use EQ_TOL,
# gradient verification uses GRAD_TOL. Reports and JSON emit numbers at
# REPORT_DIGITS significant digits; comparisons meant to be recomputable
# from printed output round through as_printed first.
EQ_TOL = 1e-9
GRAD_TOL = 1e-6
REPORT_DIGITS = 12


def as_printed(value: float) -> float:
    """A float as it will appear in reports: 12 significant digits."""
    if value == 0.0:
        return 0.0
    return float(f"{value:.{REPORT_DIGITS}g}")


@enum.unique
class PillarId(enum.Enum):
    """The four investment pillars, in fixed reporting order."""

    DATA = "data"
    COMPUTE = "compute"
    MODEL = "model"
    NORMS = "norms"

    def __lt__(self, other: "PillarId") -> bool:
        if not isinstance(other, PillarId):
            return NotImplemented
        return PILLARS.index(self) < PILLARS.index(other)

    def __str__(self) -> str:
        return self.value


PILLARS = (PillarId.DATA, PillarId.COMPUTE, PillarId.MODEL, PillarId.NORMS)


@dataclass(frozen=True)
class PillarParams:
    """Per-pillar absorptive productivity and raw policy weight.

    ``productivity`` is in 1/budget-unit: higher means each unit of spend
    buys more normalized capacity. ``weight`` is the raw (unnormalized)
    policy score; the owning model normalizes across pillars.
    """

    productivity: float
    weight: float

    def __post_init__(self) -> None:
        if not (self.productivity > 0.0) or not math.isfinite(self.productivity):
            raise ValueError(f"productivity must be a positive finite real, got {self.productivity}")
        if self.weight < 0.0 or not math.isfinite(self.weight):
            raise ValueError(f"weight must be a non-negative finite real, got {self.weight}")


@dataclass(frozen=True)
class OpennessParams:
    """Parameters of the openness benefit/exposure trade-off.

    Benefit is ``benefit_scale * ln(1 + benefit_curvature * O)``; exposure
    cost is ``exposure_slope * O`` scaled by ``risk_sensitivity``.
    ``sovereignty_weight`` is the welfare weight on the sovereignty index
    versus openness benefits (alpha in [0, 1]).
    """

    benefit_scale: float
    benefit_curvature: float
    exposure_slope: float
    risk_sensitivity: float
    sovereignty_weight: float

    def __post_init__(self) -> None:
        if not (self.benefit_scale > 0.0) or not math.isfinite(self.benefit_scale):
            raise ValueError(f"benefit_scale must be positive, got {self.benefit_scale}")
        if not (self.benefit_curvature > 0.0) or not math.isfinite(self.benefit_curvature):
            raise ValueError(f"benefit_curvature must be positive, got {self.benefit_curvature}")
        if self.exposure_slope < 0.0 or not math.isfinite(self.exposure_slope):
            raise ValueError(f"exposure_slope must be non-negative, got {self.exposure_slope}")
        if self.risk_sensitivity < 0.0 or not math.isfinite(self.risk_sensitivity):
            raise ValueError(f"risk_sensitivity must be non-negative, got {self.risk_sensitivity}")
        if not (0.0 <= self.sovereignty_weight <= 1.0):
            raise ValueError(f"sovereignty_weight must lie in [0, 1], got {self.sovereignty_weight}")


@dataclass(frozen=True)
class EconomyModel:
    """All parameters of one economy: pillars, complementarity, openness, budget.

    Raw pillar weights are kept as given (for audit); ``weights`` holds the
    normalized values that every evaluation uses.
    """

    pillars: Mapping[PillarId, PillarParams]
    complementarity: float
    openness: OpennessParams
    budget: float
    weights: Mapping[PillarId, float] = field(init=False)

    def __post_init__(self) -> None:
        if set(self.pillars.keys()) != set(PILLARS):
            raise ValueError("pillars must map exactly the four pillar ids")
        if self.complementarity < 0.0 or not math.isfinite(self.complementarity):
            raise ValueError(f"complementarity must be non-negative, got {self.complementarity}")
        if not (self.budget > 0.0) or not math.isfinite(self.budget):
            raise ValueError(f"budget must be positive, got {self.budget}")
        raw = [self.pillars[p].weight for p in PILLARS]
        total = math.fsum(raw)
        if total <= 0.0:
            raise ValueError("at least one pillar weight must be positive")
        normalized = {p: self.pillars[p].weight / total for p in PILLARS}
        object.__setattr__(self, "pillars", dict((p, self.pillars[p]) for p in PILLARS))
        object.__setattr__(self, "weights", normalized)

    def replace(self, **changes) -> "EconomyModel":
        """Return a copy with the given top-level fields replaced."""
        kwargs = {
            "pillars": self.pillars,
            "complementarity": self.complementarity,
            "openness": self.openness,
            "budget": self.budget,
        }
        kwargs.update(changes)
        return EconomyModel(**kwargs)


@dataclass(frozen=True)
class Allocation:
    """Spending per pillar, in budget units. All entries non-negative."""

    amounts: Mapping[PillarId, float]

    def __post_init__(self) -> None:
        if set(self.amounts.keys()) != set(PILLARS):
            raise ValueError("allocation must cover exactly the four pillar ids")
        for p in PILLARS:
            x = self.amounts[p]
            if x < 0.0 or not math.isfinite(x):
                raise ValueError(f"allocation for {p} must be non-negative and finite, got {x}")
        object.__setattr__(self, "amounts", dict((p, self.amounts[p]) for p in PILLARS))

    @property
    def total(self) -> float:
        return math.fsum(self.amounts[p] for p in PILLARS)

    @staticmethod
    def zero() -> "Allocation":
        return Allocation({p: 0.0 for p in PILLARS})


@dataclass(frozen=True)
class CapacityVector:
    """Normalized capacities in [0, 1] per pillar.

    ``m_clipped`` is true when model autonomy hit its upper bound of 1, in
    which case extra model spend (and extra data/compute coupling) buys
    nothing at the margin.
    """

    data: float
    compute: float
    model: float
    norms: float
    m_clipped: bool

    def by_pillar(self) -> Dict[PillarId, float]:
        return {
            PillarId.DATA: self.data,
            PillarId.COMPUTE: self.compute,
            PillarId.MODEL: self.model,
            PillarId.NORMS: self.norms,
        }


@dataclass(frozen=True)
class MarginalReturns:
    """Analytic partials of the sovereignty index w.r.t. per-pillar spend."""

    per_pillar: Mapping[PillarId, float]
    m_clipped: bool


@dataclass(frozen=True)
class WelfareBreakdown:
    """Welfare and its components: sovereignty index, openness benefit, exposure."""

    sovereignty: float
    benefit: float
    exposure: float
    welfare: float


def capacity(productivity: float, spend: float) -> float:
    """Saturating capacity from spend: 1 - exp(-a*x), strictly in [0, 1)."""
    if not (productivity > 0.0) or not math.isfinite(productivity):
        raise ValueError(f"productivity must be positive, got {productivity}")
    if spend < 0.0 or not math.isfinite(spend):
        raise ValueError(f"spend must be non-negative, got {spend}")
    return -math.expm1(-productivity * spend)


def model_autonomy(
    spend: float,
    data_capacity: float,
    compute_capacity: float,
    productivity: float,
    complementarity: float,
) -> tuple[float, bool]:
    """Model-autonomy capacity with data-compute complementarity.

    Returns ``min(1, 1 - exp(-a*x) + theta*D*C)`` and whether the upper
    bound clipped the raw value.
    """
    if complementarity < 0.0 or not math.isfinite(complementarity):
        raise ValueError(f"complementarity must be non-negative, got {complementarity}")
    for name, value in (("data_capacity", data_capacity), ("compute_capacity", compute_capacity)):
        if not (0.0 <= value <= 1.0):
            raise ValueError(f"{name} must lie in [0, 1], got {value}")
    raw = capacity(productivity, spend) + complementarity * data_capacity * compute_capacity
    if raw >= 1.0:
        return 1.0, True
    return raw, False


def capacities(model: EconomyModel, alloc: Allocation) -> CapacityVector:
    """Evaluate all four capacities for an allocation."""
    d = capacity(model.pillars[PillarId.DATA].productivity, alloc.amounts[PillarId.DATA])
    c = capacity(model.pillars[PillarId.COMPUTE].productivity, alloc.amounts[PillarId.COMPUTE])
    m, clipped = model_autonomy(
        alloc.amounts[PillarId.MODEL],
        d,
        c,
        model.pillars[PillarId.MODEL].productivity,
        model.complementarity,
    )
    n = capacity(model.pillars[PillarId.NORMS].productivity, alloc.amounts[PillarId.NORMS])
    return CapacityVector(data=d, compute=c, model=m, norms=n, m_clipped=clipped)


def sovereignty_index(model: EconomyModel, caps: CapacityVector) -> float:
    """Weighted sum of capacities; lands in [0, 1] for normalized weights."""
    by_pillar = caps.by_pillar()
    return math.fsum(model.weights[p] * by_pillar[p] for p in PILLARS)


def openness_benefit(benefit_scale: float, benefit_curvature: float, openness: float) -> float:
    """Diminishing-returns benefit of openness: g * ln(1 + k*O)."""
    if not (benefit_scale > 0.0):
        raise ValueError(f"benefit_scale must be positive, got {benefit_scale}")
    if not (benefit_curvature > 0.0):
        raise ValueError(f"benefit_curvature must be positive, got {benefit_curvature}")
    if not (0.0 <= openness <= 1.0):
        raise ValueError(f"openness must lie in [0, 1], got {openness}")
    return benefit_scale * math.log1p(benefit_curvature * openness)


def exposure_cost(exposure_slope: float, openness: float) -> float:
    """Linear exposure cost of openness: p * O."""
    if exposure_slope < 0.0:
        raise ValueError(f"exposure_slope must be non-negative, got {exposure_slope}")
    if not (0.0 <= openness <= 1.0):
        raise ValueError(f"openness must lie in [0, 1], got {openness}")
    return exposure_slope * openness


def welfare(model: EconomyModel, alloc: Allocation, openness: float) -> WelfareBreakdown:
    """Total welfare of an (allocation, openness) pair.

    W = alpha*S + (1-alpha)*G - lambda*P. Feasibility of the allocation
    against the budget is deliberately not checked here; that is the
    solver's concern.
    """
    op = model.openness
    s = sovereignty_index(model, capacities(model, alloc))
    g = openness_benefit(op.benefit_scale, op.benefit_curvature, openness)
    p = exposure_cost(op.exposure_slope, openness)
    w = op.sovereignty_weight * s + (1.0 - op.sovereignty_weight) * g - op.risk_sensitivity * p
    return WelfareBreakdown(sovereignty=s, benefit=g, exposure=p, welfare=w)


def marginal_returns(model: EconomyModel, alloc: Allocation) -> MarginalReturns:
    """Analytic per-pillar marginal sovereignty returns at an allocation.

    While model autonomy is interior, data and compute earn a coupling
    premium through the complementarity term. Once the autonomy bound
    clips, the model pillar's marginal return is zero and the coupling
    premium disappears (right-derivative convention at the kink: spending
    that cannot raise autonomy earns no credit).
    """
    caps = capacities(model, alloc)
    theta = model.complementarity
    w = model.weights
    out: Dict[PillarId, float] = {}
    for p in PILLARS:
        a = model.pillars[p].productivity
        direct = w[p] * a * math.exp(-a * alloc.amounts[p])
        if caps.m_clipped:
            if p is PillarId.MODEL:
                out[p] = 0.0
            else:
                out[p] = direct
            continue
        if p is PillarId.DATA:
            out[p] = direct + w[PillarId.MODEL] * theta * caps.compute * a * math.exp(-a * alloc.amounts[p])
        elif p is PillarId.COMPUTE:
            out[p] = direct + w[PillarId.MODEL] * theta * caps.data * a * math.exp(-a * alloc.amounts[p])
        else:
            out[p] = direct
    return MarginalReturns(per_pillar=out, m_clipped=caps.m_clipped)


def funding_bar(multiplier: float, sovereignty_weight: float) -> float:
    """The threshold mu/alpha a marginal return must clear to justify spend."""
    if not (multiplier > 0.0):
        raise ValueError(f"multiplier must be positive, got {multiplier}")
    if not (sovereignty_weight > 0.0):
        raise ValueError("funding bar is undefined when the sovereignty weight is zero")
    return multiplier / sovereignty_weight


def clears_bar(marginal_return: float, multiplier: float, sovereignty_weight: float) -> bool:
    """True iff a marginal return meets or exceeds the mu/alpha bar."""
    if marginal_return < 0.0:
        raise ValueError(f"marginal_return must be non-negative, got {marginal_return}")
    return marginal_return >= funding_bar(multiplier, sovereignty_weight)
