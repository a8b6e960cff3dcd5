"""Shared fixtures: random instance generation and independent oracles.

The oracles here deliberately avoid the package's solver internals: the
decoupled water-filling check inverts the first-order conditions with
scipy's root finder, and gradients are checked by central differences of
the full capacity-index composition.
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.optimize import brentq

from sovplan.core import (
    PILLARS,
    Allocation,
    EconomyModel,
    OpennessParams,
    PillarParams,
    capacities,
    sovereignty_index,
)


def log_uniform(rng: np.random.Generator, lo: float, hi: float) -> float:
    return float(math.exp(rng.uniform(math.log(lo), math.log(hi))))


def random_model(
    rng: np.random.Generator,
    theta_range=(0.0, 0.0),
    alpha_range=(0.3, 0.95),
    budget_range=(1.0, 8.0),
) -> EconomyModel:
    pillars = {
        p: PillarParams(
            productivity=log_uniform(rng, 0.3, 3.0), weight=float(rng.uniform(0.1, 1.0))
        )
        for p in PILLARS
    }
    theta = float(rng.uniform(*theta_range)) if theta_range[1] > 0 else 0.0
    openness = OpennessParams(
        benefit_scale=log_uniform(rng, 0.5, 2.0),
        benefit_curvature=log_uniform(rng, 1.0, 8.0),
        exposure_slope=log_uniform(rng, 0.05, 1.0),
        risk_sensitivity=log_uniform(rng, 0.2, 2.0),
        sovereignty_weight=float(rng.uniform(*alpha_range)),
    )
    return EconomyModel(
        pillars=pillars,
        complementarity=theta,
        openness=openness,
        budget=log_uniform(rng, *budget_range),
    )


def waterfill_reference(model: EconomyModel) -> tuple[dict, float]:
    """Decoupled (theta = 0) allocation by closed-form inversion.

    Finds the budget-clearing multiplier with brentq and inverts each
    pillar's condition x = max(0, ln(alpha*w*a/mu)/a). Independent of the
    package solver.
    """
    alpha = model.openness.sovereignty_weight
    slopes = {
        p: (alpha * model.weights[p] * model.pillars[p].productivity, model.pillars[p].productivity)
        for p in PILLARS
    }

    def spend(mu: float) -> float:
        total = 0.0
        for c, a in slopes.values():
            if c > mu:
                total += math.log(c / mu) / a
        return total

    hi = max(c for c, _ in slopes.values())
    mu = brentq(lambda m: spend(m) - model.budget, hi * 1e-18, hi * (1 - 1e-14), xtol=1e-300, rtol=8.9e-16)
    x = {
        p: max(0.0, math.log(c / mu) / a) if c > mu else 0.0
        for p, (c, a) in slopes.items()
    }
    return x, mu


def fd_marginals(model: EconomyModel, amounts: dict, step: float = 1e-6) -> dict:
    """Central finite differences of the sovereignty index in each spend."""
    out = {}
    for p in PILLARS:
        up = dict(amounts)
        dn = dict(amounts)
        up[p] = amounts[p] + step
        dn[p] = amounts[p] - step
        s_up = sovereignty_index(model, capacities(model, Allocation(up)))
        s_dn = sovereignty_index(model, capacities(model, Allocation(dn)))
        out[p] = (s_up - s_dn) / (2.0 * step)
    return out


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
