"""Budget allocation and openness solvers.

The allocation problem (maximize the weighted sovereignty index subject
to the budget) is solved by bisection on the budget multiplier: at each
candidate multiplier the first-order conditions invert in closed form
for the model and norms pillars, while data and compute iterate a damped
fixed point because their conditions are coupled through the
complementarity term. The product term makes the objective non-concave
for large complementarity, so the candidate is polished with multistart
projected-gradient ascent on the budget simplex, and optionally checked
against an exhaustive grid oracle.

Openness has a closed-form clamped optimum and is additively separable
from the allocation, so the joint solve composes the two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Sequence, Tuple

import numpy as np

from .core import (
    PILLARS,
    Allocation,
    CapacityVector,
    EconomyModel,
    OpennessParams,
    PillarId,
    WelfareBreakdown,
    capacities,
    capacity,
    marginal_returns,
    welfare,
)

# A solution is only reported as globally verified when the grid oracle
# cannot beat it by more than this welfare margin.
ORACLE_MARGIN = 1e-3
# Largest product-grid size the oracle accepts, and the largest size the
# solver will run opportunistically for its globality check.
ORACLE_MAX_EVALS = 100_000_000
ORACLE_VERIFY_EVALS = 10_000_000

_BISECT_STEPS = 200
_FIXED_POINT_DAMPING = 0.5
_FIXED_POINT_TOL = 1e-13


class SolverFailure(RuntimeError):
    """Raised when iteration budgets are exhausted without a usable iterate."""

    def __init__(self, message: str, best_allocation=None, residual: float | None = None):
        super().__init__(message)
        self.best_allocation = best_allocation
        self.residual = residual


@dataclass(frozen=True)
class SolveOptions:
    """Numerical knobs shared by all solver entry points."""

    tolerance: float = 1e-8
    max_iterations: int = 10_000
    multistart_count: int = 16
    random_seed: int = 0
    oracle_resolution: int = 60

    def __post_init__(self) -> None:
        if not (0.0 < self.tolerance < 1.0):
            raise ValueError(f"tolerance must lie in (0, 1), got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")
        if self.multistart_count < 1:
            raise ValueError("multistart_count must be positive")
        if not (0 <= self.random_seed < 2**64):
            raise ValueError("random_seed must fit in an unsigned 64-bit integer")
        if self.oracle_resolution < 2:
            raise ValueError("oracle_resolution must be at least 2")


@dataclass(frozen=True)
class KKTResiduals:
    """Stationarity, openness, and complementary-slackness residuals."""

    per_pillar: Mapping[PillarId, float]
    openness: float
    complementary_slackness: float


@dataclass(frozen=True)
class SolutionFlags:
    budget_binding: bool
    m_clipped: bool
    openness_at_bound: bool
    globality_verified: bool


@dataclass(frozen=True)
class PlannerSolution:
    """Solved allocation, openness, multiplier, and diagnostics."""

    allocation: Allocation
    openness: float
    multiplier: float
    capacities: CapacityVector
    welfare: WelfareBreakdown
    funded_set: frozenset[PillarId]
    kkt: KKTResiduals
    flags: SolutionFlags


@dataclass(frozen=True)
class OracleSolution:
    """Best grid point found by exhaustive evaluation."""

    allocation: Allocation
    openness: float
    welfare: WelfareBreakdown
    grid_resolution: int


@dataclass(frozen=True)
class GateResult:
    """Allocation implied by an exogenous multiplier instead of a budget."""

    allocation: Allocation
    implied_budget: float
    verdicts: Mapping[PillarId, str]
    bar: float
    all_deferred: bool


def optimal_openness(params: OpennessParams) -> Tuple[float, bool]:
    """Clamped openness optimum and whether a bound was hit.

    The interior solution equates the marginal openness benefit with the
    marginal exposure cost; zero exposure cost with any weight on
    openness pushes the optimum to full openness, while full weight on
    sovereignty pushes it to autarky.
    """
    alpha = params.sovereignty_weight
    cost_slope = params.risk_sensitivity * params.exposure_slope
    if cost_slope == 0.0:
        return (1.0, True) if alpha < 1.0 else (0.0, True)
    raw = (1.0 - alpha) * params.benefit_scale / cost_slope - 1.0 / params.benefit_curvature
    clamped = min(1.0, max(0.0, raw))
    return clamped, (raw <= 0.0 or raw >= 1.0)


def _sov_value(model: EconomyModel, x: Sequence[float]) -> float:
    caps = capacities(model, Allocation(dict(zip(PILLARS, x))))
    by_pillar = caps.by_pillar()
    return math.fsum(model.weights[p] * by_pillar[p] for p in PILLARS)


def _sov_grad(model: EconomyModel, x: Sequence[float]) -> Tuple[float, ...]:
    mr = marginal_returns(model, Allocation(dict(zip(PILLARS, x))))
    return tuple(mr.per_pillar[p] for p in PILLARS)


def _invert_at_multiplier(
    model: EconomyModel,
    mu: float,
    start_caps: Tuple[float, float] | None = None,
    max_iter: int = 400,
) -> Tuple[Tuple[float, float, float, float], bool, bool]:
    """Invert the per-pillar first-order conditions at a fixed multiplier.

    Returns the spending vector in pillar order, whether the autonomy
    clip binds there, and whether the coupled data/compute fixed point
    converged. Model spend is capped at the point where autonomy
    saturates; beyond it the marginal value is zero so no rational
    multiplier funds it.
    """
    alpha = model.openness.sovereignty_weight
    w = model.weights
    a = {p: model.pillars[p].productivity for p in PILLARS}
    theta = model.complementarity

    def invert(effective_weight: float, prod: float) -> float:
        arg = alpha * effective_weight * prod
        if arg <= mu:
            return 0.0
        return math.log(arg / mu) / prod

    x_n = invert(w[PillarId.NORMS], a[PillarId.NORMS])

    d_cap, c_cap = start_caps if start_caps is not None else (0.0, 0.0)
    coupled = theta > 0.0 and w[PillarId.MODEL] > 0.0
    converged = True
    x_d = x_c = x_m = 0.0
    clipped = False
    iterations = max_iter if coupled else 1
    for it in range(iterations):
        prod_dc = theta * d_cap * c_cap
        x_m_unc = invert(w[PillarId.MODEL], a[PillarId.MODEL])
        if prod_dc >= 1.0:
            x_m_cap = 0.0
        elif prod_dc <= 0.0:
            x_m_cap = math.inf
        else:
            x_m_cap = -math.log(prod_dc) / a[PillarId.MODEL]
        clipped = x_m_unc >= x_m_cap
        x_m = min(x_m_unc, x_m_cap)

        couple_d = 0.0 if clipped else w[PillarId.MODEL] * theta * c_cap
        couple_c = 0.0 if clipped else w[PillarId.MODEL] * theta * d_cap
        x_d = invert(w[PillarId.DATA] + couple_d, a[PillarId.DATA])
        x_c = invert(w[PillarId.COMPUTE] + couple_c, a[PillarId.COMPUTE])

        d_new = capacity(a[PillarId.DATA], x_d)
        c_new = capacity(a[PillarId.COMPUTE], x_c)
        delta = max(abs(d_new - d_cap), abs(c_new - c_cap))
        d_cap += _FIXED_POINT_DAMPING * (d_new - d_cap)
        c_cap += _FIXED_POINT_DAMPING * (c_new - c_cap)
        if delta < _FIXED_POINT_TOL:
            break
    else:
        converged = not coupled
    return (x_d, x_c, x_m, x_n), clipped, converged


def _multiplier_upper_bound(model: EconomyModel) -> float:
    alpha = model.openness.sovereignty_weight
    w = model.weights
    best = 0.0
    for p in PILLARS:
        slope = (w[p] + w[PillarId.MODEL] * model.complementarity) * model.pillars[p].productivity
        best = max(best, alpha * slope)
    return best


def _bisect_multiplier(
    model: EconomyModel,
    opts: SolveOptions,
    start_caps: Tuple[float, float] | None = None,
) -> Tuple[Tuple[float, ...], float]:
    """Find the multiplier whose inverted allocation exhausts the budget.

    The total spend implied by a multiplier decreases as the multiplier
    rises, from unbounded (near zero) to zero (above every pillar's slope
    at the origin), so bisection brackets the budget-clearing value. The
    returned allocation is taken from the feasible side of the bracket.
    """
    budget = model.budget
    hi = _multiplier_upper_bound(model)
    if hi <= 0.0:
        return (0.0, 0.0, 0.0, 0.0), 0.0
    lo = 0.0
    steps = min(_BISECT_STEPS, max(1, opts.max_iterations))
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        x, _, _ = _invert_at_multiplier(model, mid, start_caps)
        if math.fsum(x) > budget:
            lo = mid
        else:
            hi = mid
    x, _, _ = _invert_at_multiplier(model, hi, start_caps)
    return x, hi


def _project_budget_simplex(x: Sequence[float], budget: float) -> Tuple[float, ...]:
    """Euclidean projection onto {x >= 0, sum(x) <= budget}."""
    clipped = tuple(max(v, 0.0) for v in x)
    if math.fsum(clipped) <= budget:
        return clipped
    u = sorted(x, reverse=True)
    shift = 0.0
    cumulative = 0.0
    for i, ui in enumerate(u):
        cumulative += ui
        candidate = (cumulative - budget) / (i + 1)
        if ui - candidate > 0.0:
            shift = candidate
    return tuple(max(v - shift, 0.0) for v in x)


def _ascend(
    value: Callable[[Sequence[float]], float],
    grad: Callable[[Sequence[float]], Tuple[float, ...]],
    project: Callable[[Sequence[float]], Tuple[float, ...]],
    x0: Sequence[float],
    scale: float,
    max_iter: int,
) -> Tuple[Tuple[float, ...], float]:
    """Projected gradient ascent with backtracking line search."""
    x = project(x0)
    f = value(x)
    step = 0.5 * scale
    floor = 1e-15 * scale
    for _ in range(max_iter):
        g = grad(x)
        moved = False
        while step > floor:
            cand = project(tuple(xi + step * gi for xi, gi in zip(x, g)))
            fc = value(cand)
            if fc > f:
                x, f = cand, fc
                step *= 1.5
                moved = True
                break
            step *= 0.5
        if not moved:
            break
    return x, f


def _multistart_points(
    rng: np.random.Generator, count: int, budget: float
) -> List[Tuple[float, ...]]:
    draws = rng.dirichlet(np.ones(len(PILLARS)), size=count)
    return [tuple(float(v) * budget for v in row) for row in draws]


def _snap_small(x: Sequence[float], budget: float) -> Tuple[float, ...]:
    cutoff = 1e-12 * max(budget, 1.0)
    return tuple(0.0 if v < cutoff else v for v in x)


def _drain_clipped_model(model: EconomyModel, x: Sequence[float]) -> Tuple[float, ...] | None:
    """Move wasted model spend elsewhere when autonomy is clipped.

    Spending beyond the point where autonomy saturates buys nothing, so
    the excess goes to the pillar with the best marginal return. Returns
    None when there is nothing to drain.
    """
    alloc = Allocation(dict(zip(PILLARS, x)))
    caps = capacities(model, alloc)
    if not caps.m_clipped:
        return None
    prod_dc = model.complementarity * caps.data * caps.compute
    a_m = model.pillars[PillarId.MODEL].productivity
    needed = 0.0 if prod_dc >= 1.0 else -math.log(prod_dc) / a_m
    m_index = PILLARS.index(PillarId.MODEL)
    excess = x[m_index] - needed
    if excess <= 0.0:
        return None
    mr = marginal_returns(model, alloc).per_pillar
    target = max(
        (p for p in PILLARS if p is not PillarId.MODEL), key=lambda p: (mr[p], -PILLARS.index(p))
    )
    drained = list(x)
    drained[m_index] = needed
    drained[PILLARS.index(target)] += excess
    return tuple(drained)


def _grid_size(resolution: int) -> int:
    return math.comb(resolution + 4, 4) * (resolution + 1)


def solve_allocation(model: EconomyModel, opts: SolveOptions | None = None) -> PlannerSolution:
    """Solve the budget-constrained allocation problem.

    Openness is additively separable from the allocation, so its
    closed-form optimum is filled into the solution as well; the joint
    solve is exactly this function.
    """
    opts = opts or SolveOptions()
    alpha = model.openness.sovereignty_weight
    budget = model.budget

    def penalized_value(x: Sequence[float]) -> float:
        return alpha * _sov_value(model, x)

    def penalized_grad(x: Sequence[float]) -> Tuple[float, ...]:
        return tuple(alpha * g for g in _sov_grad(model, x))

    x_bisect, mu_bisect = _bisect_multiplier(model, opts)
    f_bisect = penalized_value(x_bisect)

    # The bisection point satisfies the first-order conditions exactly, so
    # a polished point only replaces it on a real welfare improvement.
    best_x: Tuple[float, ...] = x_bisect
    mu_clean: float | None = mu_bisect
    if model.complementarity > 0.0 and alpha > 0.0:
        rng = np.random.default_rng(opts.random_seed)
        starts: List[Tuple[float, ...]] = [x_bisect, tuple(budget / 4.0 for _ in PILLARS)]
        starts.extend(_multistart_points(rng, opts.multistart_count, budget))
        pga_iters = min(400, opts.max_iterations)
        project = lambda x: _project_budget_simplex(x, budget)
        pga_x, pga_f = None, f_bisect + opts.tolerance
        for x0 in starts:
            x_run, f_run = _ascend(
                penalized_value, penalized_grad, project, x0, budget, pga_iters
            )
            drained = _drain_clipped_model(model, x_run)
            if drained is not None:
                x_again, f_again = _ascend(
                    penalized_value, penalized_grad, project, drained, budget, pga_iters
                )
                if f_again > f_run:
                    x_run, f_run = x_again, f_again
            if f_run > pga_f:
                pga_x, pga_f = x_run, f_run
        if pga_x is not None:
            # A restart escaped the bisection basin; re-run the multiplier
            # search warm-started there to recover a clean stationary point.
            caps = capacities(model, Allocation(dict(zip(PILLARS, pga_x))))
            x_warm, mu_warm = _bisect_multiplier(model, opts, (caps.data, caps.compute))
            if penalized_value(x_warm) >= pga_f - opts.tolerance:
                best_x, mu_clean = x_warm, mu_warm
            else:
                best_x, mu_clean = pga_x, None

    best_x = _snap_small(best_x, budget)
    if any(not math.isfinite(v) for v in best_x):
        raise SolverFailure("allocation iterate diverged", best_allocation=best_x)

    alloc = Allocation(dict(zip(PILLARS, best_x)))
    caps = capacities(model, alloc)
    funded = frozenset(p for p in PILLARS if alloc.amounts[p] > 0.0)
    mr = marginal_returns(model, alloc)
    if mu_clean is not None:
        mu_star = mu_clean
    elif funded:
        mu_star = max(alpha * mr.per_pillar[p] for p in funded)
    else:
        mu_star = 0.0

    o_star, at_bound = optimal_openness(model.openness)
    breakdown = welfare(model, alloc, o_star)
    residuals = _kkt_residuals_at(model, alloc, mu_star, o_star, at_bound)

    verified = False
    if _grid_size(opts.oracle_resolution) <= ORACLE_VERIFY_EVALS:
        oracle = grid_oracle(model, opts.oracle_resolution)
        verified = breakdown.welfare >= oracle.welfare.welfare - ORACLE_MARGIN

    flags = SolutionFlags(
        budget_binding=mu_star > opts.tolerance,
        m_clipped=caps.m_clipped,
        openness_at_bound=at_bound,
        globality_verified=verified,
    )
    return PlannerSolution(
        allocation=alloc,
        openness=o_star,
        multiplier=mu_star,
        capacities=caps,
        welfare=breakdown,
        funded_set=funded,
        kkt=residuals,
        flags=flags,
    )


def solve_joint(model: EconomyModel, opts: SolveOptions | None = None) -> PlannerSolution:
    """Solve allocation and openness together.

    Welfare is additively separable in spending and openness, so the
    joint optimum is exactly the allocation solve composed with the
    closed-form openness rule.
    """
    return solve_allocation(model, opts)


def _kkt_residuals_at(
    model: EconomyModel,
    alloc: Allocation,
    mu: float,
    openness: float,
    at_bound: bool,
) -> KKTResiduals:
    alpha = model.openness.sovereignty_weight
    mr = marginal_returns(model, alloc)
    per_pillar: Dict[PillarId, float] = {}
    for p in PILLARS:
        stationarity = alpha * mr.per_pillar[p] - mu
        if alloc.amounts[p] > 0.0:
            per_pillar[p] = stationarity
        else:
            per_pillar[p] = max(0.0, stationarity)
    if at_bound:
        openness_residual = 0.0
    else:
        op = model.openness
        openness_residual = (1.0 - alpha) * op.benefit_scale * op.benefit_curvature / (
            1.0 + op.benefit_curvature * openness
        ) - op.risk_sensitivity * op.exposure_slope
    slack = mu * (model.budget - alloc.total)
    return KKTResiduals(
        per_pillar=per_pillar,
        openness=openness_residual,
        complementary_slackness=slack,
    )


def kkt_residuals(model: EconomyModel, solution: PlannerSolution) -> KKTResiduals:
    """Recompute first-order residuals for a reported solution."""
    return _kkt_residuals_at(
        model,
        solution.allocation,
        solution.multiplier,
        solution.openness,
        solution.flags.openness_at_bound,
    )


def grid_oracle(model: EconomyModel, resolution: int) -> OracleSolution:
    """Exhaustive welfare evaluation on a budget-simplex × openness grid.

    Spending levels are multiples of budget/resolution with total at most
    the budget; openness runs over resolution+1 evenly spaced points so
    both bounds are included and doubling the resolution refines the
    grid. Argmax ties resolve to the first point in lexicographic pillar
    order (openness varying slowest).
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    total = _grid_size(resolution)
    if total > ORACLE_MAX_EVALS:
        raise ValueError(f"grid of {total} evaluations exceeds the {ORACLE_MAX_EVALS} cap")

    budget = model.budget
    alpha = model.openness.sovereignty_weight
    theta = model.complementarity
    levels = np.arange(resolution + 1) * (budget / resolution)
    caps = {
        p: -np.expm1(-model.pillars[p].productivity * levels) for p in PILLARS
    }

    axis = np.arange(resolution + 1)
    jd, jc, jm = np.meshgrid(axis, axis, axis, indexing="ij")
    keep = (jd + jc + jm) <= resolution
    jd, jc, jm = jd[keep], jc[keep], jm[keep]
    room = resolution - (jd + jc + jm)
    counts = room + 1
    n_points = int(counts.sum())
    jd_full = np.repeat(jd, counts)
    jc_full = np.repeat(jc, counts)
    jm_full = np.repeat(jm, counts)
    offsets = np.concatenate(([0], np.cumsum(counts)[:-1]))
    jn_full = np.arange(n_points) - np.repeat(offsets, counts)

    d = caps[PillarId.DATA][jd_full]
    c = caps[PillarId.COMPUTE][jc_full]
    m = np.minimum(1.0, caps[PillarId.MODEL][jm_full] + theta * d * c)
    n = caps[PillarId.NORMS][jn_full]
    w = model.weights
    sov = (
        w[PillarId.DATA] * d
        + w[PillarId.COMPUTE] * c
        + w[PillarId.MODEL] * m
        + w[PillarId.NORMS] * n
    )
    alpha_sov = alpha * sov

    op = model.openness
    o_grid = np.arange(resolution + 1) / resolution
    open_part = (1.0 - alpha) * op.benefit_scale * np.log1p(
        op.benefit_curvature * o_grid
    ) - op.risk_sensitivity * op.exposure_slope * o_grid

    best_value = -math.inf
    best_x_idx = 0
    best_o_idx = 0
    buffer = np.empty_like(alpha_sov)
    for oi in range(o_grid.size):
        np.add(alpha_sov, open_part[oi], out=buffer)
        xi = int(buffer.argmax())
        if buffer[xi] > best_value:
            best_value = float(buffer[xi])
            best_x_idx = xi
            best_o_idx = oi

    step = budget / resolution
    alloc = Allocation(
        {
            PillarId.DATA: float(jd_full[best_x_idx]) * step,
            PillarId.COMPUTE: float(jc_full[best_x_idx]) * step,
            PillarId.MODEL: float(jm_full[best_x_idx]) * step,
            PillarId.NORMS: float(jn_full[best_x_idx]) * step,
        }
    )
    o_best = float(o_grid[best_o_idx])
    return OracleSolution(
        allocation=alloc,
        openness=o_best,
        welfare=welfare(model, alloc, o_best),
        grid_resolution=resolution,
    )


def shadow_price(
    model: EconomyModel, budgets: Sequence[float], opts: SolveOptions | None = None
) -> List[float]:
    """Budget multiplier along an ascending schedule of budgets."""
    if any(b2 < b1 for b1, b2 in zip(budgets, budgets[1:])):
        raise ValueError("budgets must be sorted ascending")
    if any(not (b > 0.0) for b in budgets):
        raise ValueError("budgets must be positive")
    return [solve_allocation(model.replace(budget=b), opts).multiplier for b in budgets]


def gate_mode_allocation(
    model: EconomyModel, mu: float, opts: SolveOptions | None = None
) -> GateResult:
    """Allocation implied by an exogenous multiplier (an MCPF estimate).

    Each pillar funds up to the point where its marginal sovereignty
    return hits the mu/alpha bar; pillars whose slope at zero is already
    below the bar stay at zero and are deferred. The budget consistent
    with this multiplier is the total of the funded spends.
    """
    if not (mu > 0.0):
        raise ValueError(f"mu must be positive, got {mu}")
    opts = opts or SolveOptions()
    alpha = model.openness.sovereignty_weight
    if alpha <= 0.0:
        raise ValueError("gate mode requires a positive sovereignty weight")

    x, _, converged = _invert_at_multiplier(model, mu)

    if model.complementarity > 0.0:
        # The fixed point can chatter when the optimum rides the autonomy
        # kink; fall back to multistart ascent on the multiplier-penalized
        # objective and keep whichever spend is better.
        def penalized(v: Sequence[float]) -> float:
            return alpha * _sov_value(model, v) - mu * math.fsum(v)

        def penalized_grad(v: Sequence[float]) -> Tuple[float, ...]:
            return tuple(alpha * g - mu for g in _sov_grad(model, v))

        scale = max(math.fsum(x), 1.0 / min(m.productivity for m in model.pillars.values()))
        project = lambda v: tuple(max(vi, 0.0) for vi in v)
        rng = np.random.default_rng(opts.random_seed)
        starts: List[Tuple[float, ...]] = [x, tuple(scale / 4.0 for _ in PILLARS)]
        starts.extend(
            tuple(float(u) * scale for u in row)
            for row in rng.random((opts.multistart_count, len(PILLARS)))
        )
        best_x, best_f = x, penalized(x)
        for x0 in starts:
            x_run, f_run = _ascend(
                penalized, penalized_grad, project, x0, scale, min(400, opts.max_iterations)
            )
            if f_run > best_f:
                best_x, best_f = x_run, f_run
        if not converged or best_f > penalized(x) + opts.tolerance:
            x = best_x

    x = _snap_small(x, max(math.fsum(x), 1.0))
    alloc = Allocation(dict(zip(PILLARS, x)))
    verdicts = {p: ("fund" if alloc.amounts[p] > 0.0 else "defer") for p in PILLARS}
    return GateResult(
        allocation=alloc,
        implied_budget=alloc.total,
        verdicts=verdicts,
        bar=mu / alpha,
        all_deferred=all(v == "defer" for v in verdicts.values()),
    )
