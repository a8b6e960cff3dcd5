"""Weight elicitation: raw-score normalization and pairwise-comparison AHP.

Pairwise judgments enter as a positive reciprocal matrix; the normalized
principal eigenvector gives the pillar weights and the consistency ratio
flags incoherent judgments (the usual 0.1 acceptability cutoff).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Mapping, Sequence, Tuple

import numpy as np

from .core import EQ_TOL, PILLARS, PillarId

# Saaty random-consistency index by matrix size.
RANDOM_INDEX = {1: 0.0, 2: 0.0, 3: 0.58, 4: 0.90, 5: 1.12, 6: 1.24, 7: 1.32, 8: 1.41, 9: 1.45, 10: 1.49}
CONSISTENCY_CUTOFF = 0.1

_POWER_TOL = 1e-12
_POWER_MAX_ITER = 10_000


@dataclass(frozen=True)
class PairwiseMatrix:
    """Square positive reciprocal matrix of relative-importance judgments."""

    entries: Tuple[Tuple[float, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(float(v) for v in row) for row in self.entries)
        n = len(rows)
        if n < 2 or any(len(row) != n for row in rows):
            raise ValueError("pairwise matrix must be square with size >= 2")
        for i in range(n):
            for j in range(n):
                v = rows[i][j]
                if not (v > 0.0) or not math.isfinite(v):
                    raise ValueError(f"entry [{i}][{j}] must be a positive finite real, got {v}")
        for i in range(n):
            if abs(rows[i][i] - 1.0) > EQ_TOL:
                raise ValueError(f"diagonal entry [{i}][{i}] must be 1, got {rows[i][i]}")
            for j in range(i + 1, n):
                expected = 1.0 / rows[i][j]
                if abs(rows[j][i] - expected) > EQ_TOL * max(1.0, expected):
                    raise ValueError(
                        f"entries [{i}][{j}]={rows[i][j]} and [{j}][{i}]={rows[j][i]} are not reciprocal"
                    )
        object.__setattr__(self, "entries", rows)

    @property
    def size(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class WeightResult:
    """AHP output: normalized weights plus consistency diagnostics."""

    weights: Mapping[PillarId, float]
    principal_eigenvalue: float
    consistency_ratio: float
    consistent: bool

    def __post_init__(self) -> None:
        total = math.fsum(self.weights.values())
        if abs(total - 1.0) > EQ_TOL:
            raise ValueError(f"weights must sum to 1, got {total}")
        n = len(self.weights)
        if self.principal_eigenvalue < n - EQ_TOL:
            raise ValueError(
                f"principal eigenvalue {self.principal_eigenvalue} below size {n}; matrix cannot be reciprocal"
            )
        if self.consistency_ratio < 0.0:
            raise ValueError("consistency ratio must be non-negative")


def normalize_weights(raw: Mapping[PillarId, float]) -> Dict[PillarId, float]:
    """Scale raw non-negative scores so they sum to one."""
    if set(raw.keys()) != set(PILLARS):
        raise ValueError("raw scores must cover exactly the four pillars")
    values = [raw[p] for p in PILLARS]
    if any(v < 0.0 or not math.isfinite(v) for v in values):
        raise ValueError("raw scores must be non-negative finite reals")
    total = math.fsum(values)
    if total <= 0.0:
        raise ValueError("at least one raw score must be positive")
    return {p: raw[p] / total for p in PILLARS}


def _principal_eigenvector(entries: Sequence[Sequence[float]]) -> Tuple[np.ndarray, float]:
    matrix = np.asarray(entries, dtype=float)
    n = matrix.shape[0]
    vec = np.full(n, 1.0 / n)
    for _ in range(_POWER_MAX_ITER):
        nxt = matrix @ vec
        nxt /= nxt.sum()
        if float(np.max(np.abs(nxt - vec))) <= _POWER_TOL:
            vec = nxt
            break
        vec = nxt
    else:
        raise ArithmeticError("power iteration did not converge")
    eigenvalue = float(vec @ (matrix @ vec) / (vec @ vec))
    return vec, eigenvalue


def ahp_weights(matrix: PairwiseMatrix) -> WeightResult:
    """Pillar weights from a 4x4 pairwise-comparison matrix.

    Weights are the normalized principal eigenvector; the consistency
    ratio compares the eigenvalue surplus over the matrix size with
    Saaty's random index for that size.
    """
    n = matrix.size
    if n != len(PILLARS):
        raise ValueError(f"pillar weighting needs a {len(PILLARS)}x{len(PILLARS)} matrix, got {n}x{n}")
    vec, eigenvalue = _principal_eigenvector(matrix.entries)
    consistency_index = (eigenvalue - n) / (n - 1)
    random_index = RANDOM_INDEX[n]
    ratio = 0.0 if random_index == 0.0 else max(0.0, consistency_index / random_index)
    return WeightResult(
        weights={p: float(v) for p, v in zip(PILLARS, vec)},
        principal_eigenvalue=eigenvalue,
        consistency_ratio=ratio,
        consistent=ratio <= CONSISTENCY_CUTOFF,
    )


def aggregate_matrices(matrices: Sequence[PairwiseMatrix]) -> PairwiseMatrix:
    """Element-wise geometric mean of several judges' matrices.

    The geometric mean preserves reciprocity, so the result is again a
    valid pairwise matrix. Anything fancier than this is out of scope.
    """
    if not matrices:
        raise ValueError("need at least one matrix")
    n = matrices[0].size
    if any(m.size != n for m in matrices):
        raise ValueError("all matrices must have the same size")
    stack = np.array([m.entries for m in matrices], dtype=float)
    mean = np.exp(np.mean(np.log(stack), axis=0))
    # Re-impose exact reciprocity against accumulated rounding.
    for i in range(n):
        mean[i, i] = 1.0
        for j in range(i + 1, n):
            mean[j, i] = 1.0 / mean[i, j]
    return PairwiseMatrix(tuple(tuple(float(v) for v in row) for row in mean))
