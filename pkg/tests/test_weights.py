import math

import numpy as np
import pytest

from sovplan.core import PILLARS, PillarId
from sovplan.weights import (
    PairwiseMatrix,
    aggregate_matrices,
    ahp_weights,
    normalize_weights,
)


def consistent_matrix(weights):
    return PairwiseMatrix(tuple(tuple(wi / wj for wj in weights) for wi in weights))


class TestNormalize:
    def test_equal(self):
        w = normalize_weights({p: 1.0 for p in PILLARS})
        assert all(v == 0.25 for v in w.values())

    def test_proportional(self):
        raw = dict(zip(PILLARS, (2.0, 1.0, 1.0, 0.0)))
        w = normalize_weights(raw)
        assert [w[p] for p in PILLARS] == [0.5, 0.25, 0.25, 0.0]

    def test_scale_invariant(self):
        raw = dict(zip(PILLARS, (0.3, 0.1, 0.4, 0.2)))
        scaled = {p: 4.0 * v for p, v in raw.items()}
        assert normalize_weights(raw) == normalize_weights(scaled)

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            normalize_weights({p: 0.0 for p in PILLARS})

    def test_negative_rejected(self):
        raw = dict(zip(PILLARS, (1.0, -0.2, 0.5, 0.1)))
        with pytest.raises(ValueError):
            normalize_weights(raw)


class TestPairwiseMatrix:
    def test_reciprocity_enforced(self):
        with pytest.raises(ValueError):
            PairwiseMatrix(((1.0, 2.0), (0.4, 1.0)))

    def test_diagonal_enforced(self):
        with pytest.raises(ValueError):
            PairwiseMatrix(((1.0, 2.0), (0.5, 1.1)))

    def test_positivity_enforced(self):
        with pytest.raises(ValueError):
            PairwiseMatrix(((1.0, -2.0), (-0.5, 1.0)))

    def test_square_enforced(self):
        with pytest.raises(ValueError):
            PairwiseMatrix(((1.0, 2.0, 3.0), (0.5, 1.0, 2.0)))

    def test_generic_sizes_allowed(self):
        m = PairwiseMatrix(((1.0, 3.0, 5.0), (1 / 3, 1.0, 2.0), (0.2, 0.5, 1.0)))
        assert m.size == 3


class TestAhp:
    def test_all_ones(self):
        result = ahp_weights(PairwiseMatrix(tuple(tuple(1.0 for _ in range(4)) for _ in range(4))))
        for p in PILLARS:
            assert result.weights[p] == pytest.approx(0.25, abs=1e-12)
        assert result.consistency_ratio == 0.0
        assert result.consistent

    def test_recovers_consistent_weights(self):
        target = (0.4, 0.3, 0.2, 0.1)
        result = ahp_weights(consistent_matrix(target))
        for p, w in zip(PILLARS, target):
            assert result.weights[p] == pytest.approx(w, abs=1e-9)
        assert result.consistency_ratio <= 1e-9
        assert result.principal_eigenvalue == pytest.approx(4.0, abs=1e-9)

    def test_transitive_consistency(self):
        target = (0.48, 0.24, 0.16, 0.12)
        m = consistent_matrix(target)
        entries = m.entries
        for i in range(4):
            for j in range(4):
                for k in range(4):
                    assert entries[i][j] * entries[j][k] == pytest.approx(entries[i][k], rel=1e-12)
        assert ahp_weights(m).consistency_ratio <= 1e-9

    def test_perturbation_raises_ratio(self):
        target = (0.4, 0.3, 0.2, 0.1)
        rows = [list(r) for r in consistent_matrix(target).entries]
        rows[0][3] *= 3.0
        rows[3][0] = 1.0 / rows[0][3]
        result = ahp_weights(PairwiseMatrix(tuple(tuple(r) for r in rows)))
        assert result.consistency_ratio > 0.0
        assert result.consistent == (result.consistency_ratio <= 0.1)
        assert result.weights[PillarId.DATA] != pytest.approx(0.4, abs=1e-6)
        # cross-check against a direct dense eigensolve
        eigvals, eigvecs = np.linalg.eig(np.array(rows))
        idx = int(np.argmax(eigvals.real))
        reference = np.abs(eigvecs[:, idx].real)
        reference /= reference.sum()
        for p, r in zip(PILLARS, reference):
            assert result.weights[p] == pytest.approx(float(r), abs=1e-9)
        assert result.principal_eigenvalue == pytest.approx(float(eigvals[idx].real), abs=1e-9)

    def test_weights_sum_to_one_and_positive(self):
        rows = (
            (1.0, 0.5, 3.0, 2.0),
            (2.0, 1.0, 5.0, 3.0),
            (1 / 3, 0.2, 1.0, 0.5),
            (0.5, 1 / 3, 2.0, 1.0),
        )
        result = ahp_weights(PairwiseMatrix(rows))
        assert math.fsum(result.weights.values()) == pytest.approx(1.0, abs=1e-9)
        assert all(v > 0.0 for v in result.weights.values())

    def test_permutation_equivariance(self):
        rows = (
            (1.0, 0.5, 3.0, 2.0),
            (2.0, 1.0, 5.0, 3.0),
            (1 / 3, 0.2, 1.0, 0.5),
            (0.5, 1 / 3, 2.0, 1.0),
        )
        base = ahp_weights(PairwiseMatrix(rows))
        perm = (2, 0, 3, 1)
        permuted_rows = tuple(tuple(rows[i][j] for j in perm) for i in perm)
        permuted = ahp_weights(PairwiseMatrix(permuted_rows))
        for out_pos, in_pos in enumerate(perm):
            assert permuted.weights[PILLARS[out_pos]] == pytest.approx(
                base.weights[PILLARS[in_pos]], abs=1e-12
            )

    def test_wrong_size_for_pillars(self):
        with pytest.raises(ValueError):
            ahp_weights(PairwiseMatrix(((1.0, 2.0), (0.5, 1.0))))


class TestAggregation:
    def test_geometric_mean_preserves_reciprocity(self):
        a = consistent_matrix((0.4, 0.3, 0.2, 0.1))
        b = consistent_matrix((0.25, 0.25, 0.25, 0.25))
        merged = aggregate_matrices([a, b])
        for i in range(4):
            for j in range(4):
                assert merged.entries[i][j] == pytest.approx(
                    math.sqrt(a.entries[i][j] * b.entries[i][j]), rel=1e-12
                )

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            aggregate_matrices([])
