"""Unit tests for pairwise matrices, weights and consistency figures."""

import numpy as np
import pytest

from src.ahp import (
    RI_TABLE,
    PairwiseMatrix,
    TierAssignment,
    build_pairwise,
    consistency_index,
    consistency_ratio,
    evaluate_matrix,
    format_saaty,
    geometric_mean_weights,
    is_saaty_value,
    lambda_max,
    normalize_weights,
    random_index,
)
from src.ahp.tiers import BE_STYLE_SCALES, CE_EE_STYLE_SCALES
from src.core.error_handling import EngageRankError, ErrorType
from tests.oracles import power_iteration, random_reciprocal_matrix

BE_MIDDLE = ("C-Mgt", "C-Com", "E-Int", "E-Sat", "Age")
CE_MIDDLE = ("B-Act", "B-Int", "B-Gro", "E-Int", "E-Sat")


@pytest.fixture
def be_matrix() -> PairwiseMatrix:
    return build_pairwise(TierAssignment((("BL",), BE_MIDDLE, ("Gender",)), BE_STYLE_SCALES))


@pytest.fixture
def ce_matrix() -> PairwiseMatrix:
    return build_pairwise(TierAssignment((("BL",), CE_MIDDLE, ("Age",), ("Gender",)), CE_EE_STYLE_SCALES))


class TestBuildPairwise:
    def test_tier_entries(self, be_matrix):
        assert be_matrix.labels == ("BL",) + BE_MIDDLE + ("Gender",)
        assert be_matrix.entry("BL", "C-Mgt") == 7.0
        assert be_matrix.entry("BL", "Gender") == 9.0
        assert be_matrix.entry("E-Int", "Gender") == 3.0
        assert be_matrix.entry("Gender", "BL") == pytest.approx(1.0 / 9.0)
        assert be_matrix.entry("C-Mgt", "E-Sat") == 1.0

    def test_reciprocal_with_unit_diagonal(self, ce_matrix):
        A = ce_matrix.values
        np.testing.assert_array_equal(np.diag(A), np.ones(8))
        np.testing.assert_allclose(A * A.T, np.ones_like(A), atol=1e-12)

    def test_entries_are_saaty_values(self, ce_matrix):
        assert all(is_saaty_value(v) for v in ce_matrix.values.ravel())

    def test_frame_uses_saaty_strings(self, be_matrix):
        frame = be_matrix.to_frame()
        assert frame.index.name == "feature"
        assert frame.loc["BL", "Gender"] == "9"
        assert frame.loc["Gender", "BL"] == "1/9"
        assert frame.loc["Age", "Age"] == "1"

    def test_values_are_read_only(self, be_matrix):
        with pytest.raises(ValueError):
            be_matrix.values[0, 1] = 2.0


def _random_tiers(rng: np.random.Generator) -> TierAssignment:
    """Random features spread over 1..5 non-empty tiers, with a random admissible scale table."""
    n_tiers = int(rng.integers(1, 6))
    n_features = int(rng.integers(n_tiers, 13))
    cuts = np.sort(rng.choice(np.arange(1, n_features), size=n_tiers - 1, replace=False))
    names = [f"F{i}" for i in rng.permutation(n_features)]
    tiers = tuple(tuple(str(name) for name in part) for part in np.split(np.array(names), cuts))

    # grows with tier distance and toward the top tier, so both monotone rules hold
    by_distance = np.cumsum(rng.integers(0, 3, size=n_tiers + 1))
    by_row = np.cumsum(rng.integers(0, 2, size=n_tiers))[::-1]
    scales = {
        (i, j): int(min(9, 2 + by_distance[j - i] + by_row[i]))
        for i in range(n_tiers) for j in range(i + 1, n_tiers)
    }
    return TierAssignment(tiers=tiers, scales=scales, preset="random")


class TestRandomTierMatrices:
    def test_positive_and_reciprocal(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            values = build_pairwise(_random_tiers(rng)).values
            assert np.all(values > 0.0)
            np.testing.assert_array_equal(np.diag(values), 1.0)
            np.testing.assert_allclose(values * values.T, 1.0, atol=1e-12)

    def test_weight_order_follows_tier_order(self):
        rng = np.random.default_rng(18)
        for _ in range(200):
            tiers = _random_tiers(rng)
            matrix = build_pairwise(tiers)
            weights = dict(zip(matrix.labels, geometric_mean_weights(matrix)))
            per_tier = [[weights[name] for name in tier] for tier in tiers.tiers]
            for tier_weights in per_tier:
                assert max(tier_weights) == pytest.approx(min(tier_weights), rel=1e-12)
            for upper, lower in zip(per_tier, per_tier[1:]):
                assert min(upper) > max(lower)

    def test_lambda_max_at_least_n(self):
        rng = np.random.default_rng(19)
        for _ in range(200):
            matrix = build_pairwise(_random_tiers(rng))
            assert lambda_max(matrix, geometric_mean_weights(matrix)) >= matrix.n - 1e-9



class TestPairwiseMatrixValidation:
    def test_not_square(self):
        with pytest.raises(EngageRankError) as exc:
            PairwiseMatrix(("a", "b"), np.ones((2, 3)))
        assert exc.value.error_type is ErrorType.NOT_SQUARE

    def test_non_positive(self):
        with pytest.raises(EngageRankError) as exc:
            PairwiseMatrix(("a", "b"), [[1.0, 0.0], [0.0, 1.0]])
        assert exc.value.error_type is ErrorType.NON_POSITIVE_ENTRY

    def test_not_reciprocal(self):
        with pytest.raises(EngageRankError) as exc:
            PairwiseMatrix(("a", "b"), [[1.0, 3.0], [0.5, 1.0]])
        assert exc.value.error_type is ErrorType.NOT_RECIPROCAL


class TestWeights:
    def test_be_style_weight_scores(self, be_matrix):
        w = geometric_mean_weights(be_matrix)
        assert w[0] == pytest.approx(5.495, abs=1e-3)
        np.testing.assert_allclose(w[1:6], 0.886, atol=1e-3)
        assert w[6] == pytest.approx(1.0 / 3.0, abs=1e-9)

    def test_ce_ee_style_weight_scores(self, ce_matrix):
        w = geometric_mean_weights(ce_matrix)
        assert w[0] == pytest.approx(5.759, abs=1e-3)
        np.testing.assert_allclose(w[1:6], 0.981, atol=1e-3)
        assert w[6] == pytest.approx(0.574, abs=1e-3)
        assert w[7] == pytest.approx(1.0 / 3.0, abs=1e-9)

    def test_percentages(self, be_matrix, ce_matrix):
        be = normalize_weights(geometric_mean_weights(be_matrix))
        assert be.sum() == pytest.approx(100.0)
        assert be[0] == pytest.approx(53.566, abs=1e-2)
        assert be[6] == pytest.approx(3.249, abs=1e-2)
        ce = normalize_weights(geometric_mean_weights(ce_matrix))
        assert ce[0] == pytest.approx(49.775, abs=1e-2)
        assert ce[6] == pytest.approx(4.957, abs=1e-2)
        assert ce[7] == pytest.approx(2.881, abs=1e-2)

    def test_consistent_matrix_recovers_its_generator(self):
        v = np.array([4.0, 2.0, 1.0, 0.5])
        A = np.outer(v, 1.0 / v)
        w = geometric_mean_weights(A)
        np.testing.assert_allclose(w / w.sum(), v / v.sum(), atol=1e-12)
        assert lambda_max(A, w) == pytest.approx(4.0, abs=1e-12)

    def test_close_to_principal_eigenvector(self, be_matrix):
        _, eigenvector = power_iteration(be_matrix.values)
        w = geometric_mean_weights(be_matrix)
        np.testing.assert_allclose(w / w.sum(), eigenvector, atol=1e-2)


class TestConsistency:
    def test_be_style_figures(self, be_matrix):
        result = evaluate_matrix(be_matrix)
        assert result.lambda_max == pytest.approx(7.075, abs=1e-3)
        assert result.ci == pytest.approx(0.0125, abs=5e-4)
        assert result.cr == pytest.approx(0.0095, abs=5e-4)
        assert result.consistent

    def test_ce_ee_style_is_consistent(self, ce_matrix):
        assert evaluate_matrix(ce_matrix).cr < 0.1

    def test_lambda_max_at_eigenvector_is_eigenvalue(self, ce_matrix):
        eigenvalue, eigenvector = power_iteration(ce_matrix.values)
        assert lambda_max(ce_matrix, eigenvector) == pytest.approx(eigenvalue, abs=1e-9)

    def test_lambda_max_never_below_n(self):
        rng = np.random.default_rng(31)
        for _ in range(200):
            n = int(rng.integers(2, 10))
            A = random_reciprocal_matrix(rng, n)
            assert lambda_max(A, geometric_mean_weights(A)) >= n - 1e-9

    def test_lambda_max_rescales_weights(self, be_matrix):
        w = geometric_mean_weights(be_matrix)
        assert lambda_max(be_matrix, 10.0 * w) == pytest.approx(lambda_max(be_matrix, w))

    def test_zero_weight(self, be_matrix):
        w = geometric_mean_weights(be_matrix)
        w[2] = 0.0
        with pytest.raises(EngageRankError) as exc:
            lambda_max(be_matrix, w)
        assert exc.value.error_type is ErrorType.ZERO_WEIGHT

    def test_consistency_index_needs_two(self):
        with pytest.raises(EngageRankError) as exc:
            consistency_index(1.0, 1)
        assert exc.value.error_type is ErrorType.MATRIX_TOO_SMALL

    def test_small_matrices_have_zero_ratio(self):
        assert consistency_ratio(0.3, 2) == 0.0

    def test_random_index(self):
        assert random_index(7) == 1.32
        assert random_index(8) == 1.41
        assert set(RI_TABLE) == set(range(1, 16))
        with pytest.raises(EngageRankError) as exc:
            random_index(16)
        assert exc.value.error_type is ErrorType.NO_RANDOM_INDEX


class TestFormatSaaty:
    @pytest.mark.parametrize("value,text", [
        (7.0, "7"), (1.0 / 7.0, "1/7"), (1.0, "1"), (1.0 / 9.0, "1/9"), (9.0, "9"), (2.5, "2.5"),
    ])
    def test_format(self, value, text):
        assert format_saaty(value) == text
