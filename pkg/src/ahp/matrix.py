"""Pairwise comparison matrices, row geometric-mean weights and consistency."""

from dataclasses import dataclass
from typing import Dict, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..core.error_handling import ErrorType, create_error
from .scale import format_saaty
from .tiers import TierAssignment

RECIPROCAL_TOL = 1e-12

# Saaty's random consistency indices
RI_TABLE: Dict[int, float] = {
    1: 0.0, 2: 0.0, 3: 0.58, 4: 0.90, 5: 1.12, 6: 1.24, 7: 1.32, 8: 1.41, 9: 1.45, 10: 1.49,
    11: 1.51, 12: 1.48, 13: 1.56, 14: 1.57, 15: 1.59,
}
CONSISTENCY_THRESHOLD = 0.1


@dataclass(frozen=True, eq=False)
class PairwiseMatrix:
    """Positive reciprocal matrix A with a_ij = importance of labels[i] over labels[j]."""

    labels: Tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        n = len(self.labels)
        if values.shape != (n, n):
            raise create_error(ErrorType.NOT_SQUARE, shape=tuple(values.shape))
        bad = np.argwhere(~(values > 0.0))
        if bad.size:
            raise create_error(ErrorType.NON_POSITIVE_ENTRY, row=int(bad[0][0]), col=int(bad[0][1]))
        off = np.argwhere(np.abs(values * values.T - 1.0) > RECIPROCAL_TOL)
        if off.size:
            raise create_error(ErrorType.NOT_RECIPROCAL, row=int(off[0][0]), col=int(off[0][1]))
        values.setflags(write=False)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return len(self.labels)

    def entry(self, row: str, col: str) -> float:
        return float(self.values[self.labels.index(row), self.labels.index(col)])

    def to_frame(self) -> pd.DataFrame:
        """Saaty-formatted entries ("7", "1/7"), labels on both axes."""
        cells = [[format_saaty(v) for v in row] for row in self.values]
        frame = pd.DataFrame(cells, index=list(self.labels), columns=list(self.labels))
        frame.index.name = "feature"
        return frame

    def to_dict(self) -> Dict[str, object]:
        return {"labels": list(self.labels), "values": self.values.tolist()}


def build_pairwise(tiers: TierAssignment) -> PairwiseMatrix:
    """a_ij = 1 within a tier, scale(tier_i, tier_j) above, reciprocal below."""
    labels = tiers.features
    tier_index = [tiers.tier_of(name) for name in labels]
    n = len(labels)
    values = np.ones((n, n), dtype=float)
    for i in range(n):
        for j in range(i + 1, n):
            value = tiers.scale(tier_index[i], tier_index[j])
            values[i, j] = value
            values[j, i] = 1.0 / value
    return PairwiseMatrix(labels, values)


def _as_array(matrix: Union[PairwiseMatrix, np.ndarray]) -> np.ndarray:
    values = matrix.values if isinstance(matrix, PairwiseMatrix) else np.asarray(matrix, dtype=float)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise create_error(ErrorType.NOT_SQUARE, shape=tuple(values.shape))
    return values


def geometric_mean_weights(matrix: Union[PairwiseMatrix, np.ndarray]) -> np.ndarray:
    """w_i = (prod_j a_ij)^(1/n), evaluated as exp(mean_j log a_ij)."""
    values = _as_array(matrix)
    bad = np.argwhere(~(values > 0.0))
    if bad.size:
        raise create_error(ErrorType.NON_POSITIVE_ENTRY, row=int(bad[0][0]), col=int(bad[0][1]))
    return np.exp(np.log(values).mean(axis=1))


def normalize_weights(weights: Sequence[float]) -> np.ndarray:
    """Percentages 100 * w_i / sum(w)."""
    w = np.asarray(weights, dtype=float)
    return 100.0 * w / w.sum()


def lambda_max(matrix: Union[PairwiseMatrix, np.ndarray], weights: Sequence[float]) -> float:
    """(1/n) * sum_i (A w)_i / w_i, with w rescaled to sum 1."""
    values = _as_array(matrix)
    w = np.asarray(weights, dtype=float)
    if w.shape != (values.shape[0],):
        raise create_error(ErrorType.LENGTH_MISMATCH, left=values.shape[0], right=w.size)
    if np.any(w <= 0.0):
        raise create_error(ErrorType.ZERO_WEIGHT)
    w = w / w.sum()
    return float(np.mean(values @ w / w))


def consistency_index(lambda_max_value: float, n: int) -> float:
    if n < 2:
        raise create_error(ErrorType.MATRIX_TOO_SMALL, n=n)
    return (lambda_max_value - n) / (n - 1)


def random_index(n: int) -> float:
    if n not in RI_TABLE:
        raise create_error(ErrorType.NO_RANDOM_INDEX, n=n)
    return RI_TABLE[n]


def consistency_ratio(ci: float, n: int) -> float:
    """CI / RI(n); defined as 0 for n <= 2."""
    if n <= 2:
        return 0.0
    return ci / random_index(n)
