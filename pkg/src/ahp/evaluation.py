"""End-to-end AHP evaluation of a ranking."""

from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Tuple, Union

import numpy as np

from ..core.error_handling import ErrorType, create_error
from ..core.logging import logger
from ..importance.ranking import Ranking
from .matrix import (
    CONSISTENCY_THRESHOLD,
    PairwiseMatrix,
    build_pairwise,
    consistency_index,
    consistency_ratio,
    geometric_mean_weights,
    lambda_max,
    normalize_weights,
)
from .tiers import TierAssignment, TierPreset, assign_tiers


@dataclass(frozen=True, eq=False)
class AhpResult:
    """Weights, consistency figures and the matrix they came from.

    weight_scores are the unnormalized row geometric means; percentages
    rescale them to sum 100.
    """

    matrix: PairwiseMatrix
    weight_scores: np.ndarray
    percentages: np.ndarray
    lambda_max: float
    ci: float
    cr: float
    tiers: Optional[TierAssignment] = None

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.matrix.labels

    @property
    def consistent(self) -> bool:
        return self.cr < CONSISTENCY_THRESHOLD

    def weight_of(self, label: str) -> float:
        return float(self.weight_scores[self.labels.index(label)])

    def percentage_of(self, label: str) -> float:
        return float(self.percentages[self.labels.index(label)])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "labels": list(self.labels),
            "weight_scores": [float(w) for w in self.weight_scores],
            "percentages": [float(p) for p in self.percentages],
            "lambda_max": float(self.lambda_max),
            "ci": float(self.ci),
            "cr": float(self.cr),
            "consistent": self.consistent,
            "tiers": self.tiers.to_dict() if self.tiers is not None else None,
        }


def evaluate_matrix(matrix: PairwiseMatrix, tiers: Optional[TierAssignment] = None) -> AhpResult:
    """Weights, lambda_max, CI and CR of a matrix, without the CR acceptance check."""
    weights = geometric_mean_weights(matrix)
    lam = lambda_max(matrix, weights)
    n = matrix.n
    ci = consistency_index(lam, n) if n >= 2 else 0.0
    return AhpResult(
        matrix=matrix,
        weight_scores=weights,
        percentages=normalize_weights(weights),
        lambda_max=lam,
        ci=ci,
        cr=consistency_ratio(ci, n),
        tiers=tiers,
    )


def evaluate(
    ranking: Ranking,
    preset: Union[str, TierPreset],
    custom_presets: Optional[Mapping[str, TierPreset]] = None,
) -> AhpResult:
    """assign_tiers -> build_pairwise -> evaluate_matrix; CR >= 0.1 is rejected.

    The rejection error carries the CR and the unaccepted result in its
    context ("cr", "result").
    """
    tiers = assign_tiers(ranking, preset, custom_presets)
    matrix = build_pairwise(tiers)
    result = evaluate_matrix(matrix, tiers)
    logger.debug_data("AHP evaluation", result.to_dict(), preset=tiers.preset)
    if not result.consistent:
        raise create_error(ErrorType.CONSISTENCY_REJECTED, cr=result.cr, preset=tiers.preset, result=result)
    return result
