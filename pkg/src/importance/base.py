"""Feature importance vectors shared by the MDI and permutation methods."""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from ..core.error_handling import ErrorType, create_error

MDI = "mdi"
PERMUTATION = "permutation"


@dataclass(frozen=True, eq=False)
class ImportanceVector:
    """Scores in the problem's feature-list order.

    For MDI, scores are >= 0 and sum to 1 unless `uniform` is set (no tree
    split anywhere, all scores 0). Permutation scores may be negative and
    keep their per-repetition values in `repetitions` (features x K).
    """

    feature_names: Tuple[str, ...]
    scores: Tuple[float, ...]
    method: str
    uniform: bool = False
    repetitions: Optional[np.ndarray] = None

    def __post_init__(self):
        if len(self.feature_names) != len(self.scores):
            raise create_error(ErrorType.LENGTH_MISMATCH, left=len(self.feature_names), right=len(self.scores))

    def __len__(self) -> int:
        return len(self.feature_names)

    def __getitem__(self, feature: str) -> float:
        try:
            return self.scores[self.feature_names.index(feature)]
        except ValueError:
            raise create_error(ErrorType.FEATURE_SET_MISMATCH, error_details=f"no feature '{feature}'")

    def as_dict(self) -> Dict[str, float]:
        return dict(zip(self.feature_names, self.scores))

    def top(self) -> str:
        """Highest-scoring feature; the earlier one wins a tie."""
        return self.feature_names[int(np.argmax(self.scores))]

    def long_frame(self) -> pd.DataFrame:
        """Per-repetition scores as (feature, repetition, score) rows."""
        records: List[Dict[str, object]] = []
        if self.repetitions is not None:
            for feature, row in zip(self.feature_names, self.repetitions):
                for k, score in enumerate(row, start=1):
                    records.append({"feature": feature, "repetition": k, "score": float(score)})
        return pd.DataFrame.from_records(records, columns=["feature", "repetition", "score"])

    def to_dict(self) -> Dict[str, object]:
        data: Dict[str, object] = {
            "method": self.method,
            "scores": {name: float(score) for name, score in zip(self.feature_names, self.scores)},
        }
        if self.method == MDI:
            data["uniform"] = self.uniform
        if self.repetitions is not None:
            data["repetitions"] = int(self.repetitions.shape[1])
        return data
