"""Consensus ranking of features from MDI and permutation importance."""

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

import pandas as pd
from scipy.stats import rankdata

from ..core.error_handling import ErrorType, create_error
from .base import MDI, PERMUTATION, ImportanceVector

# method ranks further apart than this are flagged
DISAGREEMENT_GAP = 2

IMPORTANCE_CSV_COLUMNS = (
    "feature", "mdi", "permutation", "mdi_rank", "perm_rank", "avg_rank", "disagreement_flag",
)


@dataclass(frozen=True)
class RankedFeature:
    name: str
    mdi_rank: int
    perm_rank: int
    mdi: Optional[float] = None
    permutation: Optional[float] = None

    @property
    def avg_rank(self) -> float:
        return (self.mdi_rank + self.perm_rank) / 2.0

    @property
    def disagreement(self) -> bool:
        return abs(self.mdi_rank - self.perm_rank) > DISAGREEMENT_GAP


@dataclass(frozen=True)
class Ranking:
    """Features ordered from most to least important, method ranks retained."""

    entries: Tuple[RankedFeature, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[RankedFeature]:
        return iter(self.entries)

    def __getitem__(self, name: str) -> RankedFeature:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise create_error(ErrorType.FEATURE_SET_MISMATCH, error_details=f"no feature '{name}' in ranking")

    @property
    def features(self) -> Tuple[str, ...]:
        return tuple(entry.name for entry in self.entries)

    @property
    def avg_ranks(self) -> Dict[str, float]:
        return {entry.name: entry.avg_rank for entry in self.entries}

    @property
    def disagreements(self) -> Tuple[str, ...]:
        return tuple(entry.name for entry in self.entries if entry.disagreement)

    def without(self, names: Iterable[str]) -> "Ranking":
        """Drop the named features; order and method ranks of the rest are kept."""
        dropped = set(names)
        return Ranking(tuple(entry for entry in self.entries if entry.name not in dropped))

    @classmethod
    def from_order(cls, features: Sequence[str]) -> "Ranking":
        """Ranking from an explicit most-to-least order (both method ranks = position)."""
        names = [str(f).strip() for f in features]
        if len(set(names)) != len(names):
            raise create_error(ErrorType.FEATURE_SET_MISMATCH, error_details="duplicate feature in ranking")
        return cls(tuple(RankedFeature(name, position, position) for position, name in enumerate(names, start=1)))

    def to_frame(self) -> pd.DataFrame:
        rows = [{
            "feature": entry.name,
            "mdi": entry.mdi,
            "permutation": entry.permutation,
            "mdi_rank": entry.mdi_rank,
            "perm_rank": entry.perm_rank,
            "avg_rank": entry.avg_rank,
            "disagreement_flag": entry.disagreement,
        } for entry in self.entries]
        return pd.DataFrame.from_records(rows, columns=list(IMPORTANCE_CSV_COLUMNS))

    def to_dict(self) -> Dict[str, object]:
        return {
            "order": list(self.features),
            "avg_rank": self.avg_ranks,
            "disagreements": list(self.disagreements),
        }


def _dense_ranks(scores: Sequence[float]) -> Sequence[int]:
    # rank 1 = highest score; tied scores share a rank
    return [int(r) for r in rankdata([-s for s in scores], method="dense")]


def combined_ranking(mdi_vec: ImportanceVector, perm_vec: ImportanceVector) -> Ranking:
    """Order by average dense rank; ties go to the larger MDI score, then feature-list order."""
    if mdi_vec.method != MDI or perm_vec.method != PERMUTATION:
        raise create_error(ErrorType.FEATURE_SET_MISMATCH,
                           error_details=f"expected (mdi, permutation), got ({mdi_vec.method}, {perm_vec.method})")
    if mdi_vec.feature_names != perm_vec.feature_names:
        raise create_error(ErrorType.FEATURE_SET_MISMATCH,
                           error_details=f"{list(mdi_vec.feature_names)} vs {list(perm_vec.feature_names)}")

    mdi_ranks = _dense_ranks(mdi_vec.scores)
    perm_ranks = _dense_ranks(perm_vec.scores)
    entries = [
        RankedFeature(name, mdi_rank, perm_rank, mdi=mdi_score, permutation=perm_score)
        for name, mdi_rank, perm_rank, mdi_score, perm_score in zip(
            mdi_vec.feature_names, mdi_ranks, perm_ranks, mdi_vec.scores, perm_vec.scores)
    ]
    position = {name: i for i, name in enumerate(mdi_vec.feature_names)}
    entries.sort(key=lambda e: (e.mdi_rank + e.perm_rank, -e.mdi, position[e.name]))
    return Ranking(tuple(entries))


__all__ = ["Ranking", "RankedFeature", "combined_ranking", "DISAGREEMENT_GAP", "IMPORTANCE_CSV_COLUMNS"]
