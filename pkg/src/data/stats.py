"""Descriptive statistics of survey columns: mean, sample std, bias-adjusted skewness and excess kurtosis."""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy import stats

from ..core.error_handling import ErrorType, create_error
from .survey import SurveyTable

STATS_CSV_COLUMNS = ("column", "mean", "std", "skewness", "kurtosis")


@dataclass(frozen=True)
class ColumnStats:
    """Moments of one column. None marks a statistic that is undefined."""

    column: str
    n: int
    mean: float
    std: Optional[float]
    skewness: Optional[float]
    kurtosis: Optional[float]


@dataclass(frozen=True)
class StatsTable:
    rows: Tuple[ColumnStats, ...]

    def __getitem__(self, column: str) -> ColumnStats:
        for row in self.rows:
            if row.column == column:
                return row
        raise KeyError(column)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [[r.column, r.mean, r.std, r.skewness, r.kurtosis] for r in self.rows],
            columns=list(STATS_CSV_COLUMNS),
        )

    def to_records(self) -> list:
        return [
            {"column": r.column, "n": r.n, "mean": r.mean, "std": r.std,
             "skewness": r.skewness, "kurtosis": r.kurtosis}
            for r in self.rows
        ]


def column_stats(name: str, values: Sequence[float]) -> ColumnStats:
    """Moments of a single vector.

    std uses the n-1 denominator. Skewness needs n >= 3 and kurtosis n >= 4;
    both are undefined for a constant column.
    """
    x = np.asarray(values, dtype=float)
    n = int(x.size)
    if n == 0:
        raise create_error(ErrorType.EMPTY_INPUT, column=name, error_details=f"column '{name}' has no values")

    mean = float(np.mean(x))
    std = float(np.std(x, ddof=1)) if n >= 2 else None
    constant = bool(np.ptp(x) == 0.0)

    skewness = None
    kurtosis = None
    if not constant and n >= 3:
        skewness = float(stats.skew(x, bias=False))
    if not constant and n >= 4:
        kurtosis = float(stats.kurtosis(x, fisher=True, bias=False))
    return ColumnStats(column=name, n=n, mean=mean, std=std, skewness=skewness, kurtosis=kurtosis)


def descriptive_stats(table: SurveyTable) -> StatsTable:
    """Per-column moments for every column of the table, in column order."""
    if len(table) == 0:
        raise create_error(ErrorType.EMPTY_TABLE)
    return StatsTable(rows=tuple(column_stats(c, table.column(c)) for c in table.columns))
