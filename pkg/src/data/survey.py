"""Survey table ingestion, composite scores, train/test split and per-target regression views."""

import math
import os
from dataclasses import dataclass
from typing import BinaryIO, Dict, Iterator, TextIO, Tuple, Union

import numpy as np
import pandas as pd

from ..core.error_handling import ErrorType, create_error
from ..core.logging import logger
from .schema import (
    CATEGORY_CODES,
    COMPOSITES,
    DISPLAY_NAMES,
    MEASURE_RANGE,
    RAW_COLUMNS,
    TARGET_FEATURES,
    TARGETS,
    normalize_target,
)


@dataclass(frozen=True)
class SurveyRecord:
    gender: int
    age_band: int
    bl: int
    b_act: float
    b_int: float
    b_gro: float
    c_mgt: float
    c_com: float
    e_int: float
    e_sat: float
    be: Union[float, None] = None
    ce: Union[float, None] = None
    ee: Union[float, None] = None


@dataclass(frozen=True)
class SurveyTable:
    """Immutable table of respondent records.

    The frame index holds each row's position in the source table, so
    split parts can be traced back to the rows they came from.
    """

    frame: pd.DataFrame
    composites_present: bool = False

    def __len__(self) -> int:
        return len(self.frame)

    @property
    def columns(self) -> Tuple[str, ...]:
        return tuple(self.frame.columns)

    @property
    def row_ids(self) -> np.ndarray:
        return self.frame.index.to_numpy(copy=True)

    def column(self, name: str) -> np.ndarray:
        if name not in self.frame.columns:
            raise create_error(ErrorType.MISSING_COLUMN, column=name)
        return self.frame[name].to_numpy(dtype=float, copy=True)

    def records(self) -> Iterator[SurveyRecord]:
        for row in self.frame.itertuples(index=False):
            yield SurveyRecord(**row._asdict())


@dataclass(frozen=True)
class RegressionProblem:
    """One engagement target with its feature view (display-name labelled)."""

    target: str
    feature_names: Tuple[str, ...]
    X: np.ndarray
    y: np.ndarray

    @property
    def n_samples(self) -> int:
        return int(self.y.shape[0])


def _check_range(column: str, values: np.ndarray, text: pd.Series) -> None:
    if column in CATEGORY_CODES:
        codes = CATEGORY_CODES[column]
        bad = np.flatnonzero(~np.isin(values, codes))
        allowed = "{" + ", ".join(str(c) for c in codes) + "}"
    else:
        low, high = MEASURE_RANGE
        bad = np.flatnonzero(~((values >= low) & (values <= high)))
        allowed = f"[{low:g}, {high:g}]"
    if bad.size:
        row = int(bad[0])
        raise create_error(ErrorType.VALUE_OUT_OF_RANGE, row=row + 1, column=column,
                           value=text.iloc[row], allowed=allowed)


def parse_survey_csv(source: BinaryIO) -> SurveyTable:
    """Parse a UTF-8 survey CSV into a SurveyTable (composites not derived).

    Columns beyond the ten raw ones are ignored. Errors name the 1-based
    data row and the column.
    """
    try:
        raw = pd.read_csv(source, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError as e:
        raise create_error(ErrorType.MALFORMED_CSV, original_exception=e, error_details="no header row")
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise create_error(ErrorType.MALFORMED_CSV, original_exception=e, error_details=str(e))

    raw.columns = [str(c).strip().lower() for c in raw.columns]
    for column in RAW_COLUMNS:
        if column not in raw.columns:
            raise create_error(ErrorType.MISSING_COLUMN, column=column)

    data: Dict[str, np.ndarray] = {}
    for column in RAW_COLUMNS:
        text = raw[column].str.strip()
        values = pd.to_numeric(text, errors="coerce").to_numpy(dtype=float)
        bad = np.flatnonzero(np.isnan(values))
        if bad.size:
            row = int(bad[0])
            raise create_error(ErrorType.UNPARSEABLE_CELL, row=row + 1, column=column, value=text.iloc[row])
        _check_range(column, values, text)
        data[column] = values.astype(np.int64) if column in CATEGORY_CODES else values

    frame = pd.DataFrame(data, columns=list(RAW_COLUMNS))
    logger.debug("Parsed survey table", rows=len(frame))
    return SurveyTable(frame=frame, composites_present=False)


def load_survey(path: str) -> SurveyTable:
    """Open a survey CSV from disk and parse it."""
    if not os.path.isfile(path):
        raise create_error(ErrorType.INPUT_NOT_FOUND, path=path)
    with open(path, "rb") as source:
        return parse_survey_csv(source)


def write_survey_csv(table: SurveyTable, stream: Union[TextIO, str]) -> None:
    """Write the table as CSV: raw columns, then composites when present."""
    table.frame.to_csv(stream, index=False, lineterminator="\n")


def compute_composites(table: SurveyTable) -> SurveyTable:
    """Return a copy with be/ce/ee set to the mean of their constituent measures."""
    frame = table.frame.loc[:, list(RAW_COLUMNS)].copy()
    for composite, members in COMPOSITES.items():
        frame[composite] = frame[list(members)].to_numpy(dtype=float).mean(axis=1)
    return SurveyTable(frame=frame, composites_present=True)


def split(table: SurveyTable, train_fraction: float, seed: int) -> Tuple[SurveyTable, SurveyTable]:
    """Seeded shuffle split into (train, test).

    Train size is n * train_fraction rounded half-up. Both parts keep the
    source row order.
    """
    if not 0.0 < train_fraction < 1.0:
        raise create_error(ErrorType.INVALID_CONFIG, field_name="train_fraction",
                           error_details=f"must lie in (0, 1), got {train_fraction}")
    n_rows = len(table)
    if n_rows == 0:
        raise create_error(ErrorType.EMPTY_TABLE)

    n_train = int(math.floor(n_rows * train_fraction + 0.5))
    order = np.random.default_rng(seed).permutation(n_rows)
    train_positions = np.sort(order[:n_train])
    test_positions = np.sort(order[n_train:])

    train = SurveyTable(table.frame.iloc[train_positions].copy(), table.composites_present)
    test = SurveyTable(table.frame.iloc[test_positions].copy(), table.composites_present)
    return train, test


def make_target_view(table: SurveyTable, target: str) -> RegressionProblem:
    label = normalize_target(target)
    if not table.composites_present:
        raise create_error(ErrorType.COMPOSITES_MISSING, target=label)

    columns = TARGET_FEATURES[label]
    X = table.frame[list(columns)].to_numpy(dtype=float, copy=True)
    y = table.frame[label.lower()].to_numpy(dtype=float, copy=True)
    # INVARIANT: view arrays are read-only
    X.setflags(write=False)
    y.setflags(write=False)
    return RegressionProblem(
        target=label,
        feature_names=tuple(DISPLAY_NAMES[c] for c in columns),
        X=X,
        y=y,
    )


def make_target_views(table: SurveyTable) -> Dict[str, RegressionProblem]:
    """Build the BE, CE and EE regression views, in that order."""
    if not table.composites_present:
        raise create_error(ErrorType.COMPOSITES_MISSING)
    return {target: make_target_view(table, target) for target in TARGETS}


__all__ = [
    "SurveyRecord",
    "SurveyTable",
    "RegressionProblem",
    "parse_survey_csv",
    "load_survey",
    "write_survey_csv",
    "compute_composites",
    "split",
    "make_target_view",
    "make_target_views",
]
