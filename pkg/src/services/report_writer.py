"""Report emission: report.json and the CSV artifact set, published atomically."""

import json
import math
import os
from typing import Any, Dict, List, Mapping, Optional

import numpy as np
import pandas as pd

from ..ahp.evaluation import AhpResult
from ..core.error_handling import ErrorType, create_error
from ..core.logging import logger
from ..data.schema import EVALUATION_FEATURES, TARGETS
from ..utils.atomic_write import staged_directory
from .pipeline_service import PipelineReport

EVALUATION_ROWS = ("Weight Score", "Percentage")
EVALUATION_FLOAT_FORMAT = "%.6f"


def to_json_ready(value: Any) -> Any:
    """Plain JSON types: numpy scalars/arrays unwrapped, NaN and inf mapped to None."""
    if isinstance(value, Mapping):
        return {str(k): to_json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json_ready(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_json_ready(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def dumps_report(data: Dict[str, Any]) -> str:
    return json.dumps(to_json_ready(data), indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def evaluation_frame(results: Mapping[str, AhpResult]) -> pd.DataFrame:
    """Weight scores and percentages per target, one column per feature; blank where excluded."""
    rows: List[Dict[str, Any]] = []
    for target in TARGETS:
        if target not in results:
            continue
        result = results[target]
        for label, values in zip(EVALUATION_ROWS, (result.weight_scores, result.percentages)):
            row: Dict[str, Any] = {"target": target, "weight": label}
            lookup = dict(zip(result.labels, values))
            for feature in EVALUATION_FEATURES:
                row[feature] = float(lookup[feature]) if feature in lookup else None
            rows.append(row)
    return pd.DataFrame.from_records(rows, columns=["target", "weight", *EVALUATION_FEATURES])


def _write_csv(frame: pd.DataFrame, path: str, index: bool = False, float_format: Optional[str] = None) -> None:
    try:
        frame.to_csv(path, index=index, lineterminator="\n", encoding="utf-8", float_format=float_format)
    except OSError as e:
        raise create_error(ErrorType.OUTPUT_WRITE_FAILED, original_exception=e, path=path, error_details=str(e))


def _write_text(text: str, path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise create_error(ErrorType.OUTPUT_WRITE_FAILED, original_exception=e, path=path, error_details=str(e))


def emit_report(report: PipelineReport, out_dir: str) -> List[str]:
    """Write the full artifact set into out_dir and return the file names written.

    An incomplete report raises before anything is written; files appear in
    out_dir only once all of them have been written.
    """
    report.check_complete()
    written: List[str] = []
    with staged_directory(out_dir) as staging:
        def target_path(name: str) -> str:
            written.append(name)
            return os.path.join(staging, name)

        _write_text(dumps_report(report.to_dict()), target_path("report.json"))
        _write_csv(report.stats.to_frame(), target_path("stats.csv"))
        for target in TARGETS:
            result = report.targets[target]
            suffix = target.lower()
            _write_csv(result.loss_curve.to_frame(), target_path(f"deviance_{suffix}.csv"))
            _write_csv(result.ranking.to_frame(), target_path(f"importance_{suffix}.csv"))
            _write_csv(result.permutation.long_frame(), target_path(f"importance_long_{suffix}.csv"))
            _write_csv(result.ahp.matrix.to_frame(), target_path(f"pairwise_{suffix}.csv"), index=True)
        _write_csv(
            evaluation_frame({t: report.targets[t].ahp for t in TARGETS}),
            target_path("evaluation_matrix.csv"),
            float_format=EVALUATION_FLOAT_FORMAT,
        )

    logger.info("Report written", path=out_dir, files=len(written))
    return written
