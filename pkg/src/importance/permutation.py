"""Permutation importance scored on held-out rows."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, asdict
from typing import Any, Callable, Dict

import numpy as np

from ..core.error_handling import ErrorType, create_error
from ..core.logging import logger
from ..core.seeding import stream_rng
from ..models.ensemble import BoostedEnsemble, mse, r2_score
from .base import PERMUTATION, ImportanceVector

SCORERS: Dict[str, Callable[[np.ndarray, np.ndarray], float]] = {
    "r2": r2_score,
    "neg_mse": lambda y, y_hat: -mse(y, y_hat),
}


def _invalid(field_name: str, details: str):
    return create_error(ErrorType.INVALID_CONFIG, field_name=f"permutation.{field_name}", error_details=details)


@dataclass(frozen=True)
class PermutationConfig:
    repetitions: int = 10
    seed: int = 0
    scorer: str = "r2"

    def __post_init__(self):
        if int(self.repetitions) != self.repetitions or self.repetitions < 1:
            raise _invalid("repetitions", f"must be an integer >= 1, got {self.repetitions}")
        if self.scorer not in SCORERS:
            raise _invalid("scorer", f"must be one of {sorted(SCORERS)}, got '{self.scorer}'")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PermutationConfig":
        unknown = sorted(set(data) - set(cls.__dataclass_fields__))
        if unknown:
            raise _invalid(unknown[0], "unknown field")
        return cls(**data)


def _used_features(ensemble: BoostedEnsemble) -> np.ndarray:
    used = np.zeros(len(ensemble.feature_names), dtype=bool)
    for tree in ensemble.trees:
        used[tree.used_features] = True
    return used


def permutation_importance(
    ensemble: BoostedEnsemble,
    X_test: np.ndarray,
    y_test: np.ndarray,
    config: PermutationConfig,
    max_workers: int = 1,
) -> ImportanceVector:
    """i_j = s - mean_k s_kj, where s_kj scores the test rows with column j shuffled.

    Shuffle k of column j draws from its own stream keyed (j, k) under
    config.seed, so the result does not depend on max_workers.
    """
    if ensemble.n_stages == 0:
        raise create_error(ErrorType.UNFITTED_MODEL)
    X = np.asarray(X_test, dtype=float)
    y = np.asarray(y_test, dtype=float)
    n_features = len(ensemble.feature_names)
    if X.ndim != 2 or X.shape[0] != y.size:
        raise create_error(ErrorType.LENGTH_MISMATCH, left=X.shape[0] if X.ndim else 0, right=y.size)
    if y.size < 2:
        raise create_error(ErrorType.EMPTY_INPUT, error_details="permutation importance needs at least 2 test rows")
    if X.shape[1] != n_features:
        raise create_error(ErrorType.MISSING_FEATURE, available=X.shape[1], required=n_features - 1)
    if config.scorer == "r2" and np.ptp(y) == 0.0:
        raise create_error(ErrorType.DEGENERATE_SCORER)

    score = SCORERS[config.scorer]
    baseline = score(y, ensemble.predict(X))
    used = _used_features(ensemble)
    K = config.repetitions

    def drops_for(j: int) -> np.ndarray:
        drops = np.zeros(K, dtype=float)
        # INVARIANT: a column no tree reads cannot change predictions
        if not used[j]:
            return drops
        shuffled = X.copy()
        for k in range(K):
            order = stream_rng(config.seed, j, k).permutation(y.size)
            shuffled[:, j] = X[order, j]
            drops[k] = baseline - score(y, ensemble.predict(shuffled))
        return drops

    workers = max(1, min(int(max_workers), n_features))
    if workers == 1:
        rows = [drops_for(j) for j in range(n_features)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(drops_for, range(n_features)))

    repetitions = np.vstack(rows)
    repetitions.setflags(write=False)
    logger.debug("Permutation importance computed", repetitions=K, scorer=config.scorer,
                 baseline=float(baseline), workers=workers)
    return ImportanceVector(
        feature_names=ensemble.feature_names,
        scores=tuple(float(v) for v in repetitions.mean(axis=1)),
        method=PERMUTATION,
        repetitions=repetitions,
    )
