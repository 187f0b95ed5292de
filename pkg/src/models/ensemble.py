"""Gradient-boosted regression trees with squared-error loss and staged deviance."""

from dataclasses import dataclass
from typing import Any, Dict, Iterator, Sequence, Tuple

import numpy as np
import pandas as pd

from ..core.error_handling import ErrorType, create_error
from ..core.logging import logger
from ..data.survey import RegressionProblem
from .config import TrainConfig
from .tree import RegressionTree, fit_tree

DEVIANCE_CSV_COLUMNS = ("stage", "train_mse", "test_mse")


def _check_pair(y: np.ndarray, y_hat: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    y = np.asarray(y, dtype=float).ravel()
    y_hat = np.asarray(y_hat, dtype=float).ravel()
    if y.size != y_hat.size:
        raise create_error(ErrorType.LENGTH_MISMATCH, left=y.size, right=y_hat.size)
    if y.size == 0:
        raise create_error(ErrorType.EMPTY_INPUT, error_details="metric needs at least one value")
    return y, y_hat


def mse(y: Sequence[float], y_hat: Sequence[float]) -> float:
    """Mean squared error (1/n) * sum (y_i - y_hat_i)^2."""
    y, y_hat = _check_pair(y, y_hat)
    residual = y - y_hat
    return float(np.dot(residual, residual) / y.size)


def r2_score(y: Sequence[float], y_hat: Sequence[float]) -> float:
    """Coefficient of determination; undefined (error) for zero-variance y."""
    y, y_hat = _check_pair(y, y_hat)
    centered = y - y.mean()
    total = float(np.dot(centered, centered))
    if total == 0.0:
        raise create_error(ErrorType.DEGENERATE_SCORER)
    residual = y - y_hat
    return 1.0 - float(np.dot(residual, residual)) / total


@dataclass(frozen=True, eq=False)
class BoostedEnsemble:
    """F(x) = f0 + learning_rate * sum_m tree_m(x)."""

    f0: float
    trees: Tuple[RegressionTree, ...]
    learning_rate: float
    feature_names: Tuple[str, ...]
    n_train: int

    @property
    def n_stages(self) -> int:
        return len(self.trees)

    def staged_predict(self, X: np.ndarray) -> Iterator[np.ndarray]:
        """Yield F_1(X), ..., F_M(X)."""
        X = np.asarray(X, dtype=float)
        prediction = np.full(X.shape[0], self.f0, dtype=float)
        for tree in self.trees:
            prediction = prediction + self.learning_rate * tree.predict(X)
            yield prediction

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        prediction = np.full(X.shape[0], self.f0, dtype=float)
        for prediction in self.staged_predict(X):
            pass
        return prediction

    def to_dict(self) -> Dict[str, Any]:
        return {
            "f0": float(self.f0),
            "learning_rate": float(self.learning_rate),
            "feature_names": list(self.feature_names),
            "n_train": int(self.n_train),
            "trees": [tree.to_dict() for tree in self.trees],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BoostedEnsemble":
        return cls(
            f0=float(data["f0"]),
            trees=tuple(RegressionTree.from_dict(t) for t in data["trees"]),
            learning_rate=float(data["learning_rate"]),
            feature_names=tuple(data["feature_names"]),
            n_train=int(data["n_train"]),
        )


@dataclass(frozen=True)
class LossCurve:
    """Per-stage MSE of F_m on the train and test data, stages 1..M."""

    train_mse: Tuple[float, ...]
    test_mse: Tuple[float, ...]

    @property
    def n_stages(self) -> int:
        return len(self.train_mse)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "stage": np.arange(1, self.n_stages + 1),
            "train_mse": self.train_mse,
            "test_mse": self.test_mse,
        }, columns=list(DEVIANCE_CSV_COLUMNS))


def fit_ensemble(problem: RegressionProblem, config: TrainConfig) -> BoostedEnsemble:
    """Fit config.n_stages trees, each to the current residuals y - F_{m-1}(x).

    Rows are subsampled per stage only when config.subsample < 1.
    """
    X = np.asarray(problem.X, dtype=float)
    y = np.asarray(problem.y, dtype=float)
    n = y.size
    if n == 0:
        raise create_error(ErrorType.EMPTY_INPUT, target=problem.target, error_details="no training rows")

    rng = np.random.default_rng(config.seed)
    sample_size = max(1, int(round(config.subsample * n)))
    f0 = float(y.mean())
    current = np.full(n, f0, dtype=float)
    trees = []
    for stage in range(config.n_stages):
        residuals = y - current
        if sample_size < n:
            rows = np.sort(rng.choice(n, size=sample_size, replace=False))
            tree = fit_tree(X[rows], residuals[rows], config)
        else:
            tree = fit_tree(X, residuals, config)
        current = current + config.learning_rate * tree.predict(X)
        trees.append(tree)
        if (stage + 1) % 100 == 0:
            logger.debug(f"Boosting stage {stage + 1}/{config.n_stages}", target=problem.target,
                         train_mse=float(np.mean((y - current) ** 2)))

    return BoostedEnsemble(
        f0=f0,
        trees=tuple(trees),
        learning_rate=config.learning_rate,
        feature_names=tuple(problem.feature_names),
        n_train=n,
    )


def predict_ensemble(ensemble: BoostedEnsemble, X: np.ndarray) -> np.ndarray:
    return ensemble.predict(X)


def staged_deviance(ensemble: BoostedEnsemble, train: RegressionProblem, test: RegressionProblem) -> LossCurve:
    """MSE on train and test after every stage, in one pass over the trees."""
    train_curve = [mse(train.y, p) for p in ensemble.staged_predict(train.X)]
    test_curve = [mse(test.y, p) for p in ensemble.staged_predict(test.X)]
    return LossCurve(train_mse=tuple(train_curve), test_mse=tuple(test_curve))
