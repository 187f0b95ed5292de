"""Gradient-boosted regression tree models."""

from .config import TrainConfig
from .tree import RegressionTree, SplitCandidate, best_split, fit_tree, predict_tree
from .ensemble import (
    BoostedEnsemble,
    LossCurve,
    fit_ensemble,
    predict_ensemble,
    staged_deviance,
    mse,
    r2_score,
)

__all__ = [
    'TrainConfig',
    'RegressionTree', 'SplitCandidate', 'best_split', 'fit_tree', 'predict_tree',
    'BoostedEnsemble', 'LossCurve', 'fit_ensemble', 'predict_ensemble', 'staged_deviance',
    'mse', 'r2_score',
]
