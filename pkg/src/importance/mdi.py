"""Mean decrease in impurity over the trees of a boosted ensemble."""

import numpy as np

from ..core.error_handling import ErrorType, create_error
from ..models.ensemble import BoostedEnsemble
from .base import MDI, ImportanceVector


def mdi(ensemble: BoostedEnsemble) -> ImportanceVector:
    """Per feature: sum over split nodes of (n_node / n_train) * impurity decrease,
    averaged over trees and normalized to sum 1.
    """
    if ensemble.n_stages == 0:
        raise create_error(ErrorType.UNFITTED_MODEL)

    n_features = len(ensemble.feature_names)
    totals = np.zeros(n_features, dtype=float)
    for tree in ensemble.trees:
        internal = np.flatnonzero(tree.feature >= 0)
        if internal.size == 0:
            continue
        weights = tree.n_samples[internal] / float(ensemble.n_train) * tree.impurity_decrease[internal]
        totals += np.bincount(tree.feature[internal], weights=weights, minlength=n_features)
    totals /= ensemble.n_stages

    grand_total = float(totals.sum())
    if grand_total <= 0.0:
        return ImportanceVector(
            feature_names=ensemble.feature_names,
            scores=tuple(0.0 for _ in range(n_features)),
            method=MDI,
            uniform=True,
        )
    scores = totals / grand_total
    return ImportanceVector(
        feature_names=ensemble.feature_names,
        scores=tuple(float(s) for s in scores),
        method=MDI,
    )
