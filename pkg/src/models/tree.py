"""CART regression trees grown greedily on squared error.

Routing rule: x[feature] <= threshold goes left. Candidate thresholds are
midpoints between consecutive distinct sorted values of a feature.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterator, Optional, Sequence

import numpy as np

from ..core.error_handling import ErrorType, create_error
from .config import TrainConfig

LEAF = -1

# relative tolerance under which two impurity decreases count as tied
_TIE_RTOL = 1e-12


@dataclass(frozen=True)
class SplitCandidate:
    """sse_decrease is the SSE removed by the split; the tree node stores it per sample."""

    feature: int
    threshold: float
    sse_decrease: float
    n_left: int
    n_right: int


def _sse(values: np.ndarray) -> float:
    if values.size == 0:
        return 0.0
    centered = values - values.mean()
    return float(np.dot(centered, centered))


def _midpoint(low: float, high: float) -> float:
    mid = (low + high) / 2.0
    # INVARIANT: low <= threshold < high, so both children stay non-empty
    return mid if low <= mid < high else low


def best_split(
    X: np.ndarray,
    y: np.ndarray,
    sample_indices: Sequence[int],
    min_samples_leaf: int = 1,
) -> Optional[SplitCandidate]:
    """Best variance-reduction split of a node, or None when nothing reduces SSE.

    Ties go to the lower feature index, then to the smaller threshold.
    """
    idx = np.asarray(sample_indices, dtype=np.intp)
    n = idx.size
    if n < 2 * min_samples_leaf:
        return None

    y_node = np.asarray(y, dtype=float)[idx]
    if np.ptp(y_node) == 0.0:
        return None

    centered = y_node - y_node.mean()
    parent_sse = float(np.dot(centered, centered))
    tolerance = _TIE_RTOL * parent_sse
    left_sizes = np.arange(1, n)
    right_sizes = n - left_sizes
    size_ok = (left_sizes >= min_samples_leaf) & (right_sizes >= min_samples_leaf)

    best: Optional[SplitCandidate] = None
    best_gain = 0.0
    for feature in range(X.shape[1]):
        x_node = X[idx, feature]
        order = np.argsort(x_node, kind="stable")
        xs = x_node[order]
        sums = np.cumsum(centered[order])
        total = sums[-1]

        valid = size_ok & (xs[1:] > xs[:-1])
        if not valid.any():
            continue

        left_sums = sums[:-1]
        mean_gap = left_sums / left_sizes - (total - left_sums) / right_sizes
        gains = np.where(valid, left_sizes * right_sizes / n * mean_gap ** 2, -np.inf)

        top = float(gains.max())
        # INVARIANT: a later feature must beat the incumbent by more than the tie tolerance
        if top <= best_gain + tolerance:
            continue
        # smallest threshold among near-equal maxima
        pos = int(np.flatnonzero(gains >= top - tolerance)[0])
        best = SplitCandidate(
            feature=feature,
            threshold=_midpoint(float(xs[pos]), float(xs[pos + 1])),
            sse_decrease=float(gains[pos]),
            n_left=pos + 1,
            n_right=n - pos - 1,
        )
        best_gain = top
    return best


@dataclass(frozen=True, eq=False)
class RegressionTree:
    """Array-encoded binary tree; node 0 is the root, nodes are in preorder.

    Leaves have feature == -1 and left == right == -1. `impurity` is the
    node MSE (variance of its targets) and `impurity_decrease` the drop from
    that to the size-weighted MSE of its children.
    """

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray
    n_samples: np.ndarray
    impurity: np.ndarray
    impurity_decrease: np.ndarray
    max_depth: int

    @property
    def node_count(self) -> int:
        return int(self.feature.size)

    @property
    def n_leaves(self) -> int:
        return int(np.count_nonzero(self.feature == LEAF))

    @cached_property
    def depth(self) -> int:
        depths = np.zeros(self.node_count, dtype=np.intp)
        for node in range(self.node_count):
            if self.feature[node] != LEAF:
                depths[self.left[node]] = depths[node] + 1
                depths[self.right[node]] = depths[node] + 1
        return int(depths.max())

    @cached_property
    def used_features(self) -> np.ndarray:
        return np.unique(self.feature[self.feature != LEAF])

    def apply(self, X: np.ndarray) -> np.ndarray:
        """Leaf index reached by each row."""
        X = np.asarray(X, dtype=float)
        if X.ndim != 2:
            raise create_error(ErrorType.EMPTY_INPUT, error_details="expected a 2-D feature matrix")
        used = self.used_features
        if used.size and used[-1] >= X.shape[1]:
            raise create_error(ErrorType.MISSING_FEATURE, available=X.shape[1], required=int(used[-1]))

        rows = np.arange(X.shape[0])
        node = np.zeros(X.shape[0], dtype=np.intp)
        for _ in range(self.depth):
            feature = self.feature[node]
            internal = feature != LEAF
            if not internal.any():
                break
            go_left = X[rows, np.where(internal, feature, 0)] <= self.threshold[node]
            node = np.where(internal, np.where(go_left, self.left[node], self.right[node]), node)
        return node

    def predict(self, X: np.ndarray) -> np.ndarray:
        return self.value[self.apply(X)]

    def iter_nodes(self) -> Iterator[Dict[str, Any]]:
        for node in range(self.node_count):
            record = {
                "id": node,
                "n_samples": int(self.n_samples[node]),
                "impurity": float(self.impurity[node]),
                "value": float(self.value[node]),
            }
            if self.feature[node] != LEAF:
                record.update({
                    "feature": int(self.feature[node]),
                    "threshold": float(self.threshold[node]),
                    "impurity_decrease": float(self.impurity_decrease[node]),
                    "left": int(self.left[node]),
                    "right": int(self.right[node]),
                })
            yield record

    def to_dict(self) -> Dict[str, Any]:
        return {"max_depth": int(self.max_depth), "nodes": list(self.iter_nodes())}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RegressionTree":
        nodes = sorted(data["nodes"], key=lambda record: record["id"])
        return cls.from_nodes(nodes, max_depth=int(data["max_depth"]))

    @classmethod
    def from_nodes(cls, nodes: Sequence[Dict[str, Any]], max_depth: int) -> "RegressionTree":
        """Build a tree from node records (ids 0..k-1 in list order)."""
        def column(key, default, dtype):
            return np.array([record.get(key, default) for record in nodes], dtype=dtype)

        return cls(
            feature=column("feature", LEAF, np.intp),
            threshold=column("threshold", 0.0, float),
            left=column("left", LEAF, np.intp),
            right=column("right", LEAF, np.intp),
            value=column("value", 0.0, float),
            n_samples=column("n_samples", 0, np.int64),
            impurity=column("impurity", 0.0, float),
            impurity_decrease=column("impurity_decrease", 0.0, float),
            max_depth=max_depth,
        )


def fit_tree(X: np.ndarray, y: np.ndarray, config: TrainConfig) -> RegressionTree:
    """Grow a regression tree greedily up to config.max_depth; leaves predict their target mean."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if y.size == 0 or X.ndim != 2 or X.shape[0] != y.size:
        raise create_error(ErrorType.EMPTY_INPUT, error_details="fit_tree needs at least one sample with matching X rows")

    nodes = []

    def grow(samples: np.ndarray, depth: int) -> int:
        node_id = len(nodes)
        y_node = y[samples]
        record = {
            "n_samples": int(samples.size),
            "impurity": _sse(y_node) / samples.size,
            "value": float(y_node.mean()),
        }
        nodes.append(record)

        split = None
        if depth < config.max_depth:
            split = best_split(X, y, samples, config.min_samples_leaf)
        if split is None:
            return node_id

        goes_left = X[samples, split.feature] <= split.threshold
        record.update({
            "feature": split.feature,
            "threshold": split.threshold,
            "impurity_decrease": split.sse_decrease / samples.size,
        })
        record["left"] = grow(samples[goes_left], depth + 1)
        record["right"] = grow(samples[~goes_left], depth + 1)
        return node_id

    grow(np.arange(y.size), 0)
    return RegressionTree.from_nodes(nodes, max_depth=config.max_depth)


def predict_tree(tree: RegressionTree, x: np.ndarray) -> float:
    """Prediction for a single feature vector."""
    row = np.asarray(x, dtype=float).reshape(1, -1)
    return float(tree.predict(row)[0])
