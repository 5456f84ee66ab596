"""Brute-force K-nearest-neighbor classification over any registered metric.

The model is a lazy learner: it stores the training data verbatim and
computes all distances at query time. Distance ties are broken by
ascending training index; vote ties by the class of the nearest neighbor
among the tied classes.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .errors import DimensionMismatchError
from .metrics import GuardPolicy, MetricDescriptor, describe, pairwise


@dataclass(frozen=True)
class Neighbor:
    index: int
    distance: float


@dataclass(frozen=True)
class KnnModel:
    features: np.ndarray            # (m, n) training vectors
    labels: np.ndarray              # (m,) class ids
    metric: MetricDescriptor
    k: int = 1
    guard: GuardPolicy | None = None   # None: use the metric's own policy

    def __post_init__(self):
        feats = np.asarray(self.features, dtype=np.float64)
        labs = np.asarray(self.labels, dtype=np.int64)
        object.__setattr__(self, "features", feats)
        object.__setattr__(self, "labels", labs)
        if feats.ndim != 2 or len(feats) != len(labs):
            raise ValueError("training features/labels are inconsistent")
        if not 1 <= self.k <= len(feats):
            raise ValueError(f"k={self.k} outside [1, {len(feats)}]")

    @classmethod
    def from_dataset(cls, ds: Dataset, metric: str | MetricDescriptor, k: int = 1,
                     guard: GuardPolicy | None = None) -> "KnnModel":
        desc = describe(metric) if isinstance(metric, str) else metric
        return cls(ds.features, ds.labels, desc, k, guard)

    def __len__(self) -> int:
        return len(self.features)


def _distances(model: KnnModel, query) -> np.ndarray:
    query = np.asarray(query, dtype=np.float64)
    if query.ndim != 1 or query.shape[0] != model.features.shape[1]:
        raise DimensionMismatchError(
            f"query shape {query.shape} does not match trained dimension "
            f"{model.features.shape[1]}")
    return pairwise(model.metric, query, model.features, model.guard)


def neighbors(model: KnnModel, query) -> list[Neighbor]:
    """The k nearest training examples, ascending by (distance, index)."""
    dist = _distances(model, query)
    order = np.lexsort((np.arange(len(dist)), dist))[:model.k]
    return [Neighbor(int(i), float(dist[i])) for i in order]


def classify(model: KnnModel, query) -> int:
    """Majority class among the k nearest neighbors."""
    if model.k == 1:
        dist = _distances(model, query)
        return int(model.labels[int(np.argmin(dist))])  # argmin takes the lowest index on ties
    near = neighbors(model, query)
    votes = Counter(int(model.labels[nb.index]) for nb in near)
    top = max(votes.values())
    tied = {cls for cls, count in votes.items() if count == top}
    if len(tied) == 1:
        return tied.pop()
    for nb in near:  # vote tie: nearest neighbor within the tied classes wins
        cls = int(model.labels[nb.index])
        if cls in tied:
            return cls
    raise AssertionError("unreachable: tied classes came from the neighbor list")


def classify_batch(model: KnnModel, queries) -> np.ndarray:
    """Predicted class ids for each row of a query matrix."""
    queries = np.asarray(queries, dtype=np.float64)
    if queries.ndim != 2:
        raise DimensionMismatchError(f"expected a (t, n) query matrix, got {queries.shape}")
    return np.array([classify(model, q) for q in queries], dtype=np.int64)
