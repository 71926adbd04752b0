"""Exact empirical discrepancy between datasets.

The discrepancy between two datasets is the largest absolute difference of
their empirical risks over the whole hypothesis class.  Since zero-one
quantities depend on a hypothesis only through its sign pattern on the
sample, the supremum is attained and can be enumerated exactly: for
threshold rules by sweeping the n+1 effective cut positions, for explicit
finite classes by scanning every hypothesis.  All comparisons are done in
integer arithmetic (error counts cross-multiplied by dataset sizes), so the
result is exact even for datasets of unequal size.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .core import Dataset, SourceCollection
from .hypotheses import FiniteClass, HypothesisClass, ThresholdClass


def _threshold_discrepancy(a: Dataset, b: Dataset) -> float:
    xs = np.concatenate([a.x, b.x]).astype(np.float64)
    ys = np.concatenate([a.y, b.y]).astype(np.int64)
    owner_a = np.zeros(xs.size, dtype=bool)
    owner_a[: a.m] = True

    order = np.argsort(xs, kind="stable")
    xs, ys, owner_a = xs[order], ys[order], owner_a[order]
    _, starts = np.unique(xs, return_index=True)

    # crossing a value flips its predictions from +1 to -1, changing the
    # error count of its owner by the label sum of that group
    delta_a = np.add.reduceat(np.where(owner_a, ys, 0), starts)
    delta_b = np.add.reduceat(np.where(owner_a, 0, ys), starts)
    err_a = int((a.y == -1).sum()) + np.concatenate(([0], np.cumsum(delta_a)))
    err_b = int((b.y == -1).sum()) + np.concatenate(([0], np.cumsum(delta_b)))

    gap = np.abs(err_a * b.m - err_b * a.m).max()
    return int(gap) / (a.m * b.m)


def _finite_discrepancy(hclass: FiniteClass, a: Dataset, b: Dataset) -> float:
    err_a = (hclass.prediction_matrix(a.x) != a.y[None, :]).sum(axis=1, dtype=np.int64)
    err_b = (hclass.prediction_matrix(b.x) != b.y[None, :]).sum(axis=1, dtype=np.int64)
    gap = np.abs(err_a * b.m - err_b * a.m).max()
    return int(gap) / (a.m * b.m)


def discrepancy(hypothesis_class: HypothesisClass, a: Dataset, b: Dataset) -> float:
    """sup over hypotheses of |empirical risk on `a` - empirical risk on `b`|."""
    if a.x.dtype.kind != b.x.dtype.kind:
        raise ValueError("datasets live in different input domains")
    if isinstance(hypothesis_class, ThresholdClass):
        return _threshold_discrepancy(a, b)
    if isinstance(hypothesis_class, FiniteClass):
        return _finite_discrepancy(hypothesis_class, a, b)
    raise NotImplementedError(
        f"no exact discrepancy enumeration for {type(hypothesis_class).__name__}"
    )


def discrepancy_matrix(
    hypothesis_class: HypothesisClass,
    sources: Sequence[Dataset] | SourceCollection,
) -> np.ndarray:
    """All pairwise discrepancies; symmetric with a zero diagonal."""
    if isinstance(sources, SourceCollection):
        sources = sources.sources
    n = len(sources)
    out = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            d = discrepancy(hypothesis_class, sources[i], sources[j])
            out[i, j] = out[j, i] = d
    return out
