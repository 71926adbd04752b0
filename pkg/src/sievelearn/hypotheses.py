"""Hypothesis classes with exact empirical risk, exact ERM and dichotomy enumeration.

Two families are provided:

* ``ThresholdClass`` -- 1-D threshold rules h_t(x) = +1 iff x >= t, with
  t ranging over the extended reals.  The boundary is inclusive by
  convention and ERM ties go to the smallest candidate threshold.
* ``FiniteClass`` -- an explicit table of hypotheses over a finite token
  domain; can encode any small class for tests and attack constructions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .core import CapacityError, Dataset

DEFAULT_POINT_CAP = 64


def _as_points(x) -> np.ndarray:
    pts = np.asarray(x)
    if pts.ndim == 0:
        pts = pts.reshape(1)
    return pts


@dataclass(frozen=True)
class ThresholdHypothesis:
    """Predicts +1 iff x >= threshold (inclusive boundary)."""

    threshold: float

    def predict(self, x) -> np.ndarray:
        pts = _as_points(x)
        return np.where(pts >= self.threshold, 1, -1).astype(np.int8)

    def predict_one(self, x) -> int:
        return int(self.predict(np.asarray([x]))[0])


@dataclass(frozen=True)
class TableHypothesis:
    """Row of an explicit hypothesis table over a finite token domain."""

    index: int
    tokens: tuple[int, ...]
    labels: tuple[int, ...]

    def predict(self, x) -> np.ndarray:
        pts = _as_points(x)
        lookup = dict(zip(self.tokens, self.labels))
        uniq, inverse = np.unique(pts, return_inverse=True)
        try:
            values = np.asarray([lookup[int(u)] for u in uniq], dtype=np.int8)
        except KeyError as err:
            raise ValueError(f"token {err.args[0]} outside the declared domain") from None
        return values[inverse]

    def predict_one(self, x) -> int:
        return int(self.predict(np.asarray([x]))[0])


@dataclass(frozen=True)
class ThresholdClass:
    """All 1-D threshold rules; VC dimension 1."""

    def vc_dimension(self) -> int:
        return 1

    def candidate_thresholds(self, points) -> np.ndarray:
        """-inf, midpoints between consecutive distinct points, +inf."""
        uniq = np.unique(_as_points(points).astype(np.float64))
        mids = (uniq[:-1] + uniq[1:]) / 2.0
        return np.concatenate(([-np.inf], mids, [np.inf]))

    def dichotomies(self, points, cap: int = DEFAULT_POINT_CAP) -> np.ndarray:
        """Exact set of sign patterns realizable on `points`, one row each.

        There are at most (#distinct points) + 1 of them.
        """
        pts = _as_points(points)
        if pts.size == 0:
            raise ValueError("need at least one point")
        if pts.size > cap:
            raise CapacityError(f"{pts.size} points exceed the cap of {cap}")
        uniq = np.unique(pts)
        ranks = np.searchsorted(uniq, pts)
        cuts = np.arange(uniq.size + 1)[:, None]
        return np.where(ranks[None, :] >= cuts, 1, -1).astype(np.int8)

    def erm(self, x, y) -> ThresholdHypothesis:
        """Exact empirical risk minimizer; ties go to the smallest threshold."""
        pts = _as_points(x).astype(np.float64)
        labels = np.asarray(y)
        if pts.size == 0:
            raise ValueError("cannot run ERM on an empty dataset")
        order = np.argsort(pts, kind="stable")
        xs, ys = pts[order], labels[order].astype(np.int64)
        uniq, starts = np.unique(xs, return_index=True)
        # crossing a value flips its predictions +1 -> -1: errors change by sum(y)
        deltas = np.add.reduceat(ys, starts)
        err0 = int((ys == -1).sum())
        errors = err0 + np.concatenate(([0], np.cumsum(deltas)))
        best = int(np.argmin(errors))  # first minimum = smallest candidate
        if best == 0:
            return ThresholdHypothesis(-np.inf)
        if best == uniq.size:
            return ThresholdHypothesis(np.inf)
        return ThresholdHypothesis((uniq[best - 1] + uniq[best]) / 2.0)


@dataclass(frozen=True)
class FiniteClass:
    """Explicit hypothesis table: rows are hypotheses, columns domain tokens."""

    tokens: tuple[int, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        tokens = tuple(int(t) for t in self.tokens)
        if len(set(tokens)) != len(tokens) or not tokens:
            raise ValueError("domain tokens must be nonempty and distinct")
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        if not table:
            raise ValueError("need at least one hypothesis")
        for row in table:
            if len(row) != len(tokens):
                raise ValueError("every hypothesis must be total on the domain")
            if any(v not in (-1, 1) for v in row):
                raise ValueError("table entries must be in {-1, +1}")
        object.__setattr__(self, "tokens", tokens)
        object.__setattr__(self, "table", table)

    @property
    def n_hypotheses(self) -> int:
        return len(self.table)

    def hypotheses(self) -> list[TableHypothesis]:
        return [TableHypothesis(i, self.tokens, row) for i, row in enumerate(self.table)]

    def _columns(self, points) -> np.ndarray:
        pts = _as_points(points)
        lookup = {t: i for i, t in enumerate(self.tokens)}
        uniq, inverse = np.unique(pts, return_inverse=True)
        try:
            cols = np.asarray([lookup[int(u)] for u in uniq], dtype=np.int64)
        except KeyError as err:
            raise ValueError(f"token {err.args[0]} outside the declared domain") from None
        return cols[inverse]

    def prediction_matrix(self, points) -> np.ndarray:
        """(n_hypotheses, n_points) matrix of predictions."""
        cols = self._columns(points)
        return np.asarray(self.table, dtype=np.int8)[:, cols]

    def dichotomies(self, points, cap: int = DEFAULT_POINT_CAP) -> np.ndarray:
        pts = _as_points(points)
        if pts.size == 0:
            raise ValueError("need at least one point")
        if pts.size > cap:
            raise CapacityError(f"{pts.size} points exceed the cap of {cap}")
        return np.unique(self.prediction_matrix(pts), axis=0)

    def erm(self, x, y) -> TableHypothesis:
        """Exact ERM by full enumeration; ties go to the smallest index."""
        pts = _as_points(x)
        labels = np.asarray(y)
        if pts.size == 0:
            raise ValueError("cannot run ERM on an empty dataset")
        errors = (self.prediction_matrix(pts) != labels[None, :]).sum(axis=1)
        best = int(np.argmin(errors))
        return TableHypothesis(best, self.tokens, self.table[best])

    def vc_dimension(self) -> int:
        """Brute-force VC dimension; capped at |H| <= 16 and domain <= 16."""
        if self.n_hypotheses > 16 or len(self.tokens) > 16:
            raise CapacityError("brute-force VC computation capped at 16 x 16")
        vc = 0
        rows = np.asarray(self.table, dtype=np.int8)
        for size in range(1, len(self.tokens) + 1):
            shattered_any = False
            for subset in itertools.combinations(range(len(self.tokens)), size):
                patterns = {tuple(row[list(subset)]) for row in rows}
                if len(patterns) == 2 ** size:
                    shattered_any = True
                    break
            if shattered_any:
                vc = size
            else:
                break
        return vc

    @classmethod
    def from_file(cls, path) -> "FiniteClass":
        """Load a table file: rows of whitespace-separated +-1 entries.

        An optional leading line ``tokens: a b c`` names the token ids;
        otherwise tokens are 0..V-1.  Lines starting with '#' are comments.
        """
        lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        tokens = None
        if lines and lines[0].lower().startswith("tokens:"):
            tokens = tuple(int(t) for t in lines[0].split(":", 1)[1].split())
            lines = lines[1:]
        rows = [tuple(int(v) for v in ln.split()) for ln in lines]
        if not rows:
            raise ValueError(f"no hypothesis rows found in {path}")
        if tokens is None:
            tokens = tuple(range(len(rows[0])))
        return cls(tokens=tokens, table=tuple(rows))


def nontrivial_pair_class() -> FiniteClass:
    """Minimal two-hypothesis class: agrees on token 0, disagrees on token 1.

    This is the smallest structure the lower-bound attacks require; the two
    hypotheses are rows 0 and 1 and the common/rare points are tokens 0 and 1.
    """
    return FiniteClass(tokens=(0, 1), table=((1, 1), (1, -1)))


HypothesisClass = ThresholdClass | FiniteClass
Hypothesis = ThresholdHypothesis | TableHypothesis


def predict(hypothesis: Hypothesis, x):
    """Evaluate a hypothesis on one point or an array of points."""
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return hypothesis.predict_one(x)
    return hypothesis.predict(x)


def error_count(hypothesis: Hypothesis, dataset: Dataset) -> int:
    return int((hypothesis.predict(dataset.x) != dataset.y).sum())


def empirical_risk(hypothesis: Hypothesis, dataset: Dataset) -> float:
    """Fraction of misclassified examples; always an exact multiple of 1/m."""
    return error_count(hypothesis, dataset) / dataset.m


def erm(hypothesis_class: HypothesisClass, dataset: Dataset) -> Hypothesis:
    return hypothesis_class.erm(dataset.x, dataset.y)
