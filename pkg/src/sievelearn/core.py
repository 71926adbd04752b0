"""Shared domain types: labeled datasets, source collections, seeded randomness."""
from __future__ import annotations

import hashlib
import zlib
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np

LABELS = (-1, 1)


class ContractViolation(RuntimeError):
    """A structural precondition is broken (missing ground truth, shape mismatch)."""


class CapacityError(ValueError):
    """An enumeration cap (points, sign vectors) would be exceeded."""


class LabeledExample(NamedTuple):
    x: float
    y: int


def _as_labels(y) -> np.ndarray:
    y = np.asarray(y)
    if y.ndim != 1:
        raise ValueError(f"labels must be 1-D, got shape {y.shape}")
    out = y.astype(np.int8, copy=True)
    if not np.array_equal(out, y):
        raise ValueError("labels must be integers in {-1, +1}")
    if not np.isin(out, LABELS).all():
        raise ValueError("labels must take values in {-1, +1}")
    return out


@dataclass(frozen=True, eq=False)
class Dataset:
    """An ordered multiset of labeled examples from one source.

    `x` is either scalar real (float dtype) or a categorical token id
    (integer dtype); all examples of one dataset share a single domain.
    """

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x)
        if x.ndim != 1:
            raise ValueError(f"points must be 1-D, got shape {x.shape}")
        if x.size < 1:
            raise ValueError("a dataset needs at least one example")
        if np.issubdtype(x.dtype, np.floating):
            x = x.astype(np.float64, copy=True)
            if not np.isfinite(x).all():
                raise ValueError("points must be finite")
        elif np.issubdtype(x.dtype, np.integer):
            x = x.astype(np.int64, copy=True)
        else:
            raise ValueError(f"unsupported point dtype {x.dtype}")
        y = _as_labels(self.y)
        if y.shape != x.shape:
            raise ValueError("points and labels must have equal length")
        x.flags.writeable = False
        y.flags.writeable = False
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple]) -> "Dataset":
        xs = [p[0] for p in pairs]
        ys = [p[1] for p in pairs]
        dtype = np.int64 if all(isinstance(v, (int, np.integer)) for v in xs) else np.float64
        return cls(np.asarray(xs, dtype=dtype), np.asarray(ys))

    @property
    def m(self) -> int:
        return self.x.size

    def examples(self) -> Iterator[LabeledExample]:
        for xv, yv in zip(self.x.tolist(), self.y.tolist()):
            yield LabeledExample(xv, yv)

    def equals(self, other: "Dataset") -> bool:
        return (
            self.x.dtype.kind == other.x.dtype.kind
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.y, other.y)
        )

    def flip_labels(self) -> "Dataset":
        return Dataset(self.x, -self.y)

    def fingerprint(self) -> bytes:
        h = hashlib.sha256()
        h.update(self.x.dtype.kind.encode())
        h.update(self.x.tobytes())
        h.update(self.y.tobytes())
        return h.digest()


def concat_datasets(datasets: Sequence[Dataset]) -> Dataset:
    if not datasets:
        raise ValueError("need at least one dataset")
    return Dataset(
        np.concatenate([d.x for d in datasets]),
        np.concatenate([d.y for d in datasets]),
    )


@dataclass(frozen=True, eq=False)
class SourceCollection:
    """N equally sized datasets, plus test-side ground truth.

    `clean_sources` (the pre-corruption copy) and `preserved` (the index set
    the adversary left untouched) exist for the harness and tests only;
    learners never see them.
    """

    sources: tuple[Dataset, ...]
    clean_sources: tuple[Dataset, ...] | None = None
    preserved: frozenset[int] | None = None

    def __post_init__(self):
        sources = tuple(self.sources)
        if len(sources) < 1:
            raise ValueError("a collection needs at least one source")
        m = sources[0].m
        if any(d.m != m for d in sources):
            raise ContractViolation("all sources must have equal size")
        object.__setattr__(self, "sources", sources)
        if self.clean_sources is not None:
            clean = tuple(self.clean_sources)
            if len(clean) != len(sources) or any(d.m != m for d in clean):
                raise ContractViolation("clean copy must match the collection shape")
            object.__setattr__(self, "clean_sources", clean)
        if self.preserved is not None:
            preserved = frozenset(int(i) for i in self.preserved)
            if preserved and (min(preserved) < 0 or max(preserved) >= len(sources)):
                raise ContractViolation("preserved indices out of range")
            object.__setattr__(self, "preserved", preserved)

    @property
    def n_sources(self) -> int:
        return len(self.sources)

    @property
    def samples_per_source(self) -> int:
        return self.sources[0].m

    def permuted(self, order: Sequence[int]) -> "SourceCollection":
        """Reorder sources by `order` (position i takes old index order[i])."""
        order = [int(i) for i in order]
        if sorted(order) != list(range(self.n_sources)):
            raise ValueError("order must be a permutation of the source indices")
        sources = tuple(self.sources[i] for i in order)
        clean = None
        if self.clean_sources is not None:
            clean = tuple(self.clean_sources[i] for i in order)
        preserved = None
        if self.preserved is not None:
            preserved = frozenset(pos for pos, old in enumerate(order) if old in self.preserved)
        return SourceCollection(sources, clean, preserved)


def alpha_of(n_sources: int, preserved_count: int) -> float:
    """Fraction of corrupted sources, (N - k) / N."""
    n, k = int(n_sources), int(preserved_count)
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= N, got k={k}, N={n}")
    return (n - k) / n


def verify_fixed_set_contract(collection: SourceCollection) -> bool:
    """True iff every preserved source equals its clean copy element-wise."""
    if collection.clean_sources is None or collection.preserved is None:
        raise ContractViolation("ground truth (clean copy and preserved set) required")
    return all(
        collection.sources[i].equals(collection.clean_sources[i])
        for i in collection.preserved
    )


@dataclass(frozen=True)
class SeedStreams:
    """Derives independent, order-insensitive random streams from one master seed.

    Streams are keyed by (purpose tag, trial index), so e.g. adversary
    randomness never perturbs sampling randomness and trials can run in any
    order or process with identical results.
    """

    master_seed: int

    def sequence(self, purpose: str, trial: int = 0) -> np.random.SeedSequence:
        key = zlib.crc32(purpose.encode("utf-8"))
        return np.random.SeedSequence(entropy=self.master_seed, spawn_key=(key, int(trial)))

    def stream(self, purpose: str, trial: int = 0) -> np.random.Generator:
        return np.random.default_rng(self.sequence(purpose, trial))
