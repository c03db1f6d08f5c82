"""Linear decision functions and margins.

Values here are immutable: arrays are copied on construction and marked
read-only, so every operation is a pure function of its arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from ._validation import as_labels, as_matrix, as_vector, check_same_length, frozen
from .exceptions import DimensionError, LabelError, SingularityError


@dataclass(frozen=True, eq=False)
class LabeledPoint:
    x: np.ndarray
    y: int

    def __post_init__(self):
        object.__setattr__(self, "x", frozen(as_vector(self.x, "x")))
        if self.y not in (1, -1):
            raise LabelError(f"label must be +1 or -1, got {self.y!r}")
        object.__setattr__(self, "y", int(self.y))

    @property
    def dim(self) -> int:
        return self.x.shape[0]


@dataclass(frozen=True, eq=False)
class DataSet:
    """Training points stored row-wise in ``X`` with labels ``y`` in {+1, -1}.

    Use :meth:`from_points` to build one from :class:`LabeledPoint` objects.
    Both-class presence is not enforced here; training routines check it.
    """

    X: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        X = as_matrix(self.X, "X")
        if X.shape[0] == 0:
            raise DimensionError("a dataset needs at least one point")
        y = as_labels(self.y, X.shape[0])
        object.__setattr__(self, "X", frozen(X))
        object.__setattr__(self, "y", frozen(y))

    @classmethod
    def from_points(cls, points: Iterable[LabeledPoint]) -> "DataSet":
        points = list(points)
        if not points:
            raise DimensionError("a dataset needs at least one point")
        dims = {p.dim for p in points}
        if len(dims) != 1:
            raise DimensionError(f"points have mixed dimensions {sorted(dims)}")
        return cls(np.vstack([p.x for p in points]), [p.y for p in points])

    @property
    def dim(self) -> int:
        return self.X.shape[1]

    @property
    def points(self) -> list[LabeledPoint]:
        return list(self)

    def __len__(self) -> int:
        return self.X.shape[0]

    def __iter__(self) -> Iterator[LabeledPoint]:
        for x, y in zip(self.X, self.y):
            yield LabeledPoint(x, int(y))

    def has_both_classes(self) -> bool:
        return bool(np.any(self.y == 1) and np.any(self.y == -1))

    def subset(self, indices) -> "DataSet":
        idx = np.asarray(indices, dtype=int)
        return DataSet(self.X[idx], self.y[idx])

    def same_points(self, other: "DataSet") -> bool:
        """True when both datasets hold the same labelled points, in any order."""
        if self.X.shape != other.X.shape:
            return False

        def key(ds):
            rows = np.column_stack([ds.X, ds.y])
            return rows[np.lexsort(rows.T[::-1])]

        return bool(np.array_equal(key(self), key(other)))


@dataclass(frozen=True, eq=False)
class Hyperplane:
    w: np.ndarray
    b: float

    def __post_init__(self):
        w = as_vector(self.w, "w")
        if not np.any(w):
            raise SingularityError("hyperplane normal w must be nonzero")
        object.__setattr__(self, "w", frozen(w))
        object.__setattr__(self, "b", float(self.b))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.w))

    def scaled(self, c: float) -> "Hyperplane":
        return Hyperplane(c * self.w, c * self.b)


@dataclass(frozen=True, eq=False)
class MarginReport:
    functional: np.ndarray
    geometric: np.ndarray
    min_functional: float
    min_geometric: float


def _checked(h: Hyperplane, x) -> np.ndarray:
    x = as_vector(x, "x")
    check_same_length(x, h.w, "x vs w")
    return x


def decision_value(h: Hyperplane, x) -> float:
    """Evaluate ``<w, x> + b``."""
    return float(np.dot(h.w, _checked(h, x)) + h.b)


def classify(h: Hyperplane, x) -> int:
    # boundary points go to the positive class
    return 1 if decision_value(h, x) >= 0.0 else -1


def functional_margin(h: Hyperplane, p: LabeledPoint) -> float:
    return p.y * decision_value(h, p.x)


def margin_report(h: Hyperplane, ds: DataSet) -> MarginReport:
    """Per-point functional and geometric margins of ``ds`` w.r.t. ``h``."""
    if ds.dim != h.w.shape[0]:
        raise DimensionError(
            f"dataset dimension {ds.dim} does not match w length {h.w.shape[0]}")
    functional = ds.y * (ds.X @ h.w + h.b)
    geometric = functional / h.norm
    return MarginReport(
        functional=frozen(functional),
        geometric=frozen(geometric),
        min_functional=float(functional.min()),
        min_geometric=float(geometric.min()),
    )
