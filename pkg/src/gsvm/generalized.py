"""Generalized SVM with a matrix-valued control function F(x) = W x + B.

Each label is broadcast to a constant vector (y, ..., y), and the margin
constraint ``y_k * (W x_k + B) = 1`` is read componentwise. Row i of W and
component i of B then face the same scalar system as a classical SVM with
all points active, so a trained model has identical rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import as_vector, check_same_length, frozen
from .core import DataSet, Hyperplane, LabeledPoint
from .exceptions import (
    DimensionError,
    InconsistentSystemError,
    LabelError,
    NotCollapsibleError,
    SingularityError,
)


@dataclass(frozen=True, eq=False)
class GsvmModel:
    """Parameters of the control function.

    ``rank_deficient`` is set by :func:`gsvm_train` when the margin system
    did not pin down a unique row and the minimum-norm solution was taken;
    ``residual`` is the max-abs residual of that system.
    """

    W: np.ndarray
    B: np.ndarray
    rank_deficient: bool = False
    residual: float = 0.0

    def __post_init__(self):
        W = np.array(self.W, dtype=np.float64)
        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise DimensionError(f"W must be square, got shape {W.shape}")
        B = as_vector(self.B, "B")
        check_same_length(B, W, "B vs rows of W")
        object.__setattr__(self, "W", frozen(W))
        object.__setattr__(self, "B", frozen(B))

    @property
    def n(self) -> int:
        return self.W.shape[0]

    def rows_equal(self, tol: float = 1e-10) -> bool:
        return bool(np.all(np.abs(self.W - self.W[0]) <= tol)
                    and np.all(np.abs(self.B - self.B[0]) <= tol))


@dataclass(frozen=True, eq=False)
class GsvmMargin:
    """Componentwise slack ``eta = y * (W x + B) - 1``.

    ``feasible`` is the strict test (every component > 0). Support points of a
    trained model sit at eta = 0, so use :meth:`weakly_feasible` for the
    non-strict form.
    """

    eta: np.ndarray
    feasible: bool

    def weakly_feasible(self, tol: float = 1e-12) -> bool:
        return bool(np.all(self.eta >= -tol))


def label_vector(y: int, n: int) -> np.ndarray:
    if y not in (1, -1):
        raise LabelError(f"label must be +1 or -1, got {y!r}")
    return np.full(n, float(y))


def control_apply(m: GsvmModel, x) -> np.ndarray:
    x = as_vector(x, "x")
    if x.shape[0] != m.n:
        raise DimensionError(f"x has length {x.shape[0]}, model expects {m.n}")
    return m.W @ x + m.B


def gsvm_margin(m: GsvmModel, p: LabeledPoint) -> GsvmMargin:
    eta = label_vector(p.y, m.n) * control_apply(m, p.x) - 1.0
    return GsvmMargin(eta=frozen(eta), feasible=bool(np.all(eta > 0)))


def g_value(w_i) -> np.ndarray:
    """Norm map: the constant vector (‖w_i‖, ..., ‖w_i‖)."""
    w_i = as_vector(w_i, "w_i")
    return np.full(w_i.shape[0], np.linalg.norm(w_i))


def g_gradient(w_i) -> np.ndarray:
    """Gradient of w ↦ ‖w‖, i.e. the unit vector w / ‖w‖."""
    w_i = as_vector(w_i, "w_i")
    norm = np.linalg.norm(w_i)
    if norm == 0.0:
        raise SingularityError("the norm map is not differentiable at the zero vector")
    return w_i / norm


def gsvm_train(ds: DataSet, tol: float = 1e-9, active="all") -> GsvmModel:
    """Fit W and B from the margin-equality system.

    Every point in ``active`` contributes the equation
    ``y_k * (<w_i, x_k> + b_i) = 1`` to every row i. ``active`` is ``"all"``
    (the default), ``"svm"`` (the active constraints of the hard-margin
    solution), a list of indices, or a boolean mask. The stacked system is
    solved in the least-squares sense; a residual above ``tol`` means the
    chosen points cannot all sit on the margin and raises
    InconsistentSystemError. Underdetermined systems return the minimum-norm
    rows and set ``rank_deficient``.
    """
    if not ds.has_both_classes():
        raise LabelError("training needs at least one point of each class")
    n = ds.dim
    if active is None or (isinstance(active, str) and active == "all"):
        idx = np.arange(len(ds))
    elif isinstance(active, str) and active == "svm":
        from .svm import svm_train

        idx = np.asarray(svm_train(ds, tol=tol).support_indices)
    elif isinstance(active, str):
        raise ValueError(f"unknown active-set mode {active!r}")
    else:
        idx = np.asarray(active)
        if idx.dtype == bool:
            if idx.shape[0] != len(ds):
                raise DimensionError("active mask length must match the dataset")
            idx = np.flatnonzero(idx)
        if idx.size == 0:
            raise ValueError("at least one active point is required")
    X, y = ds.X[idx], ds.y[idx].astype(float)
    A = y[:, None] * np.column_stack([X, np.ones(len(idx))])
    # one right-hand-side column per row of W; all columns are identical
    rhs = np.ones((len(idx), n))
    Z, _, rank, _ = np.linalg.lstsq(A, rhs, rcond=None)
    residual = float(np.max(np.abs(A @ Z - rhs)))
    if residual > tol:
        raise InconsistentSystemError(
            f"margin-equality system is inconsistent (max residual {residual:.3e})",
            residual=residual)
    return GsvmModel(W=Z[:n].T, B=Z[n], rank_deficient=bool(rank < n + 1),
                     residual=residual)


def gsvm_objective_min(m: GsvmModel) -> np.ndarray:
    """Componentwise minimum of the norm map over the rows of W.

    Each G(w_i) is a constant vector, so the rows are always comparable and
    the minimum is the constant vector of the smallest row norm.
    """
    return np.min(np.vstack([g_value(row) for row in m.W]), axis=0)


def gsvm_row_solution(m: GsvmModel, tol: float = 1e-9) -> Hyperplane:
    """Collapse a model with equal rows to the classical (w, b)."""
    row_gap = float(np.max(np.abs(m.W - m.W[0])))
    b_gap = float(np.max(np.abs(m.B - m.B[0])))
    if row_gap > tol or b_gap > tol:
        raise NotCollapsibleError(
            f"rows of W differ by {row_gap:.3e} and B by {b_gap:.3e} (tol {tol:g})")
    return Hyperplane(m.W[0], m.B[0])
