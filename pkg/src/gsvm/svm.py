"""Hard-margin linear SVM.

Two independent solvers for

    minimize ½‖w‖²  subject to  y_i (<w, x_i> + b) ≥ 1  for every i.

``svm_train`` is a primal active-set method started from an LP feasibility
point; ``svm_oracle`` enumerates candidate support subsets and solves each
KKT equality system directly. They share no numerical code beyond the
duplicate handling, so agreement between them is a meaningful check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from ._validation import frozen
from .core import DataSet, Hyperplane
from .exceptions import (
    ConvergenceError,
    EnumerationBoundError,
    InfeasibleError,
    LabelError,
)

DEFAULT_TOL = 1e-9
ORACLE_MAX_POINTS = 12
ORACLE_MAX_DIM = 4


@dataclass(frozen=True, eq=False)
class SvmSolution:
    """Optimal separating hyperplane with its KKT data.

    ``dual_coef`` holds one multiplier per input point, so that
    ``w = sum(dual_coef * y * X)``. ``support_indices`` are the points whose
    margin constraint is active (functional margin 1 within ``tol``),
    which may include points with a zero multiplier.
    """

    hyperplane: Hyperplane
    support_indices: tuple[int, ...]
    objective: float
    norm_w: float
    dual_coef: np.ndarray
    iterations: int = 0

    @property
    def w(self) -> np.ndarray:
        return self.hyperplane.w

    @property
    def b(self) -> float:
        return self.hyperplane.b


def _constraint_rows(X: np.ndarray, y: np.ndarray) -> np.ndarray:
    # row i is y_i * [x_i, 1], so the constraints read A @ [w, b] >= 1
    return y[:, None] * np.column_stack([X, np.ones(X.shape[0])])


def _deduplicate(ds: DataSet) -> np.ndarray:
    """Indices of the first occurrence of every distinct point, in input order.

    Raises InfeasibleError when the same x appears with both labels.
    """
    _, first, inverse = np.unique(
        ds.X, axis=0, return_index=True, return_inverse=True)
    inverse = inverse.reshape(-1)
    for i in range(len(ds)):
        j = first[inverse[i]]
        if ds.y[i] != ds.y[j]:
            raise InfeasibleError(
                f"point {j} and point {i} coincide but carry opposite labels",
                certificate=(int(j), int(i)))
    return np.sort(first)


def _require_both_classes(ds: DataSet) -> None:
    if not ds.has_both_classes():
        raise LabelError("training needs at least one point of each class")


def _assemble(ds: DataSet, keep: np.ndarray, z: np.ndarray,
              lam_kept: np.ndarray, tol: float, iterations: int) -> SvmSolution:
    n = ds.dim
    w, b = z[:n].copy(), float(z[n])
    dual = np.zeros(len(ds))
    dual[keep] = np.maximum(lam_kept, 0.0)
    margins = ds.y * (ds.X @ w + b)
    support = tuple(int(i) for i in np.flatnonzero(np.abs(margins - 1.0) <= tol))
    return SvmSolution(
        hyperplane=Hyperplane(w, b),
        support_indices=support,
        objective=0.5 * float(w @ w),
        norm_w=float(np.linalg.norm(w)),
        dual_coef=frozen(dual),
        iterations=iterations,
    )


def _farkas_certificate(A: np.ndarray) -> np.ndarray:
    """Rows with positive weight in a nonnegative combination A^T mu = 0, sum(mu) = 1."""
    m = A.shape[0]
    res = linprog(
        c=np.zeros(m),
        A_eq=np.vstack([A.T, np.ones((1, m))]),
        b_eq=np.concatenate([np.zeros(A.shape[1]), [1.0]]),
        bounds=[(0, None)] * m,
        method="highs",
    )
    if res.status != 0:
        return np.arange(m)
    return np.flatnonzero(res.x > 1e-9)


def _feasible_start(A: np.ndarray, keep: np.ndarray) -> np.ndarray:
    res = linprog(
        c=np.zeros(A.shape[1]),
        A_ub=-A,
        b_ub=-np.ones(A.shape[0]),
        bounds=[(None, None)] * A.shape[1],
        method="highs",
    )
    if res.status == 0:
        z = res.x
        worst = float(np.min(A @ z))
        if worst > 0:
            return z / worst
    cert = keep[_farkas_certificate(A)]
    raise InfeasibleError(
        "data are not linearly separable; the convex hulls of the two classes "
        f"intersect on points {sorted(int(i) for i in cert)}",
        certificate=tuple(sorted(int(i) for i in cert)))


def _independent_subset(rows: np.ndarray, candidates) -> list[int]:
    chosen: list[int] = []
    for i in candidates:
        trial = chosen + [int(i)]
        if np.linalg.matrix_rank(rows[trial]) == len(trial):
            chosen = trial
    return chosen


def _solve_eqp(A_w: np.ndarray, z: np.ndarray, n: int):
    """Step p and multipliers for min ½‖w + p_w‖² s.t. A_w p = 0."""
    dim = z.shape[0]
    k = A_w.shape[0]
    H = np.zeros((dim, dim))
    H[:n, :n] = np.eye(n)
    K = np.zeros((dim + k, dim + k))
    K[:dim, :dim] = H
    K[:dim, dim:] = -A_w.T
    K[dim:, :dim] = A_w
    rhs = np.concatenate([-H @ z, np.zeros(k)])
    sol = np.linalg.lstsq(K, rhs, rcond=None)[0]
    return sol[:dim], sol[dim:]


def svm_train(ds: DataSet, tol: float = DEFAULT_TOL) -> SvmSolution:
    """Solve the hard-margin primal problem exactly by a primal active-set method.

    Parameters
    ----------
    ds : DataSet
        Training data with both labels present.
    tol : float
        Feasibility and complementarity tolerance.

    Returns
    -------
    SvmSolution

    Raises
    ------
    InfeasibleError
        If the classes cannot be separated; ``certificate`` names points
        whose class convex hulls intersect.
    """
    _require_both_classes(ds)
    keep = _deduplicate(ds)
    X, y = ds.X[keep], ds.y[keep].astype(float)
    n = ds.dim
    A = _constraint_rows(X, y)
    z = _feasible_start(A, keep)

    slack = A @ z - 1.0
    work = _independent_subset(A, np.flatnonzero(slack <= tol))
    max_iter = 50 * (A.shape[0] + n + 1)
    for it in range(1, max_iter + 1):
        p, lam = _solve_eqp(A[work], z, n)
        if np.linalg.norm(p) <= 1e-12 * (1.0 + np.linalg.norm(z)):
            z = z + p
            if not work or lam.min() >= -tol:
                lam_all = np.zeros(A.shape[0])
                lam_all[work] = lam
                return _assemble(ds, keep, z, lam_all, tol, it)
            work.pop(int(np.argmin(lam)))
            continue
        Ap = A @ p
        slack = A @ z - 1.0
        step, blocking = 1.0, None
        for i in range(A.shape[0]):
            if i in work or Ap[i] >= -1e-14:
                continue
            ratio = max(slack[i], 0.0) / -Ap[i]
            if ratio < step:
                step, blocking = ratio, i
        z = z + step * p
        if blocking is not None:
            work.append(blocking)
    raise ConvergenceError(f"active-set method did not finish in {max_iter} iterations")


def svm_oracle(ds: DataSet, tol: float = DEFAULT_TOL) -> SvmSolution:
    """Brute-force reference solver for small instances.

    Enumerates every support subset of size 2 to dim+1 (in lexicographic
    order), solves its KKT equality system, and keeps the primal- and
    dual-feasible candidate with the smallest objective. The first subset
    wins ties.
    """
    if len(ds) > ORACLE_MAX_POINTS or ds.dim > ORACLE_MAX_DIM:
        raise EnumerationBoundError(
            f"oracle handles at most {ORACLE_MAX_POINTS} points in dimension "
            f"{ORACLE_MAX_DIM}; got {len(ds)} points in dimension {ds.dim}")
    _require_both_classes(ds)
    keep = _deduplicate(ds)
    X, y = ds.X[keep], ds.y[keep].astype(float)
    m, n = X.shape

    best = None
    for size in range(2, min(n + 1, m) + 1):
        for subset in itertools.combinations(range(m), size):
            S = list(subset)
            ys = y[S]
            if np.all(ys == ys[0]):
                continue
            # unknowns: w (n), b, lambda_S (size)
            dim = n + 1 + size
            M = np.zeros((dim, dim))
            rhs = np.zeros(dim)
            M[:n, :n] = np.eye(n)
            M[:n, n + 1:] = -(ys[:, None] * X[S]).T
            M[n, n + 1:] = ys
            M[n + 1:, :n] = ys[:, None] * X[S]
            M[n + 1:, n] = ys
            rhs[n + 1:] = 1.0
            u = np.linalg.lstsq(M, rhs, rcond=None)[0]
            if np.max(np.abs(M @ u - rhs)) > 1e-9:
                continue
            w, b, lam = u[:n], u[n], u[n + 1:]
            if lam.min() < -tol:
                continue
            if np.min(y * (X @ w + b)) < 1.0 - tol:
                continue
            obj = 0.5 * float(w @ w)
            if best is None or obj < best[0] - 1e-12 * (1.0 + best[0]):
                lam_all = np.zeros(m)
                lam_all[S] = lam
                best = (obj, np.concatenate([w, [b]]), lam_all)
    if best is None:
        raise InfeasibleError("no support subset yields a feasible KKT point")
    return _assemble(ds, keep, best[1], best[2], tol, 0)
