"""Sampled certification of operator classes.

An operator G: R^n -> R^n is

* L-Lipschitz if ‖G(x) - G(y)‖ <= L ‖x - y‖,
* monotone if <G(x) - G(y), x - y> >= 0,
* strictly monotone if that inner product is positive for x != y,
* alpha-strongly monotone if it is at least alpha ‖x - y‖².

The checks below evaluate these inequalities on seeded random pairs drawn
from [-10, 10]^n, or on caller-supplied pairs. They can refute a property
with a concrete witness, never prove one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._validation import as_vector
from .generalized import g_gradient
from .vi import OperatorHandle

SAMPLE_BOX = 10.0
LIPSCHITZ_SLACK = 1e-12
STRONG_SLACK = 1e-12
STRICT_MARGIN = 1e-12

LIPSCHITZ = "lipschitz"
MONOTONE = "monotone"
STRICTLY_MONOTONE = "strictly_monotone"
STRONGLY_MONOTONE = "strongly_monotone"


@dataclass(frozen=True, eq=False)
class PropertyReport:
    property: str
    holds: bool
    witness: tuple[np.ndarray, np.ndarray] | None = None
    estimate: float | None = None


def affine_operator(a, c) -> OperatorHandle:
    """Operator w ↦ a w + c with exact certificates.

    ``a`` is a scalar or an n×n matrix. For a matrix the Lipschitz constant
    is its spectral norm and the modulus is the smallest eigenvalue of its
    symmetric part (omitted when that is not positive).
    """
    c = as_vector(c, "c")
    n = c.shape[0]
    if np.ndim(a) == 0:
        a = float(a)
        L = abs(a) if a != 0 else None
        alpha = a if a > 0 else None
        return OperatorHandle(lambda w: a * w + c, lipschitz=L, strong_monotone=alpha,
                              dim=n, name=f"affine(a={a:g})")
    M = np.array(a, dtype=np.float64)
    if M.shape != (n, n):
        raise ValueError(f"matrix must be {n}x{n}, got {M.shape}")
    L = float(np.linalg.norm(M, 2))
    sym_min = float(np.linalg.eigvalsh(0.5 * (M + M.T)).min())
    return OperatorHandle(lambda w: M @ w + c, lipschitz=L if L > 0 else None,
                          strong_monotone=sym_min if sym_min > 0 else None,
                          dim=n, name="affine(matrix)")


def norm_gradient_operator(dim: int | None = None) -> OperatorHandle:
    """The unit-direction map w ↦ w / ‖w‖ (undefined at 0)."""
    return OperatorHandle(g_gradient, dim=dim, name="norm-gradient")


def _pairs(op: OperatorHandle, pairs, seed: int, dim: int | None):
    if not isinstance(pairs, (int, np.integer)):
        out = [(as_vector(x, "x"), as_vector(y, "y")) for x, y in pairs]
        if not out:
            raise ValueError("at least one pair is required")
        return out
    if pairs < 1:
        raise ValueError("pairs must be at least 1")
    n = dim if dim is not None else op.dim
    if n is None:
        raise ValueError(f"{op.name} has no fixed dimension; pass dim=")
    rng = np.random.default_rng(seed)
    xs = rng.uniform(-SAMPLE_BOX, SAMPLE_BOX, size=(int(pairs), n))
    ys = rng.uniform(-SAMPLE_BOX, SAMPLE_BOX, size=(int(pairs), n))
    return list(zip(xs, ys))


def _differences(op, pairs):
    """Yield (x, y, dx, dG) for every pair with x != y."""
    for x, y in pairs:
        dx = x - y
        if not np.any(dx):
            continue
        yield x, y, dx, op(x) - op(y)


def check_lipschitz(op: OperatorHandle, L: float, pairs: int | Sequence = 1000,
                    seed: int = 0, dim: int | None = None) -> PropertyReport:
    """Check ‖op(x) - op(y)‖ <= L ‖x - y‖; estimate is the largest ratio seen."""
    if not L > 0:
        raise ValueError(f"L must be positive, got {L}")
    worst, witness = -np.inf, None
    for x, y, dx, dg in _differences(op, _pairs(op, pairs, seed, dim)):
        ratio = np.linalg.norm(dg) / np.linalg.norm(dx)
        if ratio > worst:
            worst, witness = ratio, (x, y)
    if witness is None:
        raise ValueError("every sampled pair had x == y")
    holds = worst <= L + LIPSCHITZ_SLACK
    return PropertyReport(LIPSCHITZ, bool(holds), None if holds else witness,
                          float(worst))


def check_monotone(op: OperatorHandle, pairs: int | Sequence = 1000, seed: int = 0,
                   strict: bool = False, dim: int | None = None) -> PropertyReport:
    """Check <op(x) - op(y), x - y> >= 0 (or > 1e-12 with ``strict``).

    The estimate is the smallest inner product seen.
    """
    worst, witness = np.inf, None
    for x, y, dx, dg in _differences(op, _pairs(op, pairs, seed, dim)):
        ip = float(dg @ dx)
        if ip < worst:
            worst, witness = ip, (x, y)
    if witness is None:
        raise ValueError("every sampled pair had x == y")
    holds = worst > STRICT_MARGIN if strict else worst >= 0.0
    return PropertyReport(STRICTLY_MONOTONE if strict else MONOTONE, bool(holds),
                          None if holds else witness, worst)


def check_strongly_monotone(op: OperatorHandle, alpha: float,
                            pairs: int | Sequence = 1000, seed: int = 0,
                            dim: int | None = None) -> PropertyReport:
    """Check <op(x) - op(y), x - y> >= alpha ‖x - y‖².

    The estimate is the smallest observed ratio <dG, dx> / ‖dx‖²; the witness
    is the pair with the largest violation of the inequality.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    modulus, worst_gap, witness = np.inf, np.inf, None
    for x, y, dx, dg in _differences(op, _pairs(op, pairs, seed, dim)):
        ip = float(dg @ dx)
        sq = float(dx @ dx)
        modulus = min(modulus, ip / sq)
        gap = ip - alpha * sq
        if gap < worst_gap:
            worst_gap, witness = gap, (x, y)
    if witness is None:
        raise ValueError("every sampled pair had x == y")
    holds = worst_gap >= -STRONG_SLACK
    return PropertyReport(STRONGLY_MONOTONE, bool(holds), None if holds else witness,
                          float(modulus))


def class_hierarchy_check(op: OperatorHandle, alpha: float,
                          pairs: int | Sequence = 1000, seed: int = 0,
                          dim: int | None = None) -> bool:
    """On one sample: strongly monotone ⇒ strictly monotone ⇒ monotone."""
    sample = _pairs(op, pairs, seed, dim)
    strong = check_strongly_monotone(op, alpha, sample)
    strict = check_monotone(op, sample, strict=True)
    mono = check_monotone(op, sample)
    return (not strong.holds or strict.holds) and (not strict.holds or mono.holds)


def witness_violation(op: OperatorHandle, report: PropertyReport, *,
                      L: float | None = None, alpha: float | None = None) -> float:
    """Re-evaluate a counterexample; returns by how much it breaks the inequality.

    Positive means the defining inequality fails at the witness.
    """
    if report.witness is None:
        raise ValueError("report has no witness")
    x, y = report.witness
    dx, dg = x - y, op(x) - op(y)
    if report.property == LIPSCHITZ:
        return float(np.linalg.norm(dg) - L * np.linalg.norm(dx))
    if report.property == MONOTONE:
        return float(-(dg @ dx))
    if report.property == STRICTLY_MONOTONE:
        return float(STRICT_MARGIN - dg @ dx)
    return float(alpha * (dx @ dx) - dg @ dx)
