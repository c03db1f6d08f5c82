"""Variational inequalities over the nonnegative orthant.

Find w >= 0 with <op(w), v - w> >= 0 for every v >= 0. The solution is a
fixed point of ``w ↦ P(w - rho * op(w))`` where P clamps negative components
to zero. For an operator that is L-Lipschitz and alpha-strongly monotone this
map contracts with factor sqrt(1 + rho²L² - 2 rho alpha) whenever
0 < rho < 2 alpha / L².
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ._validation import as_vector, frozen
from .exceptions import ConvergenceError, DimensionError, StepSizeError

RATIO_SLACK = 1e-9
RATIO_MIN_DENOMINATOR = 1e-12
# a step is only used as a ratio denominator when it exceeds this many units
# of round-off at the current iterate; below that the ratio is noise
RATIO_NOISE_FACTOR = 1e11


@dataclass(frozen=True)
class OperatorHandle:
    """A map R^n -> R^n with optional Lipschitz and strong-monotonicity constants.

    ``fn`` must be deterministic. ``dim`` is only needed by the samplers in
    :mod:`gsvm.operators` when the operator itself does not fix a dimension.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    lipschitz: float | None = None
    strong_monotone: float | None = None
    dim: int | None = None
    name: str = "operator"

    def __post_init__(self):
        L, a = self.lipschitz, self.strong_monotone
        if L is not None and not L > 0:
            raise ValueError(f"Lipschitz constant must be positive, got {L}")
        if a is not None and not a > 0:
            raise ValueError(f"strong monotonicity modulus must be positive, got {a}")
        if L is not None and a is not None:
            if a > L * (1 + 1e-12):
                raise ValueError(
                    f"no operator has modulus {a} above its Lipschitz constant {L}")
            object.__setattr__(self, "strong_monotone", min(float(a), float(L)))

    def __call__(self, w) -> np.ndarray:
        out = np.asarray(self.fn(np.asarray(w, dtype=np.float64)), dtype=np.float64)
        if out.shape != np.shape(w):
            raise DimensionError(
                f"{self.name} mapped shape {np.shape(w)} to {out.shape}")
        return out

    @property
    def certified(self) -> bool:
        return self.lipschitz is not None and self.strong_monotone is not None


@dataclass(frozen=True)
class SolverConfig:
    start: np.ndarray
    rho: float | None = None
    tol: float = 1e-10
    max_iter: int = 10**6

    def __post_init__(self):
        object.__setattr__(self, "start", frozen(as_vector(self.start, "start")))
        if self.rho is not None and not self.rho > 0:
            raise ValueError(f"rho must be positive, got {self.rho}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if int(self.max_iter) < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter}")


@dataclass(frozen=True, eq=False)
class SolveReport:
    solution: np.ndarray
    iterations: int
    residual_history: list[float]
    theta: float | None
    converged: bool
    rho: float
    contraction_ratios: list[float] = field(default_factory=list)

    @property
    def max_ratio(self) -> float | None:
        return max(self.contraction_ratios) if self.contraction_ratios else None

    @property
    def within_certificate(self) -> bool | None:
        """Whether every observed ratio respects theta (None without a certificate)."""
        if self.theta is None:
            return None
        return all(r <= self.theta + RATIO_SLACK for r in self.contraction_ratios)


def project_nonneg(x) -> np.ndarray:
    """Nearest point of the nonnegative orthant."""
    return np.maximum(np.asarray(x, dtype=np.float64), 0.0)


def certified_step_bound(lipschitz: float, alpha: float) -> float:
    """Upper end 2 alpha / L² of the step sizes that give a contraction."""
    return 2.0 * alpha / lipschitz**2


def contraction_factor(rho: float, lipschitz: float, alpha: float) -> float:
    # 1 - rho (2 alpha - rho L²) is 1 + rho²L² - 2 rho alpha regrouped so that
    # rho = 2 alpha / L² gives exactly 1
    sq = 1.0 - rho * (2.0 * alpha - rho * lipschitz**2)
    return math.sqrt(max(sq, 0.0))


def default_step(op: OperatorHandle) -> float:
    return op.strong_monotone / op.lipschitz**2


def projection_characterization_check(x, z, samples: int = 200, seed: int = 0,
                                      scale: float | None = None) -> bool:
    """Test ``<z, y - z> >= <x, y - z>`` for sampled y in the orthant.

    The sample always includes the origin and the points obtained by zeroing
    one coordinate of z, followed by ``samples`` seeded uniform draws from
    [0, scale]^n.
    """
    x = as_vector(x, "x")
    z = as_vector(z, "z")
    if x.shape != z.shape:
        raise DimensionError("x and z must have the same length")
    if np.any(z < 0):
        return False
    n = x.shape[0]
    if scale is None:
        scale = 2.0 * (1.0 + float(np.max(np.abs(np.concatenate([x, z])))))
    probes = [np.zeros(n)]
    for i in range(n):
        y = z.copy()
        y[i] = 0.0
        probes.append(y)
    rng = np.random.default_rng(seed)
    probes.extend(rng.uniform(0.0, scale, size=(samples, n)))
    d = z - x
    tol = 1e-12 * (1.0 + np.linalg.norm(x) + np.linalg.norm(z))
    return all(float(d @ (y - z)) >= -tol * (1.0 + np.linalg.norm(y)) for y in probes)


def vi_residual(op: OperatorHandle, w, rho: float) -> float:
    """Distance between w and its image under one projected step."""
    if not rho > 0:
        raise ValueError(f"rho must be positive, got {rho}")
    w = as_vector(w, "w")
    return float(np.linalg.norm(w - project_nonneg(w - rho * op(w))))


def check_stationary(op: OperatorHandle, w, tol: float = 1e-10) -> bool:
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    return float(np.linalg.norm(op(as_vector(w, "w")))) <= tol


def verify_vi_inequality(op: OperatorHandle, w, eta: float = 1.0, samples: int = 200,
                         seed: int = 0, domain: str = "orthant",
                         scale: float = 10.0) -> bool:
    """Sampled test of ``<eta * op(w), v - w> >= 0``.

    ``domain`` is ``"orthant"`` (v uniform in [0, scale]^n) or
    ``"whole-space"`` (v = w + uniform[-scale, scale]^n). Over the whole
    space the inequality can only hold where op(w) = 0.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if not eta > 0:
        raise ValueError(f"eta must be positive, got {eta}")
    w = as_vector(w, "w")
    g = eta * op(w)
    rng = np.random.default_rng(seed)
    n = w.shape[0]
    if domain == "orthant":
        vs = rng.uniform(0.0, scale, size=(samples, n))
    elif domain in ("whole-space", "whole_space"):
        vs = w + rng.uniform(-scale, scale, size=(samples, n))
    else:
        raise ValueError(f"unknown domain {domain!r}")
    tol = 1e-12 * (1.0 + np.linalg.norm(g)) * (1.0 + scale)
    return bool(np.all((vs - w) @ g >= -tol))


def fixed_point_solve(op: OperatorHandle, cfg: SolverConfig, *,
                      best_effort: bool = False) -> SolveReport:
    """Iterate ``w <- P(w - rho * op(w))`` until the step is at most ``cfg.tol``.

    When ``op`` carries both certificates the step size must lie strictly
    inside (0, 2 alpha / L²), otherwise StepSizeError is raised; pass
    ``best_effort=True`` to iterate anyway. Without certificates ``cfg.rho``
    is required and no contraction factor is reported. Running out of
    iterations is not an error: the report has ``converged=False``.
    """
    theta = None
    if op.certified:
        L, alpha = op.lipschitz, op.strong_monotone
        rho = cfg.rho if cfg.rho is not None else default_step(op)
        theta = contraction_factor(rho, L, alpha)
        if not (rho < certified_step_bound(L, alpha) and theta < 1.0):
            if not best_effort:
                raise StepSizeError(
                    f"rho={rho:g} is outside the certified window "
                    f"(0, {certified_step_bound(L, alpha):g}); theta={theta:g}",
                    theta=theta)
            theta = None
    else:
        if cfg.rho is None:
            raise ValueError("rho is required for an operator without certificates")
        rho = cfg.rho

    w = cfg.start.copy()
    history: list[float] = []
    floors: list[float] = []
    converged = False
    eps = np.finfo(np.float64).eps
    for _ in range(int(cfg.max_iter)):
        g = rho * op(w)
        # P(w - g) - w, written without cancelling against w
        d = np.maximum(-g, -w)
        if not np.all(np.isfinite(d)):
            break
        step = float(np.linalg.norm(d))
        history.append(step)
        floors.append(max(RATIO_MIN_DENOMINATOR, RATIO_NOISE_FACTOR * eps * (
            1.0 + float(np.max(np.abs(w))) + float(np.max(np.abs(g))))))
        w = project_nonneg(w + d)
        if step <= cfg.tol:
            converged = True
            break

    ratios = [history[k + 1] / history[k] for k in range(len(history) - 1)
              if history[k] > floors[k]]
    return SolveReport(solution=frozen(w), iterations=len(history),
                       residual_history=history, theta=theta, converged=converged,
                       rho=float(rho), contraction_ratios=ratios)


def uniqueness_probe(op: OperatorHandle, cfg: SolverConfig,
                     starts: Sequence, *, best_effort: bool = False) -> bool:
    """Solve from every start; True iff all solutions agree pairwise.

    Two runs agree when they are within 10 * tol. A run stopped at step size
    tol is only known to lie within tol * theta / (1 - theta) of the fixed
    point, so with a contraction factor the bound widens to twice that when
    it is larger.
    """
    solutions = []
    theta = None
    for start in starts:
        run_cfg = SolverConfig(start=start, rho=cfg.rho, tol=cfg.tol,
                               max_iter=cfg.max_iter)
        report = fixed_point_solve(op, run_cfg, best_effort=best_effort)
        if not report.converged:
            raise ConvergenceError(
                f"no convergence from start {run_cfg.start.tolist()} "
                f"after {report.iterations} iterations")
        solutions.append(report.solution)
        theta = report.theta
    bound = 10.0 * cfg.tol
    if theta is not None and theta < 1.0:
        bound = max(bound, 2.0 * cfg.tol * theta / (1.0 - theta))
    return all(np.linalg.norm(a - b) <= bound
               for i, a in enumerate(solutions) for b in solutions[i + 1:])


def complementarity(op: OperatorHandle, w) -> tuple[float, float, float]:
    """Return (min w, min op(w), |<op(w), w>|) for the orthant conditions."""
    w = as_vector(w, "w")
    g = op(w)
    return float(w.min()), float(g.min()), abs(float(g @ w))
