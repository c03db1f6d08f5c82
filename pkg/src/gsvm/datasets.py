"""Worked-example fixtures and parametric dataset families with known solutions.

Families
--------
A
    Positives are the n copies of (alpha_1, ..., alpha_n) with one coordinate
    zeroed (last coordinate first); negatives are the same points times k.
B
    Positives keep m cyclically consecutive alphas starting at each of the n
    coordinates; negatives are the same points times k.
C
    n = 3. Positives alpha_i e_i and beta_i e_i, negatives k times those. Only
    the alpha points are margin-equality points.

Each family has w = c (1/alpha_1, ..., 1/alpha_n) with c = 2/((n-1)(1-k)),
2/(m(1-k)) and 2/(1-k) respectively, and b = -(1+k)/(1-k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._validation import as_vector, frozen
from .core import DataSet
from .exceptions import GenerationError

FIXTURE_IDS = ("ex2_2", "ex2_3_s1", "ex2_3_s2", "ex2_3_s3", "ex2_14")
CONSISTENCY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class FamilySpec:
    family: str
    n: int
    alphas: np.ndarray
    k: float
    m: int | None = None
    betas: np.ndarray | None = None

    def __post_init__(self):
        if self.family not in ("A", "B", "C"):
            raise GenerationError(f"unknown family {self.family!r}")
        alphas = frozen(as_vector(self.alphas, "alphas"))
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "k", float(self.k))
        if self.n < 2:
            raise GenerationError("n must be at least 2")
        if alphas.shape[0] != self.n:
            raise GenerationError(f"alphas must have length n={self.n}")
        if np.any(alphas == 0):
            raise GenerationError("every alpha must be nonzero")
        if self.k == 1.0:
            raise GenerationError("k = 1 makes the two classes coincide")
        if self.family == "B":
            if self.m is None or not 1 <= self.m < self.n:
                raise GenerationError(f"family B needs 1 <= m < n, got m={self.m}")
        if self.family == "C":
            if self.n != 3:
                raise GenerationError("family C is three-dimensional")
            if self.betas is None:
                raise GenerationError("family C needs betas")
            betas = frozen(as_vector(self.betas, "betas"))
            if betas.shape[0] != 3:
                raise GenerationError("betas must have length 3")
            if np.any(alphas <= 0) or np.any(betas < alphas):
                raise GenerationError("family C needs 0 < alpha_i <= beta_i")
            if self.k <= 0:
                raise GenerationError("family C needs k > 0")
            object.__setattr__(self, "betas", betas)

    @property
    def prefactor(self) -> float:
        if self.family == "A":
            return 2.0 / ((self.n - 1) * (1.0 - self.k))
        if self.family == "B":
            return 2.0 / (self.m * (1.0 - self.k))
        return 2.0 / (1.0 - self.k)


@dataclass(frozen=True, eq=False)
class GoldenCase:
    """A dataset with its known solution.

    ``support`` lists the points used as margin equalities when training
    the generalized model. ``margin_feasible`` reports whether the expected
    hyperplane gives every point functional margin >= 1.
    """

    dataset: DataSet
    expected_w: np.ndarray
    expected_b: float | None
    expected_norm: float
    support: tuple[int, ...]
    margin_feasible: bool = True
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "expected_w", frozen(as_vector(self.expected_w)))
        norm = float(np.linalg.norm(self.expected_w))
        if abs(self.expected_norm - norm) > 1e-12 * max(1.0, norm):
            raise GenerationError("expected_norm disagrees with expected_w")


def _case(X, y, w, b, support=None, **kw) -> GoldenCase:
    ds = DataSet(np.array(X, dtype=float), y)
    w = np.array(w, dtype=float)
    if support is None:
        support = tuple(range(len(ds)))
    return GoldenCase(ds, w, b, float(np.linalg.norm(w)), support=support, **kw)


def fixture(example_id: str) -> GoldenCase:
    """Exact point sets of the two-class worked examples with their solutions."""
    if example_id == "ex2_2":
        return _case([[1, 0], [0, 1], [-1, 0], [0, -1]], [1, 1, -1, -1],
                     [1, 1], 0.0)
    if example_id == "ex2_3_s1":
        return _case([[1, 0], [0, 1], [-0.5, 0], [0, -0.5]], [1, 1, -1, -1],
                     [4 / 3, 4 / 3], -1 / 3)
    if example_id == "ex2_3_s2":
        return _case([[0.5, 0], [0, 0.5], [-2, 0], [0, -2]], [1, 1, -1, -1],
                     [4 / 5, 4 / 5], 3 / 5)
    if example_id == "ex2_3_s3":
        X = [[1, 0], [0, 1], [-0.5, 0], [0, -0.5],
             [0.5, 0], [0, 0.5], [-2, 0], [0, -2]]
        # only the four inner points sit on the margin
        return _case(X, [1, 1, -1, -1, 1, 1, -1, -1], [2, 2], 0.0,
                     support=(2, 3, 4, 5))
    if example_id == "ex2_14":
        X = [[1, 0, 0], [1, 1, 0], [0, 1, 1],
             [-0.5, 0, 0], [-0.5, -0.5, 0], [0, -0.5, -0.5]]
        # the margin-equality model, not the max-margin hyperplane: the latter
        # is (4/3, 2/3, 2/3) with a smaller norm
        return _case(X, [1, 1, 1, -1, -1, -1], [4 / 3, 0, 4 / 3], -1 / 3,
                     notes={"svm_optimum_differs": True})
    raise KeyError(f"unknown example id {example_id!r}; expected one of {FIXTURE_IDS}")


def _positive_patterns(spec: FamilySpec) -> np.ndarray:
    n, a = spec.n, spec.alphas
    if spec.family == "A":
        rows = []
        for j in range(n - 1, -1, -1):
            row = a.copy()
            row[j] = 0.0
            rows.append(row)
        return np.array(rows)
    if spec.family == "B":
        rows = []
        for start in range(n):
            row = np.zeros(n)
            idx = [(start + t) % n for t in range(spec.m)]
            row[idx] = a[idx]
            rows.append(row)
        return np.array(rows)
    return np.vstack([np.diag(a), np.diag(spec.betas)])


def gen_family(spec: FamilySpec) -> GoldenCase:
    """Build the family dataset and its closed-form solution.

    The intercept is back-substituted from the first support point and
    checked against every other support point; disagreement above 1e-9
    raises GenerationError.
    """
    pos = _positive_patterns(spec)
    X = np.vstack([pos, spec.k * pos])
    y = np.concatenate([np.ones(len(pos), int), -np.ones(len(pos), int)])
    ds = DataSet(X, y)

    c = spec.prefactor
    w = c / spec.alphas
    if spec.family == "C":
        support = (0, 1, 2, 6, 7, 8)
    else:
        support = tuple(range(len(ds)))

    intercepts = [ds.y[i] - float(ds.X[i] @ w) for i in support]
    spread = max(intercepts) - min(intercepts)
    if spread > CONSISTENCY_TOL * (1.0 + abs(intercepts[0])):
        raise GenerationError(
            f"intercept varies by {spread:.3e} across support points of family "
            f"{spec.family}; the point pattern does not match the closed form")
    b = intercepts[0]
    margins = ds.y * (ds.X @ w + b)
    notes = {"family": spec.family, "prefactor": c}
    if spec.family == "B":
        notes["norm_prefactor_as_printed"] = 2.0 / ((spec.n - 1) * (1.0 - spec.k))
        # the cyclic band matrix is singular when gcd(n, m) > 1, so the
        # margin equalities alone do not determine w
        notes["determined"] = math.gcd(spec.n, spec.m) == 1
    return GoldenCase(
        dataset=ds,
        expected_w=w,
        expected_b=b,
        expected_norm=abs(c) * math.sqrt(float(np.sum(1.0 / spec.alphas**2))),
        support=support,
        margin_feasible=bool(np.all(margins >= 1.0 - CONSISTENCY_TOL)),
        notes=notes,
    )


# representative members used when reproducing the parametric examples
EXAMPLE_FAMILIES = {
    "ex2_11": FamilySpec("A", 3, np.array([1.0, 2.0, 4.0]), k=-1.0),
    "ex2_12": FamilySpec("B", 3, np.array([1.0, 2.0, 3.0]), k=-1.0, m=2),
    "ex2_13": FamilySpec("C", 3, np.array([1.0, 2.0, 3.0]), k=0.5,
                         betas=np.array([1.5, 2.0, 4.0])),
}
