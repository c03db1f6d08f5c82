import itertools

import numpy as np
import pytest

from gsvm.core import DataSet


def random_separable(rng, n_points, dim, gap=0.2):
    """Seeded linearly separable data with both classes present.

    Points are drawn uniformly from [-3, 3]^dim and labelled by a random
    hyperplane; points within ``gap`` of it are redrawn.
    """
    w = rng.normal(size=dim)
    w /= np.linalg.norm(w)
    b = rng.uniform(-0.5, 0.5)
    while True:
        X = []
        while len(X) < n_points:
            x = rng.uniform(-3, 3, size=dim)
            if abs(x @ w + b) >= gap:
                X.append(x)
        X = np.array(X)
        y = np.where(X @ w + b > 0, 1, -1)
        if np.any(y == 1) and np.any(y == -1):
            return DataSet(X, y)


def lcp_enumerate(M, c):
    """All solutions of w >= 0, Mw + c >= 0, <w, Mw + c> = 0 by brute force.

    Tries every choice of positive support S and solves (Mw + c)_S = 0 with
    w zero off S.
    """
    M = np.atleast_2d(M)
    n = len(c)
    sols = []
    for r in range(n + 1):
        for S in itertools.combinations(range(n), r):
            w = np.zeros(n)
            if S:
                S = list(S)
                try:
                    w[S] = np.linalg.solve(M[np.ix_(S, S)], -np.asarray(c)[S])
                except np.linalg.LinAlgError:
                    continue
            g = M @ w + c
            if np.all(w >= -1e-12) and np.all(g >= -1e-12) and abs(w @ g) <= 1e-10:
                sols.append(np.maximum(w, 0.0))
    return sols


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# acceptance criteria report -------------------------------------------------

ACCEPTANCE_RESULTS: dict[int, tuple[str, bool, str]] = {}


def record_criterion(number: int, title: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE_RESULTS[number] = (title, passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, passed, detail = ACCEPTANCE_RESULTS[number]
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
