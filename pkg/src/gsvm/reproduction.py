"""Re-derive every worked example and compare against its golden values."""

from __future__ import annotations

import math

import numpy as np

from .datasets import EXAMPLE_FAMILIES, FIXTURE_IDS, fixture, gen_family
from .generalized import g_gradient, gsvm_objective_min, gsvm_row_solution, gsvm_train
from .svm import svm_train

EXAMPLE_IDS = ("ex2_2", "ex2_3_s1", "ex2_3_s2", "ex2_3_s3",
               "ex2_11", "ex2_12", "ex2_13", "ex2_14")
MATCH_TOL = 1e-8


def _close(a, b, tol=MATCH_TOL) -> bool:
    return bool(np.all(np.abs(np.asarray(a, float) - np.asarray(b, float)) <= tol))


def reproduce_example(example_id: str, tol: float = MATCH_TOL) -> dict:
    """Train on one example's data and report whether the known answer comes back."""
    if example_id not in EXAMPLE_IDS:
        raise KeyError(f"unknown example {example_id!r}; expected one of {EXAMPLE_IDS}")

    if example_id in EXAMPLE_FAMILIES:
        spec = EXAMPLE_FAMILIES[example_id]
        case = gen_family(spec)
    else:
        spec = None
        case = fixture(example_id)

    model = gsvm_train(case.dataset, active=list(case.support))
    row = gsvm_row_solution(model)
    g_min = gsvm_objective_min(model)
    out = {
        "example": example_id,
        "w": row.w,
        "b": row.b,
        "norm": row.norm,
        "W": model.W,
        "B": model.B,
        "g_min": g_min,
        "g_gradient": g_gradient(row.w),
        "expected": {"w": case.expected_w, "b": case.expected_b,
                     "norm": case.expected_norm},
        "support": list(case.support),
    }
    checks = {
        "gsvm_w": _close(row.w, case.expected_w, tol),
        "gsvm_norm": abs(row.norm - case.expected_norm) <= tol,
        "g_min": _close(g_min, np.full(model.n, case.expected_norm), tol),
    }
    if case.expected_b is not None:
        checks["gsvm_b"] = abs(row.b - case.expected_b) <= tol

    if spec is not None:
        out["family"] = spec.family
        out["margin_feasible"] = case.margin_feasible
        out["notes"] = case.notes
    else:
        sol = svm_train(case.dataset)
        out["svm"] = {"w": sol.w, "b": sol.b, "norm": sol.norm_w,
                      "support_indices": list(sol.support_indices)}
        if example_id == "ex2_14":
            # the example's answer is the all-points margin-equality model
            out["svm"]["matches_gsvm"] = _close(sol.w, row.w, tol)
            checks["g_gradient"] = _close(g_gradient(row.w),
                                          np.array([1, 0, 1]) / math.sqrt(2), tol)
        else:
            checks["svm_w"] = _close(sol.w, case.expected_w, tol)
            checks["svm_b"] = abs(sol.b - case.expected_b) <= tol
            checks["svm_gsvm_agree"] = _close(sol.w, row.w, tol)
    out["checks"] = checks
    out["matches_paper"] = all(checks.values())
    return out


def reproduce_all(tol: float = MATCH_TOL) -> dict:
    results = {eid: reproduce_example(eid, tol) for eid in EXAMPLE_IDS}
    return {"examples": results,
            "all_match": all(r["matches_paper"] for r in results.values())}


__all__ = ["EXAMPLE_IDS", "FIXTURE_IDS", "reproduce_example", "reproduce_all"]
