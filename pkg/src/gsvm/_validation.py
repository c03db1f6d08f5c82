"""Input validation helpers shared by the numerical modules."""

from __future__ import annotations

import numpy as np

from .exceptions import DimensionError, LabelError


def as_vector(x, name: str = "x", *, allow_empty: bool = False) -> np.ndarray:
    """Return ``x`` as a finite 1-D float64 array (a copy)."""
    arr = np.array(x, dtype=np.float64)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise DimensionError(f"{name} must be 1-D, got shape {arr.shape}")
    if arr.size == 0 and not allow_empty:
        raise DimensionError(f"{name} must have at least one component")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def as_matrix(a, name: str = "X") -> np.ndarray:
    arr = np.array(a, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[1] == 0:
        raise DimensionError(f"{name} must have at least one column")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def as_labels(y, n_samples: int | None = None) -> np.ndarray:
    """Return labels as an int array, checking every entry is +1 or -1."""
    arr = np.asarray(y)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise DimensionError(f"labels must be 1-D, got shape {arr.shape}")
    if n_samples is not None and arr.shape[0] != n_samples:
        raise DimensionError(
            f"got {arr.shape[0]} labels for {n_samples} points")
    bad = ~np.isin(arr, (1, -1))
    if np.any(bad):
        raise LabelError(f"labels must be +1 or -1, got {arr[bad][0]!r}")
    return arr.astype(np.int64)


def check_same_length(a: np.ndarray, b: np.ndarray, what: str) -> None:
    if a.shape[0] != b.shape[0]:
        raise DimensionError(
            f"{what}: length {a.shape[0]} does not match {b.shape[0]}")


def frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr
