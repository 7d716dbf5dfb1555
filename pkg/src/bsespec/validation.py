"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np

from .exceptions import DimensionMismatch, ZeroStartVector


def as_square_matrix(m, name="matrix") -> np.ndarray:
    """Coerce to a square complex128 2-D array."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def as_vector(v, n=None, name="vector") -> np.ndarray:
    """Coerce to a 1-D complex128 array, optionally checking its length."""
    arr = np.asarray(v, dtype=np.complex128).ravel()
    if n is not None and arr.size != n:
        raise DimensionMismatch(f"{name} has length {arr.size}, expected {n}")
    return arr


def as_transition_vector(d, n, name="d") -> np.ndarray:
    """Validate a transition vector: correct length and nonzero norm."""
    arr = as_vector(d, n, name)
    if not np.any(arr):
        raise ZeroStartVector(f"{name} is identically zero")
    return arr


def as_grid(omegas, name="omegas") -> np.ndarray:
    """Coerce to an ascending 1-D float64 frequency grid."""
    arr = np.asarray(omegas, dtype=np.float64).ravel()
    if arr.size < 2:
        raise ValueError(f"{name} needs at least two samples")
    if np.any(np.diff(arr) <= 0):
        raise ValueError(f"{name} must be strictly ascending")
    return arr


def frozen(arr: np.ndarray) -> np.ndarray:
    """Return a read-only copy so container types stay immutable."""
    out = np.array(arr, copy=True)
    out.setflags(write=False)
    return out
