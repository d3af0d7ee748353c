"""Input validation helpers shared across the package."""

import math

import numpy as np


def check_positive(value, name: str):
    """Require a finite value > 0."""
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be positive and finite, got {value!r}")
    return value


def check_positive_or_inf(value, name: str):
    """Require value > 0, allowing the far-field sentinel +inf."""
    if math.isinf(value) and value > 0:
        return value
    return check_positive(value, name)


def check_angle(theta: float, name: str = "theta"):
    """Require an angle strictly inside (-pi/2, pi/2)."""
    if not (-math.pi / 2 < theta < math.pi / 2):
        raise ValueError(f"{name} must lie in (-pi/2, pi/2), got {theta!r}")
    return theta


def as_complex_vector(x, name: str = "x") -> np.ndarray:
    """Coerce to a 1-D complex128 array."""
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {arr.shape}")
    return arr


def as_complex_matrix(x, name: str = "x") -> np.ndarray:
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    return arr


def check_consistent_length(a, b, name_a: str, name_b: str):
    if len(a) != len(b):
        raise ValueError(
            f"{name_a} and {name_b} have inconsistent lengths: {len(a)} vs {len(b)}"
        )
