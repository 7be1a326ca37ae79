"""2D point/vector helpers shared by all modules.

Points are plain float64 numpy arrays, either a single ``(2,)`` vector or
a batch ``(n, 2)``.  Both helpers work on either shape.
"""

from __future__ import annotations

import numpy as np

Vec2 = np.ndarray


def as_vec2(z) -> np.ndarray:
    """Coerce a point-like to a float64 array of shape (2,) or (n, 2)."""
    a = np.asarray(z, dtype=np.float64)
    if a.shape[-1] != 2:
        raise ValueError(f"expected a 2D point or batch of points, got shape {a.shape}")
    return a


def perp(z) -> np.ndarray:
    """Rotate by +90 degrees: (a, b) -> (-b, a)."""
    a = as_vec2(z)
    out = np.empty_like(a)
    out[..., 0] = -a[..., 1]
    out[..., 1] = a[..., 0]
    return out


def reflect(z) -> np.ndarray:
    """Mirror across the wall x2 = 0: (a, b) -> (a, -b)."""
    a = as_vec2(z)
    out = a.copy()
    out[..., 1] = -out[..., 1]
    return out
