"""Closed-form kernels and mollifiers.

Free-space and half-plane Biot-Savart kernels, their Gaussian
regularizations, the localization cutoff, the boundary mollifier and the
boundary-stress kernel.  All functions are pure; the batch variants
(``*_many``) accept ``(n, 2)`` arrays and are what the oracles use.

Two Gaussian regularizations coexist on purpose: the free-space kernel
uses exponent ``|z|^2 / (2 delta^2)`` while the wall kernels use
``|z|^2 / delta^2``.  Each scheme picks its own form.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from vortexmc.geometry import as_vec2

TWO_PI = 2.0 * math.pi

# exp(-x) underflows the 1 ulp of (1 - exp(-x)) beyond this; the factor is
# exactly 1.0 in float64, so summation code may skip the exp there.
EXP_NEGLIGIBLE_ARG = 38.0


@dataclass(frozen=True)
class KernelParams:
    """Regularization length, cutoff radius and boundary-mollifier thickness."""

    delta: float
    big_r: float
    epsilon: float

    def __post_init__(self):
        if self.delta <= 0 or self.big_r <= 0 or self.epsilon <= 0:
            raise ValueError("delta, big_r and epsilon must all be strictly positive")
        if self.delta >= 0.25 * self.big_r:
            warnings.warn(
                f"regularization length delta={self.delta} is not small against "
                f"cutoff radius big_r={self.big_r}",
                stacklevel=2,
            )


def biot_savart_free(z) -> np.ndarray:
    """Singular free-space kernel z_perp / (2 pi |z|^2).

    Raises
    ------
    ValueError
        At the singular point z = 0.
    """
    a = as_vec2(z)
    r2 = a[..., 0] ** 2 + a[..., 1] ** 2
    if np.any(r2 == 0.0):
        raise ValueError("free-space Biot-Savart kernel is singular at z = 0")
    out = np.empty_like(a)
    c = 1.0 / (TWO_PI * r2)
    out[..., 0] = -a[..., 1] * c
    out[..., 1] = a[..., 0] * c
    return out


def biot_savart_regularized(z, delta: float) -> np.ndarray:
    """Mollified free-space kernel (1 - exp(-|z|^2 / 2 delta^2)) K(z).

    Total function: the Gaussian factor vanishes to second order at z = 0,
    beating the 1/|z| singularity, so the value there is (0, 0).
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    a = as_vec2(z)
    r2 = a[..., 0] ** 2 + a[..., 1] ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        factor = -np.expm1(-r2 / (2.0 * delta * delta))
        c = np.where(r2 > 0.0, factor / (TWO_PI * np.where(r2 > 0.0, r2, 1.0)), 0.0)
    out = np.empty_like(a)
    out[..., 0] = -a[..., 1] * c
    out[..., 1] = a[..., 0] * c
    return out


def epsilon_delta(z, delta: float) -> np.ndarray | float:
    """Regularization-error envelope exp(-|z|^2 / 2 delta^2).

    Bounds |K_delta(z) - K(z)| * |z| pointwise.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    a = as_vec2(z)
    r2 = a[..., 0] ** 2 + a[..., 1] ** 2
    return np.exp(-r2 / (2.0 * delta * delta))


def _smoothstep(t):
    """Quintic smoothstep 6t^5 - 15t^4 + 10t^3, clamped to [0, 1]; C^2."""
    t = np.clip(t, 0.0, 1.0)
    return t * t * t * (t * (6.0 * t - 15.0) + 10.0)


def cutoff_chi_r(z, big_r: float) -> np.ndarray | float:
    """Localization cutoff: 1 for |z| <= R, 0 for |z| >= R + 1, C^2 between."""
    if big_r <= 0:
        raise ValueError("big_r must be positive")
    a = as_vec2(z)
    r = np.hypot(a[..., 0], a[..., 1])
    return _smoothstep(big_r + 1.0 - r)


def taper_radial(r, r_inner: float, r_outer: float) -> np.ndarray | float:
    """C^2 radial taper: 1 for r <= r_inner, 0 for r >= r_outer."""
    if not r_outer > r_inner:
        raise ValueError("taper needs r_outer > r_inner")
    r = np.asarray(r, dtype=np.float64)
    return _smoothstep((r_outer - r) / (r_outer - r_inner))


def halfplane_kernel(x, y) -> np.ndarray:
    """Image-charge kernel for the upper half-plane.

    K(x, y) = (1/2pi) [ (x-y)_perp / |x-y|^2 - (xbar-y)_perp / |xbar-y|^2 ]
    with xbar the mirror of the evaluation point x.  Vanishes identically
    for x on the wall (the two terms coincide and cancel).

    Raises
    ------
    ValueError
        At the singular points y = x and y = xbar.
    """
    xv = as_vec2(x)
    yv = as_vec2(y)
    s = xv[..., 0] - yv[..., 0]
    q = xv[..., 1] - yv[..., 1]
    p = xv[..., 1] + yv[..., 1]
    r2 = s * s + q * q
    rb2 = s * s + p * p
    if np.any(r2 == 0.0) or np.any(rb2 == 0.0):
        raise ValueError("half-plane kernel is singular at y = x and y = reflect(x)")
    out = np.empty(np.broadcast(s, q).shape + (2,), dtype=np.float64)
    out[..., 0] = (-q / r2 - p / rb2) / TWO_PI
    out[..., 1] = (s / r2 - s / rb2) / TWO_PI
    return out


def halfplane_kernel_regularized(x, y, delta: float) -> np.ndarray:
    """Regularized half-plane kernel with in-domain indicator on the particle.

    1_{y2 > 0} (1 - exp(-|y-x|^2 / delta^2)) K(x, y).  Total except at the
    image point y = reflect(x) with y in the domain, which cannot occur for
    an evaluation point in the closed upper half-plane.

    Raises
    ------
    ValueError
        If y is in the domain and equals reflect(x).
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    xv = as_vec2(x)
    yv = as_vec2(y)
    s = xv[..., 0] - yv[..., 0]
    q = xv[..., 1] - yv[..., 1]
    p = xv[..., 1] + yv[..., 1]
    r2 = s * s + q * q
    rb2 = s * s + p * p
    inside = yv[..., 1] > 0.0
    if np.any((rb2 == 0.0) & inside):
        raise ValueError("image singularity: y = reflect(x) with y inside the domain")
    factor = -np.expm1(-r2 / (delta * delta))
    with np.errstate(divide="ignore", invalid="ignore"):
        safe_r2 = np.where(r2 > 0.0, r2, 1.0)
        safe_rb2 = np.where(rb2 > 0.0, rb2, 1.0)
        k1 = np.where(r2 > 0.0, factor * (-q / safe_r2 - p / safe_rb2), 0.0)
        k2 = np.where(r2 > 0.0, factor * (s / safe_r2 - s / safe_rb2), 0.0)
    out = np.empty(np.broadcast(s, q).shape + (2,), dtype=np.float64)
    out[..., 0] = np.where(inside, k1 / TWO_PI, 0.0)
    out[..., 1] = np.where(inside, k2 / TWO_PI, 0.0)
    return out


def boundary_stress_kernel(y, x1, delta: float) -> np.ndarray | float:
    """Wall derivative of the regularized half-plane kernel's first component.

    Theta(y, x1) = -d/dx2 at x2 = 0+ of K^1_{D,delta}((x1, x2), y), evaluated
    analytically:

        (1/pi) 1_{y2 > 0} (1 - exp(-rho^2/delta^2)) (s^2 - y2^2) / rho^4

    with s = y1 - x1 and rho^2 = s^2 + y2^2.  The normative definition is
    agreement with a central finite difference of K^1_{D,delta}; see the
    oracle tests.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    yv = as_vec2(y)
    x1 = np.asarray(x1, dtype=np.float64)
    s = yv[..., 0] - x1
    y2 = yv[..., 1]
    rho2 = s * s + y2 * y2
    factor = -np.expm1(-rho2 / (delta * delta))
    with np.errstate(divide="ignore", invalid="ignore"):
        val = factor * (s * s - y2 * y2) / np.where(rho2 > 0.0, rho2 * rho2, 1.0)
    return np.where(y2 > 0.0, val / math.pi, 0.0)


def boundary_mollifier_chi(r) -> np.ndarray | float:
    """Piecewise-linear boundary mollifier: 162 (2r - 1) on [1/3, 2/3], else 0.

    Integrates to zero over [0, 1].
    """
    r = np.asarray(r, dtype=np.float64)
    band = (r >= 1.0 / 3.0) & (r <= 2.0 / 3.0)
    return np.where(band, 162.0 * (2.0 * r - 1.0), 0.0)
