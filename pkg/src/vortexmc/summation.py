"""Direct pairwise kernel summation, numba-compiled.

Each target's sum runs sequentially over the sources in a fixed order, so
results are bitwise identical for any thread count; parallelism is over
targets only.  The Gaussian mollifier factor equals 1.0 exactly in double
precision once its argument exceeds ~38, so the exponential is skipped
there (bit-identical to evaluating it).

No fast multipole or tree acceleration: everything is O(targets*sources),
which is the intended desk-scale design.
"""

from __future__ import annotations

import math
import os

import numba
import numpy as np

_SKIP_ARG = 38.0
_INV_TWO_PI = 1.0 / (2.0 * math.pi)
_INV_PI = 1.0 / math.pi


def set_workers(n: int | None) -> int:
    """Set the summation thread count; returns the count in effect."""
    if n is not None:
        numba.set_num_threads(max(1, int(n)))
    return numba.get_num_threads()


def workers_from_env() -> int:
    """Apply the VORTEXMC_WORKERS environment variable, if set."""
    n = os.environ.get("VORTEXMC_WORKERS")
    return set_workers(int(n) if n else None)


@numba.njit(parallel=True, cache=True)
def free_kernel_sum(targets, sources, coeffs, delta):
    """sum_j coeffs[j] * K_delta(x_i - y_j) with exponent |z|^2/(2 delta^2)."""
    m = targets.shape[0]
    n = sources.shape[0]
    out = np.zeros((m, 2))
    inv2d2 = 1.0 / (2.0 * delta * delta)
    for i in numba.prange(m):
        tx = targets[i, 0]
        ty = targets[i, 1]
        ax = 0.0
        ay = 0.0
        for j in range(n):
            c = coeffs[j]
            if c == 0.0:
                continue
            dx = tx - sources[j, 0]
            dy = ty - sources[j, 1]
            r2 = dx * dx + dy * dy
            if r2 == 0.0:
                continue
            arg = r2 * inv2d2
            if arg > _SKIP_ARG:
                f = 1.0
            else:
                f = -math.expm1(-arg)
            w = c * f * _INV_TWO_PI / r2
            ax += -dy * w
            ay += dx * w
        out[i, 0] = ax
        out[i, 1] = ay
    return out


@numba.njit(parallel=True, cache=True)
def halfplane_kernel_sum(targets, sources, coeffs, delta):
    """sum_j coeffs[j] * K_{D,delta}(x_i, y_j).

    Sources at or below the wall contribute nothing (in-domain indicator).
    Targets must lie in the closed upper half-plane; callers evaluate
    below-wall points through the reflection rule.
    """
    m = targets.shape[0]
    n = sources.shape[0]
    out = np.zeros((m, 2))
    invd2 = 1.0 / (delta * delta)
    for i in numba.prange(m):
        tx = targets[i, 0]
        ty = targets[i, 1]
        ax = 0.0
        ay = 0.0
        for j in range(n):
            c = coeffs[j]
            if c == 0.0:
                continue
            y2 = sources[j, 1]
            if y2 <= 0.0:
                continue
            s = tx - sources[j, 0]
            q = ty - y2
            p = ty + y2
            r2 = s * s + q * q
            if r2 == 0.0:
                continue
            rb2 = s * s + p * p
            arg = r2 * invd2
            if arg > _SKIP_ARG:
                f = 1.0
            else:
                f = -math.expm1(-arg)
            w = c * f * _INV_TWO_PI
            ax += w * (-q / r2 - p / rb2)
            ay += w * (s / r2 - s / rb2)
        out[i, 0] = ax
        out[i, 1] = ay
    return out


@numba.njit(parallel=True, cache=True)
def halfplane_theta_sum(x1_targets, sources, coeffs, delta):
    """sum_j coeffs[j] * Theta_{D,delta}(y_j, x1_i) at wall coordinates x1_i."""
    m = x1_targets.shape[0]
    n = sources.shape[0]
    out = np.zeros(m)
    invd2 = 1.0 / (delta * delta)
    for i in numba.prange(m):
        x1 = x1_targets[i]
        acc = 0.0
        for j in range(n):
            c = coeffs[j]
            if c == 0.0:
                continue
            y2 = sources[j, 1]
            if y2 <= 0.0:
                continue
            s = sources[j, 0] - x1
            rho2 = s * s + y2 * y2
            arg = rho2 * invd2
            if arg > _SKIP_ARG:
                f = 1.0
            else:
                f = -math.expm1(-arg)
            acc += c * f * _INV_PI * (s * s - y2 * y2) / (rho2 * rho2)
        out[i] = acc
    return out


def warmup() -> None:
    """Trigger JIT compilation of all summation kernels."""
    t = np.zeros((1, 2))
    s = np.ones((1, 2))
    c = np.ones(1)
    free_kernel_sum(t, s, c, 0.1)
    halfplane_kernel_sum(t, s, c, 0.1)
    halfplane_theta_sum(np.zeros(1), s, c, 0.1)
