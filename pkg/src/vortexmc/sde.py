"""Seeded Brownian-increment streams and the Euler-Maruyama update.

Increments come from a counter-based generator keyed by
``(master_seed, particle, copy, step)``: a splitmix64-style avalanche
chain produces two 64-bit words per key, mapped to a standard-normal
pair by Box-Muller.  The same key always yields the same pair, whatever
the thread count or evaluation order, which is what makes whole runs
bitwise reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_LANE = np.uint64(0xD6E8FEB86659FD93)
_U53 = np.float64(1.0 / 9007199254740992.0)  # 2**-53


def _mix(x: np.ndarray) -> np.ndarray:
    # splitmix64 finalizer; wraps mod 2**64 (unsigned)
    x = (x ^ (x >> np.uint64(30))) * _MUL1
    x = (x ^ (x >> np.uint64(27))) * _MUL2
    return x ^ (x >> np.uint64(31))


def _raw_words(seed: int, particle, copy, step: int) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(particle, dtype=np.uint64)
    c = np.asarray(copy, dtype=np.uint64)
    with np.errstate(over="ignore"):
        s = _mix(np.uint64(seed) + _GAMMA)
        s = _mix(s ^ (p + _GAMMA))
        s = _mix(s ^ (c + _GAMMA))
        s = _mix(s ^ (np.uint64(step) + _GAMMA))
        return s, _mix(s ^ _LANE)


def _to_unit(w: np.ndarray) -> np.ndarray:
    # (0, 1) exclusive on both ends so log() below is safe
    return (np.asarray(w >> np.uint64(11), dtype=np.float64) + 0.5) * _U53


@dataclass(frozen=True)
class RngPlan:
    """Master seed plus the keying convention for independent substreams."""

    master_seed: int

    def normal_pairs(self, particle, copy, step: int) -> np.ndarray:
        """Standard-normal pairs for the given ids at time step ``step``.

        ``particle`` and ``copy`` may be scalars or integer arrays; the
        result has their broadcast shape plus a trailing axis of 2.
        """
        w0, w1 = _raw_words(self.master_seed, particle, copy, step)
        u0 = _to_unit(w0)
        u1 = _to_unit(w1)
        rad = np.sqrt(-2.0 * np.log(u0))
        ang = (2.0 * np.pi) * u1
        out = np.empty(np.broadcast(u0, u1).shape + (2,), dtype=np.float64)
        out[..., 0] = rad * np.cos(ang)
        out[..., 1] = rad * np.sin(ang)
        return out


def draw_increment(plan: RngPlan, particle_id: int, copy_id: int, step_k: int) -> np.ndarray:
    """One reproducible standard-normal pair for (particle, copy, step)."""
    return plan.normal_pairs(particle_id, copy_id, step_k).reshape(2)


def euler_step(x, drift, nu: float, dt: float, inc) -> np.ndarray:
    """One Euler-Maruyama step: x + dt*drift + sqrt(2 nu dt) * inc."""
    if dt < 0:
        raise ValueError("dt must be non-negative")
    if nu < 0:
        raise ValueError("nu must be non-negative")
    x = np.asarray(x, dtype=np.float64)
    drift = np.asarray(drift, dtype=np.float64)
    inc = np.asarray(inc, dtype=np.float64)
    return x + dt * drift + np.sqrt(2.0 * nu * dt) * inc
