"""Independent reference computations backing the tests.

Exact radial solutions of the forced-free vorticity transport, dense
quadrature of the singular Biot-Savart integral, finite-difference
differential operators, and a stored-trajectory re-evaluation of the
wall-scheme sums.  Everything here is written straightforwardly and
never calls the optimized summation paths it is used to check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special

from vortexmc.fields import VorticityField
from vortexmc.geometry import as_vec2
from vortexmc.kernels import boundary_mollifier_chi


# ---------------------------------------------------------------------------
# radial solutions of the unforced vorticity equation


def radial_heat_evolution(omega0: VorticityField, nu: float, t: float, r) -> np.ndarray | float:
    """Heat evolution of a radially symmetric vorticity profile.

    For radial vorticity the advection term vanishes identically, so the
    exact evolution is the 2D heat semigroup.  Evaluated by quadrature of
    the radial convolution integral using the scaled Bessel function
    ive(0, .), accurate to ~1e-10 absolute for resolved profiles.
    """
    if nu < 0:
        raise ValueError("nu must be non-negative")
    r = np.asarray(r, dtype=np.float64)
    if t * nu < 1e-14:
        return omega0.eval(np.stack((r, np.zeros_like(r)), axis=-1))
    s_max = omega0.support_radius
    n = 800
    xs, ws = np.polynomial.legendre.leggauss(n)
    s = 0.5 * s_max * (xs + 1.0)
    ws = 0.5 * s_max * ws
    prof = omega0.eval(np.column_stack((s, np.zeros(n))))
    four_nu_t = 4.0 * nu * t
    rr = r[..., None]
    z = rr * s / (2.0 * nu * t)
    kern = np.exp(-((rr - s) ** 2) / four_nu_t) * special.ive(0, z)
    return np.squeeze((2.0 / four_nu_t) * np.sum(ws * s * prof * kern, axis=-1))


def radial_velocity_from_omega(omega_r: Callable[[np.ndarray], np.ndarray], r) -> np.ndarray:
    """Tangential speed from the circulation law u_theta(r) = Gamma(r)/(2 pi r)."""
    r = np.atleast_1d(np.asarray(r, dtype=np.float64))
    out = np.zeros_like(r)
    n = 600
    xs, ws = np.polynomial.legendre.leggauss(n)
    for i, ri in enumerate(r):
        if ri == 0.0:
            continue
        s = 0.5 * ri * (xs + 1.0)
        w = 0.5 * ri * ws
        out[i] = np.sum(w * s * omega_r(s)) / ri
    return np.squeeze(out)


@dataclass(frozen=True)
class RadialSolution:
    """Exact vorticity and tangential velocity of a radial initial condition."""

    omega_exact: Callable[[np.ndarray, float], np.ndarray]
    u_theta_exact: Callable[[np.ndarray, float], np.ndarray]


def gaussian_radial_solution(amplitude: float, width: float, nu: float) -> RadialSolution:
    """Closed-form heat evolution of a Gaussian vortex.

    omega(r, t) = a w^2/(w^2 + 2 nu t) exp(-r^2 / (2 (w^2 + 2 nu t)))
    u_theta(r, t) = a w^2 (1 - exp(-r^2 / (2 (w^2 + 2 nu t)))) / r
    """

    def omega(r, t):
        r = np.asarray(r, dtype=np.float64)
        v = width * width + 2.0 * nu * t
        return amplitude * width * width / v * np.exp(-(r * r) / (2.0 * v))

    def u_theta(r, t):
        r = np.asarray(r, dtype=np.float64)
        v = width * width + 2.0 * nu * t
        with np.errstate(divide="ignore", invalid="ignore"):
            u = amplitude * width * width * -np.expm1(-(r * r) / (2.0 * v)) / r
        return np.where(r == 0.0, 0.0, u)

    return RadialSolution(omega_exact=omega, u_theta_exact=u_theta)


def radial_solution_quadrature(omega0: VorticityField, nu: float) -> RadialSolution:
    """Quadrature-based radial solution, independent of the closed forms."""

    def omega(r, t):
        return radial_heat_evolution(omega0, nu, t, r)

    def u_theta(r, t):
        return radial_velocity_from_omega(lambda s: radial_heat_evolution(omega0, nu, t, s), r)

    return RadialSolution(omega_exact=omega, u_theta_exact=u_theta)


# ---------------------------------------------------------------------------
# dense Biot-Savart quadrature


def dense_biot_savart(
    omega_eval: Callable[[np.ndarray], np.ndarray],
    x,
    support_radius: float,
    n_r: int = 240,
    n_phi: int = 256,
) -> np.ndarray:
    """Direct quadrature of u(x) = int K(x - y) omega(y) dy.

    Uses polar coordinates centered on the evaluation point, which removes
    the 1/|x - y| singularity exactly: the integrand becomes
    (sin phi, -cos phi)/(2 pi) * omega(x + r e_phi), smooth everywhere.
    """
    xv = as_vec2(x).reshape(2)
    rmax = float(np.hypot(xv[0], xv[1])) + support_radius
    if rmax == 0.0:
        return np.zeros(2)
    rr, wr = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * rmax * (rr + 1.0)
    wr = 0.5 * rmax * wr
    phi = (np.arange(n_phi) + 0.5) * (2.0 * math.pi / n_phi)
    wphi = 2.0 * math.pi / n_phi
    cp, sp = np.cos(phi), np.sin(phi)
    pts = np.empty((n_r, n_phi, 2))
    pts[..., 0] = xv[0] + r[:, None] * cp[None, :]
    pts[..., 1] = xv[1] + r[:, None] * sp[None, :]
    w = omega_eval(pts.reshape(-1, 2)).reshape(n_r, n_phi)
    common = wphi / (2.0 * math.pi)
    u1 = common * np.sum(wr[:, None] * sp[None, :] * w)
    u2 = common * np.sum(wr[:, None] * -cp[None, :] * w)
    return np.array([u1, u2])


def fd_divergence(u_probe: Callable[[np.ndarray], np.ndarray], x, step: float) -> float:
    """Central-difference estimate of div u at x."""
    if step <= 0:
        raise ValueError("step must be positive")
    xv = as_vec2(x).reshape(2)
    e1 = np.array([step, 0.0])
    e2 = np.array([0.0, step])
    d1 = np.asarray(u_probe(xv + e1)).reshape(2)[0] - np.asarray(u_probe(xv - e1)).reshape(2)[0]
    d2 = np.asarray(u_probe(xv + e2)).reshape(2)[1] - np.asarray(u_probe(xv - e2)).reshape(2)[1]
    return float((d1 + d2) / (2.0 * step))


# ---------------------------------------------------------------------------
# stored-trajectory re-evaluation of the wall sums


def _kd_halfplane_scalar(x, y, delta):
    # regularized half-plane kernel written out longhand
    if y[1] <= 0.0:
        return np.zeros(2)
    s = x[0] - y[0]
    q = x[1] - y[1]
    p = x[1] + y[1]
    r2 = s * s + q * q
    if r2 == 0.0:
        return np.zeros(2)
    rb2 = s * s + p * p
    f = -math.expm1(-r2 / (delta * delta))
    return (f / (2.0 * math.pi)) * np.array([-q / r2 - p / rb2, s / r2 - s / rb2])


def _theta_halfplane_scalar(y, x1, delta):
    if y[1] <= 0.0:
        return 0.0
    s = y[0] - x1
    rho2 = s * s + y[1] * y[1]
    f = -math.expm1(-rho2 / (delta * delta))
    return f * (s * s - y[1] * y[1]) / (math.pi * rho2 * rho2)


def brute_force_wall_sums(
    trajectories: np.ndarray,
    theta_history: np.ndarray,
    lattice,
    omega_samples: np.ndarray,
    params,
    g_field,
    target,
    t_k: int,
):
    """Re-evaluate the wall-scheme velocity and stress sums from stored paths.

    ``trajectories`` has shape (steps+1, copies, nodes, 2) and
    ``theta_history`` shape (steps+1, wall_nodes).  The survival indicator
    is recomputed explicitly from the stored path: the contribution of time
    level l survives at level k iff the particle sat strictly above the
    wall at every level in l..k.  Returns ``(u, theta)`` at the target
    point / its first coordinate, both at time level k+1.

    Small instances only; refuses more than 1e4 node-steps.
    """
    n_steps, n_copies, n_nodes = trajectories.shape[0] - 1, trajectories.shape[1], trajectories.shape[2]
    if n_nodes * (t_k + 1) > 10_000:
        raise ValueError("brute-force oracle refuses instances above 1e4 node-steps")
    if t_k + 1 > n_steps:
        raise ValueError("t_k beyond stored trajectory range")

    delta, eps, nu, dt = params.delta, params.eps, params.nu, params.dt
    tv = np.asarray(target, dtype=np.float64).reshape(2)
    wall_x1 = lattice_wall_x1(lattice)
    upper = lattice.index2 > 0

    u = np.zeros(2)
    th = 0.0
    for c in range(n_copies):
        for j in np.nonzero(upper)[0]:
            a = lattice.weights[j]
            pos_next = trajectories[t_k + 1, c, j]
            pos_next_mirror = trajectories[t_k + 1, c, lattice.mirror_index[j]]
            w0 = omega_samples[j]
            ku = _kd_halfplane_scalar(tv, pos_next, delta)
            ku_m = _kd_halfplane_scalar(tv, pos_next_mirror, delta)
            tu = _theta_halfplane_scalar(pos_next, tv[0], delta)
            tu_m = _theta_halfplane_scalar(pos_next_mirror, tv[0], delta)
            u += a * (ku - ku_m) * w0
            th += a * (tu - tu_m) * w0
            # forcing and boundary-stress history with the explicit indicator
            acc = 0.0
            for l in range(t_k + 1):
                alive = all(
                    trajectories[m, c, j, 1] > 0.0 for m in range(l, t_k + 1)
                )
                if not alive:
                    continue
                pos_l = trajectories[l, c, j]
                gv = float(g_field.eval(pos_l, l * dt))
                theta_l = np.interp(
                    pos_l[0], wall_x1, theta_history[l], left=theta_history[l][0], right=theta_history[l][-1]
                )
                chi = float(boundary_mollifier_chi(pos_l[1] / eps))
                acc += dt * gv + dt * (nu / (eps * eps)) * chi * theta_l
            u += a * ku * acc
            th += a * tu * acc
    u /= n_copies
    th /= n_copies
    return u, th


def lattice_wall_x1(lattice) -> np.ndarray:
    """Wall-node first coordinates of a wall lattice (boundary i2 = 0 row)."""
    on_wall = (lattice.index2 == 0) & (lattice.tags == 0)
    return np.sort(lattice.nodes[on_wall, 0])
