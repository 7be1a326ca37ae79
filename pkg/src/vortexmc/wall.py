"""Wall-bounded half-plane schemes.

Particles follow the SDE in all of R^2 and are never killed or
reflected; the wall enters through three mechanisms:

* the kernel's in-domain indicator silences particles currently below
  the wall;
* reset-on-exit accumulators realize the last-exit survival indicator:
  a particle's forcing and boundary-stress integrals restart from zero
  whenever it sits at or below the wall;
* the boundary vorticity array is regenerated each step from the
  wall-derivative kernel and feeds the next step's stress integrand.

The velocity field extends below the wall by reflection (even first
component, odd second).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from vortexmc.fields import ForcingField, WallExperimentSetup
from vortexmc.geometry import as_vec2
from vortexmc.kernels import boundary_mollifier_chi
from vortexmc.lattice import QuadratureLattice
from vortexmc.sde import RngPlan
from vortexmc.summation import halfplane_kernel_sum, halfplane_theta_sum


@dataclass(frozen=True)
class WallRunParams:
    """Numerical parameters of a wall run."""

    delta: float
    eps: float
    nu: float
    dt: float
    n_steps: int
    n_copies: int = 1
    share_noise: bool = False

    def __post_init__(self):
        if min(self.delta, self.eps, self.nu, self.dt) <= 0:
            raise ValueError("delta, eps, nu and dt must be positive")
        if self.n_copies < 1:
            raise ValueError("n_copies must be at least 1")


@dataclass
class WallState:
    """Mutable per-run state of a wall scheme."""

    positions: np.ndarray      # (copies, nodes, 2)
    forcing_acc: np.ndarray    # (copies, nodes)
    stress_acc: np.ndarray     # (copies, nodes)
    theta: np.ndarray          # (wall nodes,)
    wall_x1: np.ndarray        # (wall nodes,) sorted
    omega_samples: np.ndarray  # (nodes,)
    weights: np.ndarray        # (nodes,)
    upper: np.ndarray          # (nodes,) bool, lattice index2 > 0
    mirror_index: np.ndarray   # (nodes,) int
    g: ForcingField
    time_index: int = 0
    record: bool = False
    trajectory: list = field(default_factory=list)
    theta_history: list = field(default_factory=list)

    @property
    def n_copies(self) -> int:
        return self.positions.shape[0]

    @property
    def n_nodes(self) -> int:
        return self.positions.shape[1]


def init_wall(
    lat: QuadratureLattice,
    setup: WallExperimentSetup,
    p: WallRunParams,
    omega_samples: np.ndarray,
    g: ForcingField,
    theta0: np.ndarray | float = 0.0,
    record: bool = False,
) -> WallState:
    """Particles at the lattice nodes (mirrored ones included), zero
    accumulators, boundary vorticity seeded by the caller."""
    on_wall = (lat.index2 == 0) & (lat.tags == 0)
    order = np.argsort(lat.nodes[on_wall, 0])
    wall_x1 = lat.nodes[on_wall, 0][order]
    theta = np.broadcast_to(np.asarray(theta0, dtype=np.float64), wall_x1.shape).copy()
    positions = np.broadcast_to(lat.nodes, (p.n_copies,) + lat.nodes.shape).copy()
    state = WallState(
        positions=positions,
        forcing_acc=np.zeros((p.n_copies, lat.node_count)),
        stress_acc=np.zeros((p.n_copies, lat.node_count)),
        theta=theta,
        wall_x1=wall_x1,
        omega_samples=np.asarray(omega_samples, dtype=np.float64),
        weights=lat.weights.copy(),
        upper=lat.index2 > 0,
        mirror_index=lat.mirror_index.copy(),
        g=g,
        record=record,
    )
    if record:
        state.trajectory.append(state.positions.copy())
        state.theta_history.append(state.theta.copy())
    return state


def theta_interp(state: WallState, x1) -> np.ndarray:
    """Boundary vorticity at arbitrary x1: linear between wall nodes, clamped."""
    return np.interp(np.asarray(x1, dtype=np.float64), state.wall_x1, state.theta)


def _gather_sources(state: WallState):
    """Flatten (copy, upper-node) sources for the kernel sums.

    Returns direct positions, homogeneous coefficients A*omega/copies,
    accumulator coefficients A*(acc_G + acc_S)/copies, and the mirrored
    particle positions paired with each direct node.
    """
    up = state.upper
    c = state.n_copies
    a_over_c = state.weights[up] / c
    pos = state.positions[:, up, :].reshape(-1, 2)
    pos_mirror = state.positions[:, state.mirror_index[up], :].reshape(-1, 2)
    hom = np.tile(a_over_c * state.omega_samples[up], c)
    acc = (state.forcing_acc[:, up] + state.stress_acc[:, up]) * a_over_c[None, :]
    return pos, pos_mirror, hom, acc.reshape(-1)


def eval_velocity_wall(state: WallState, x, p: WallRunParams) -> np.ndarray:
    """Velocity at one or many points, extended below the wall by reflection."""
    xv = as_vec2(x)
    targets = xv.reshape(-1, 2).copy()
    below = targets[:, 1] < 0.0
    targets[below, 1] = -targets[below, 1]

    pos, pos_mirror, hom, acc = _gather_sources(state)
    u = halfplane_kernel_sum(targets, pos, hom + acc, p.delta)
    if np.any(hom != 0.0):
        u -= halfplane_kernel_sum(targets, pos_mirror, hom, p.delta)
    u[below, 1] = -u[below, 1]
    return u.reshape(xv.shape)


def update_theta(state: WallState, p: WallRunParams) -> np.ndarray:
    """Boundary vorticity at the wall nodes from the stress-kernel sums."""
    pos, pos_mirror, hom, acc = _gather_sources(state)
    th = halfplane_theta_sum(state.wall_x1, pos, hom + acc, p.delta)
    if np.any(hom != 0.0):
        th -= halfplane_theta_sum(state.wall_x1, pos_mirror, hom, p.delta)
    return th


def noise_stream_ids(state: WallState, p: WallRunParams):
    """(particle, copy) stream keys per scheme variant.

    Per-node independent streams by default; ``share_noise`` reproduces
    the literal single-path reading of the one-copy scheme.  The N-copy
    scheme keys by (node, copy), so with one copy it reduces bitwise to
    the default one-copy scheme.
    """
    c, m = state.positions.shape[:2]
    if p.share_noise:
        particle = np.zeros((c, m), dtype=np.int64)
    else:
        particle = np.broadcast_to(np.arange(m), (c, m))
    copy = np.broadcast_to(np.arange(c)[:, None], (c, m))
    return particle, copy


def step_wall(state: WallState, p: WallRunParams, plan: RngPlan) -> WallState:
    """Advance one time level in place.

    Sub-steps, in order: (1) accumulate forcing and boundary stress at
    the current positions with the current boundary vorticity; (2) zero
    both accumulators of every particle at or below the wall;
    (3) evaluate the frozen velocity field at every particle and
    Euler-step all of them; (4) regenerate the boundary vorticity from
    the new positions.
    """
    k = state.time_index
    t_k = k * p.dt
    c, m = state.positions.shape[:2]
    flat = state.positions.reshape(-1, 2)

    if state.g.support_radius > 0.0:
        state.forcing_acc += p.dt * np.asarray(state.g.eval(flat, t_k)).reshape(c, m)
    chi = np.asarray(boundary_mollifier_chi(flat[:, 1] / p.eps)).reshape(c, m)
    if np.any(chi != 0.0):
        th = theta_interp(state, flat[:, 0]).reshape(c, m)
        state.stress_acc += p.dt * (p.nu / (p.eps * p.eps)) * chi * th

    out = state.positions[..., 1] <= 0.0
    state.forcing_acc[out] = 0.0
    state.stress_acc[out] = 0.0

    drift = eval_velocity_wall(state, state.positions, p)
    particle, copy = noise_stream_ids(state, p)
    inc = plan.normal_pairs(particle, copy, k)
    state.positions = state.positions + p.dt * drift + math.sqrt(2.0 * p.nu * p.dt) * inc

    state.theta = update_theta(state, p)
    state.time_index = k + 1
    if state.record:
        state.trajectory.append(state.positions.copy())
        state.theta_history.append(state.theta.copy())
    return state
