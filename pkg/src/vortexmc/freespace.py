"""Unbounded-domain random vortex schemes.

Two Monte-Carlo discretizations of the same interacting system:

* field variant: N copies of the whole particle lattice, one shared
  Brownian path per copy, velocities averaged over copies;
* particle variant: a single lattice with an independent Brownian path
  per node and no copy average.

Both transport the initial vorticity samples and a per-particle forcing
accumulator (left-endpoint Riemann sum of the forcing along the path,
localized by the cutoff at the particle's start node).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from vortexmc.fields import ForcingField, VorticityField
from vortexmc.geometry import as_vec2
from vortexmc.kernels import cutoff_chi_r
from vortexmc.lattice import QuadratureLattice, sample_field_on_lattice
from vortexmc.sde import RngPlan
from vortexmc.summation import free_kernel_sum


class SchemeKind(enum.Enum):
    FMCRV = "fmcrv"
    PMCRV = "pmcrv"


@dataclass
class FreespaceState:
    """Mutable per-run state of a free-space scheme."""

    kind: SchemeKind
    positions: np.ndarray      # (copies, nodes, 2)
    forcing_acc: np.ndarray    # (copies, nodes)
    omega_samples: np.ndarray  # (nodes,)
    weights: np.ndarray        # (nodes,)
    chi_samples: np.ndarray    # (nodes,)
    g: ForcingField
    time_index: int = 0
    source_mask: np.ndarray = field(default=None)  # nodes that can ever contribute

    @property
    def n_copies(self) -> int:
        return self.positions.shape[0]

    @property
    def n_nodes(self) -> int:
        return self.positions.shape[1]


def init_freespace(
    lat: QuadratureLattice,
    omega0: VorticityField,
    g: ForcingField,
    kind: SchemeKind,
    n_copies: int,
    big_r: float,
) -> FreespaceState:
    """Particles at the lattice nodes, accumulators empty.

    The particle variant runs exactly one path family; asking for more
    copies there is an error rather than a silent override.
    """
    if n_copies < 1:
        raise ValueError("n_copies must be at least 1")
    if kind is SchemeKind.PMCRV and n_copies != 1:
        raise ValueError("the particle scheme has exactly one path family; use n_copies=1")
    omega = sample_field_on_lattice(lat, omega0)
    chi = np.asarray(cutoff_chi_r(lat.nodes, big_r), dtype=np.float64)
    has_forcing = g.support_radius > 0.0
    mask = (omega != 0.0) | (has_forcing & (chi != 0.0))
    positions = np.broadcast_to(lat.nodes, (n_copies,) + lat.nodes.shape).copy()
    return FreespaceState(
        kind=kind,
        positions=positions,
        forcing_acc=np.zeros((n_copies, lat.node_count)),
        omega_samples=omega,
        weights=lat.weights.copy(),
        chi_samples=chi,
        g=g,
        source_mask=mask,
    )


def _source_coeffs(state: FreespaceState) -> np.ndarray:
    # h^2 (omega_j + acc_kj * chi_j), averaged over copies for the field scheme
    coeffs = state.weights[None, :] * (
        state.omega_samples[None, :] + state.forcing_acc * state.chi_samples[None, :]
    )
    if state.kind is SchemeKind.FMCRV:
        coeffs = coeffs / state.n_copies
    return coeffs


def eval_velocity_free(state: FreespaceState, x, delta: float) -> np.ndarray:
    """Velocity sum over all copies and nodes at one or many points."""
    xv = as_vec2(x)
    targets = np.ascontiguousarray(xv.reshape(-1, 2))
    mask = state.source_mask
    sources = np.ascontiguousarray(state.positions[:, mask, :].reshape(-1, 2))
    coeffs = np.ascontiguousarray(_source_coeffs(state)[:, mask].reshape(-1))
    out = free_kernel_sum(targets, sources, coeffs, float(delta))
    return out.reshape(xv.shape)


def step_freespace(
    state: FreespaceState, delta: float, nu: float, dt: float, plan: RngPlan
) -> FreespaceState:
    """Advance one time level in place (returns the same state object).

    Order: accumulate forcing at the current positions, evaluate the
    frozen velocity field at every particle, then Euler-step all
    particles at once.  The field scheme applies copy k's single normal
    pair to every node of that copy; the particle scheme draws one pair
    per node.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    k = state.time_index
    t_k = k * dt
    c, m = state.positions.shape[:2]

    if state.g.support_radius > 0.0:
        flat = state.positions.reshape(-1, 2)
        state.forcing_acc += dt * np.asarray(state.g.eval(flat, t_k)).reshape(c, m)

    drift = eval_velocity_free(state, state.positions, delta)

    if state.kind is SchemeKind.FMCRV:
        inc = plan.normal_pairs(0, np.arange(c), k)[:, None, :]
    else:
        inc = plan.normal_pairs(np.arange(m), 0, k)[None, :, :]
    state.positions = state.positions + dt * drift + math.sqrt(2.0 * nu * dt) * inc
    state.time_index = k + 1
    return state


def total_discrete_circulation(state: FreespaceState) -> float:
    """h^2 * sum of the vorticity samples; constant in time by construction."""
    return float(np.sum(state.weights * state.omega_samples))
