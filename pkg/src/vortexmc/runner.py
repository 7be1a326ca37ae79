"""Run orchestration: build a scheme from a config, step it, write snapshots."""

from __future__ import annotations

import subprocess
import time
from pathlib import Path

import numpy as np

import vortexmc
from vortexmc import fields, freespace, lattice, wall
from vortexmc.config import SimConfig
from vortexmc.sde import RngPlan
from vortexmc.snapshots import Snapshot, curl_on_grid, write_snapshot


def build_omega0(cfg: SimConfig) -> fields.VorticityField:
    if cfg.omega0 in ("gaussian", "gaussian_vortex"):
        return fields.gaussian_vortex(
            cfg.omega0_amplitude, cfg.omega0_width, cfg.omega0_center
        )
    return fields.zero_vorticity()


def build_forcing(cfg: SimConfig) -> fields.ForcingField:
    if cfg.forcing in ("constant", "constant_forcing"):
        return fields.constant_forcing(cfg.g0, cfg.forcing_window)
    return fields.zero_forcing()


def build_lattice(cfg: SimConfig) -> lattice.QuadratureLattice:
    if cfg.is_wall:
        p = lattice.WallMeshParams(
            h0=cfg.h0, h1=cfg.h1, h2=cfg.h2, n0=cfg.n0, n1=cfg.n1, n2=cfg.n2,
            length_scale=cfg.length_scale,
            reynolds=cfg.reynolds if cfg.initial == "uniform_stream" else None,
        )
        return lattice.build_wall_lattices(p)
    return lattice.build_uniform_grid(cfg.h, cfg.extent_r)


def build_state(cfg: SimConfig, lat: lattice.QuadratureLattice):
    g = build_forcing(cfg)
    omega0 = build_omega0(cfg)
    if cfg.is_wall:
        setup = fields.WallExperimentSetup(
            u0_mag=cfg.u0, g0=cfg.g0, nu=cfg.nu, length_scale=cfg.length_scale
        )
        params = wall.WallRunParams(
            delta=cfg.delta, eps=cfg.eps, nu=cfg.nu, dt=cfg.dt,
            n_steps=cfg.n_steps, n_copies=cfg.n_copies, share_noise=cfg.share_noise,
        )
        theta0 = (
            fields.initial_wall_stress(cfg.u0, cfg.h2)
            if cfg.initial == "uniform_stream"
            else 0.0
        )
        omega_samples = lattice.sample_field_on_lattice(lat, omega0)
        state = wall.init_wall(lat, setup, params, omega_samples, g, theta0=theta0)
        return state, params
    kind = freespace.SchemeKind(cfg.scheme)
    state = freespace.init_freespace(lat, omega0, g, kind, cfg.n_copies, cfg.big_r)
    return state, None


def _git_describe() -> str:
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            capture_output=True, text=True, timeout=5, cwd=Path(__file__).parent,
        )
        return out.stdout.strip() or "unknown"
    except Exception:
        return "unknown"


def _take_snapshot(cfg: SimConfig, state, params, grid, step: int) -> Snapshot:
    pts = grid.points()
    if cfg.is_wall:
        u = wall.eval_velocity_wall(state, pts, params)
        theta_x1, theta = state.wall_x1, state.theta
    else:
        u = freespace.eval_velocity_free(state, pts, cfg.delta)
        theta_x1 = np.zeros(0)
        theta = np.zeros(0)
    if not np.isfinite(u).all() or not np.isfinite(theta).all():
        raise RuntimeError(f"non-finite field values at step {step}")
    omega = curl_on_grid(pts, u, grid.n1, grid.n2)
    return Snapshot(
        time=step * cfg.dt,
        step=step,
        view=grid.name,
        nx=grid.n1,
        ny=grid.n2,
        points=pts,
        u=u,
        omega=omega,
        theta_x1=theta_x1,
        theta=theta,
        config_hash=cfg.config_hash,
        seed=cfg.seed,
        scheme=cfg.scheme,
    )


def run(cfg: SimConfig, out_dir, seed_override: int | None = None) -> dict:
    """Execute a configured run; returns a small report dict.

    Writes one snapshot file per probe view at every scheduled step plus a
    ``run_metadata.txt`` record.  Aborts with the step number if any field
    goes non-finite.
    """
    t_start = time.perf_counter()
    if seed_override is not None:
        cfg = replace_seed(cfg, seed_override)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lat = build_lattice(cfg)
    state, params = build_state(cfg, lat)
    plan = RngPlan(cfg.seed)
    schedule = set(cfg.snapshot_schedule())
    written = []

    def snap_all(step: int):
        for grid in cfg.probes:
            s = _take_snapshot(cfg, state, params, grid, step)
            path = out / f"snap_{grid.name}_step{step:06d}.csv"
            write_snapshot(s, path)
            written.append(path.name)

    if 0 in schedule:
        snap_all(0)
    for k in range(cfg.n_steps):
        if cfg.is_wall:
            wall.step_wall(state, params, plan)
        else:
            freespace.step_freespace(state, cfg.delta, cfg.nu, cfg.dt, plan)
        if not np.isfinite(state.positions).all():
            raise RuntimeError(f"non-finite particle positions at step {k + 1}")
        if k + 1 in schedule:
            snap_all(k + 1)

    elapsed = time.perf_counter() - t_start
    meta = {
        "config_hash": cfg.config_hash,
        "scheme": cfg.scheme,
        "seed": cfg.seed,
        "n_nodes": lat.node_count,
        "n_copies": cfg.n_copies,
        "n_steps": cfg.n_steps,
        "dt": cfg.dt,
        "snapshots": len(written),
        "elapsed_s": f"{elapsed:.3f}",
        "version": vortexmc.__version__,
        "git": _git_describe(),
    }
    (out / "run_metadata.txt").write_text(
        "".join(f"{k} = {v}\n" for k, v in meta.items())
    )
    (out / "config_echo.ini").write_text(cfg.text)
    meta["files"] = written
    return meta


def replace_seed(cfg: SimConfig, seed: int) -> SimConfig:
    """Config with the seed overridden (hash tracks the change)."""
    import dataclasses

    text = cfg.text + f"\n# seed-override = {seed}\n"
    return dataclasses.replace(cfg, seed=seed, text=text)
