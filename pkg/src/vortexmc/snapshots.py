"""Snapshot files: diff-able CSV with a one-line metadata header.

Layout::

    # vortexmc config=<hash> seed=<n> scheme=<s> step=<k> time=<t> view=<v> nx=<n> ny=<n>
    P,<x1>,<x2>,<u1>,<u2>,<omega>
    ...
    T,<x1>,<value>

Probe rows carry the velocity samples and the central-difference curl on
the probe grid; T rows carry the boundary vorticity (wall schemes only).
Floats are written with shortest round-trip decimals, so
read(write(s)) == s exactly and equal runs produce byte-identical files.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np


class SnapshotError(ValueError):
    pass


@dataclass
class Snapshot:
    """Velocity/vorticity/stress samples at one time level."""

    time: float
    step: int
    view: str
    nx: int
    ny: int
    points: np.ndarray    # (n, 2)
    u: np.ndarray         # (n, 2)
    omega: np.ndarray     # (n,)
    theta_x1: np.ndarray  # (w,)
    theta: np.ndarray     # (w,)
    config_hash: str
    seed: int
    scheme: str

    def __eq__(self, other) -> bool:
        if not isinstance(other, Snapshot):
            return NotImplemented
        scalars = all(
            getattr(self, k) == getattr(other, k)
            for k in ("time", "step", "view", "nx", "ny", "config_hash", "seed", "scheme")
        )
        arrays = all(
            np.array_equal(getattr(self, k), getattr(other, k))
            for k in ("points", "u", "omega", "theta_x1", "theta")
        )
        return scalars and arrays


def curl_on_grid(points: np.ndarray, u: np.ndarray, nx: int, ny: int) -> np.ndarray:
    """d(u2)/dx1 - d(u1)/dx2 by central differences, one-sided at edges.

    ``points`` must be an x1-major rectangular grid of shape (nx*ny, 2).
    """
    if nx < 2 or ny < 2:
        return np.zeros(points.shape[0])
    x1 = points[:, 0].reshape(nx, ny)
    x2 = points[:, 1].reshape(nx, ny)
    u1 = u[:, 0].reshape(nx, ny)
    u2 = u[:, 1].reshape(nx, ny)
    du2_dx1 = np.gradient(u2, x1[:, 0], axis=0)
    du1_dx2 = np.gradient(u1, x2[0, :], axis=1)
    return (du2_dx1 - du1_dx2).reshape(-1)


def write_snapshot(snap: Snapshot, path) -> None:
    lines = [
        f"# vortexmc config={snap.config_hash} seed={snap.seed} scheme={snap.scheme}"
        f" step={snap.step} time={float(snap.time)!r} view={snap.view} nx={snap.nx} ny={snap.ny}"
    ]
    for p, u, w in zip(snap.points, snap.u, snap.omega):
        lines.append(
            f"P,{float(p[0])!r},{float(p[1])!r},{float(u[0])!r},{float(u[1])!r},{float(w)!r}"
        )
    for x1, th in zip(snap.theta_x1, snap.theta):
        lines.append(f"T,{float(x1)!r},{float(th)!r}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_snapshot(path) -> Snapshot:
    """Parse a snapshot file; raises SnapshotError on any schema violation."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise SnapshotError(f"cannot read snapshot '{path}': {e}") from e
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# vortexmc "):
        raise SnapshotError(f"'{path}': missing snapshot header")
    meta = {}
    for tok in lines[0][len("# vortexmc "):].split():
        if "=" not in tok:
            raise SnapshotError(f"'{path}': malformed header token '{tok}'")
        key, val = tok.split("=", 1)
        meta[key] = val
    try:
        nx, ny = int(meta["nx"]), int(meta["ny"])
        header = dict(
            time=float(meta["time"]),
            step=int(meta["step"]),
            view=meta["view"],
            nx=nx,
            ny=ny,
            config_hash=meta["config"],
            seed=int(meta["seed"]),
            scheme=meta["scheme"],
        )
    except (KeyError, ValueError) as e:
        raise SnapshotError(f"'{path}': bad header: {e}") from e

    pts, u, om, tx, tv = [], [], [], [], []
    for i, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        fields = line.split(",")
        if fields[0] == "P":
            if len(fields) != 6:
                raise SnapshotError(f"'{path}' line {i}: P row needs 6 columns, got {len(fields)}")
            vals = [float(v) for v in fields[1:]]
            pts.append(vals[0:2])
            u.append(vals[2:4])
            om.append(vals[4])
        elif fields[0] == "T":
            if len(fields) != 3:
                raise SnapshotError(f"'{path}' line {i}: T row needs 3 columns, got {len(fields)}")
            tx.append(float(fields[1]))
            tv.append(float(fields[2]))
        else:
            raise SnapshotError(f"'{path}' line {i}: unknown row kind '{fields[0]}'")
    if len(pts) != nx * ny:
        raise SnapshotError(f"'{path}': expected {nx * ny} probe rows, found {len(pts)}")
    return Snapshot(
        points=np.asarray(pts, dtype=np.float64).reshape(-1, 2),
        u=np.asarray(u, dtype=np.float64).reshape(-1, 2),
        omega=np.asarray(om, dtype=np.float64),
        theta_x1=np.asarray(tx, dtype=np.float64),
        theta=np.asarray(tv, dtype=np.float64),
        **header,
    )
