"""Reader for the vortexmc snapshot file schema.

The format is the documented interface between the simulator and this
package: a one-line ``# vortexmc key=value ...`` header followed by
``P,x1,x2,u1,u2,omega`` probe rows and optional ``T,x1,value`` boundary
vorticity rows.  Probe points form an x1-major rectangular grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np


class SnapshotFormatError(ValueError):
    pass


@dataclass(frozen=True)
class FieldSnapshot:
    time: float
    step: int
    view: str
    nx: int
    ny: int
    points: np.ndarray
    u: np.ndarray
    omega: np.ndarray
    theta_x1: np.ndarray
    theta: np.ndarray
    config_hash: str
    seed: int
    scheme: str

    @property
    def x1(self) -> np.ndarray:
        return self.points[:, 0].reshape(self.nx, self.ny)[:, 0]

    @property
    def x2(self) -> np.ndarray:
        return self.points[:, 1].reshape(self.nx, self.ny)[0, :]

    def grids(self):
        """(u1, u2, omega, speed) as (ny, nx) arrays ready for plotting."""
        u1 = self.u[:, 0].reshape(self.nx, self.ny).T
        u2 = self.u[:, 1].reshape(self.nx, self.ny).T
        om = self.omega.reshape(self.nx, self.ny).T
        return u1, u2, om, np.hypot(u1, u2)


def load_snapshot(path) -> FieldSnapshot:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as e:
        raise SnapshotFormatError(f"cannot read '{path}': {e}") from e
    if not lines or not lines[0].startswith("# vortexmc "):
        raise SnapshotFormatError(f"'{path}': not a vortexmc snapshot")
    meta = {}
    for tok in lines[0][len("# vortexmc "):].split():
        key, _, val = tok.partition("=")
        meta[key] = val
    try:
        nx, ny = int(meta["nx"]), int(meta["ny"])
        time = float(meta["time"])
        step = int(meta["step"])
        seed = int(meta["seed"])
    except (KeyError, ValueError) as e:
        raise SnapshotFormatError(f"'{path}': bad header: {e}") from e

    pts, u, om, tx, tv = [], [], [], [], []
    for i, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        f = line.split(",")
        if f[0] == "P" and len(f) == 6:
            pts.append((float(f[1]), float(f[2])))
            u.append((float(f[3]), float(f[4])))
            om.append(float(f[5]))
        elif f[0] == "T" and len(f) == 3:
            tx.append(float(f[1]))
            tv.append(float(f[2]))
        else:
            raise SnapshotFormatError(f"'{path}' line {i}: malformed row")
    if len(pts) != nx * ny:
        raise SnapshotFormatError(f"'{path}': expected {nx * ny} probe rows, got {len(pts)}")
    return FieldSnapshot(
        time=time,
        step=step,
        view=meta.get("view", ""),
        nx=nx,
        ny=ny,
        points=np.asarray(pts),
        u=np.asarray(u),
        omega=np.asarray(om),
        theta_x1=np.asarray(tx),
        theta=np.asarray(tv),
        config_hash=meta.get("config", ""),
        seed=seed,
        scheme=meta.get("scheme", ""),
    )
