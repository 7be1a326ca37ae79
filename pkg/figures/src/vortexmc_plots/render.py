"""Render snapshot panels: streamlines colored by speed over a vorticity map.

Boundary-view figures carry eight panels (two per row), outer-view
figures four (two by two), each titled with its snapshot time.  Panels
must come from one run; a config-hash mismatch across input files is an
error.  Output is a raster image; rendering the same inputs twice
produces identical bytes (fixed size, dpi, colormaps, and no volatile
metadata).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from vortexmc_plots.snapshots import FieldSnapshot, SnapshotFormatError, load_snapshot

VIEW_COLUMNS = 2
SEED_GRID = {"boundary": (15, 8), "outer": (15, 15)}


@dataclass(frozen=True)
class FigureSpec:
    snapshot_paths: tuple[str, ...]
    view: str
    out_path: str
    vorticity_cmap: str = "RdBu_r"
    speed_cmap: str = "viridis"
    title_template: str = "t = {time:g}"
    dpi: int = 110
    panel_size: tuple[float, float] = (4.2, 2.6)

    def __post_init__(self):
        if self.view not in ("boundary", "outer"):
            raise ValueError(f"unknown view '{self.view}'")
        if not self.snapshot_paths:
            raise ValueError("no snapshot paths given")


def _check_consistency(snaps: list[FieldSnapshot], spec: FigureSpec) -> None:
    hashes = {s.config_hash for s in snaps}
    if len(hashes) > 1:
        raise SnapshotFormatError(
            f"config hash mismatch across panels: {sorted(hashes)}"
        )
    views = {s.view for s in snaps}
    if len(views) > 1:
        raise SnapshotFormatError(f"mixed snapshot views {sorted(views)} in one figure")


def _draw_panel(ax, snap: FieldSnapshot, spec: FigureSpec) -> None:
    x1, x2 = snap.x1, snap.x2
    u1, u2, om, speed = snap.grids()
    lim = float(np.abs(om).max())
    lim = lim if lim > 0 else 1.0
    ax.pcolormesh(
        x1, x2, om, cmap=spec.vorticity_cmap, vmin=-lim, vmax=lim, shading="gouraud"
    )
    if speed.max() > 0:
        n1, n2 = SEED_GRID[spec.view]
        seeds_x = np.linspace(x1[0], x1[-1], n1 + 2)[1:-1]
        seeds_y = np.linspace(x2[0], x2[-1], n2 + 2)[1:-1]
        sx, sy = np.meshgrid(seeds_x, seeds_y)
        start = np.column_stack((sx.ravel(), sy.ravel()))
        ax.streamplot(
            x1, x2, u1, u2,
            color=speed, cmap=spec.speed_cmap,
            start_points=start, linewidth=0.7, arrowsize=0.6, density=4,
        )
    ax.set_xlim(x1[0], x1[-1])
    ax.set_ylim(x2[0], x2[-1])
    ax.set_title(spec.title_template.format(time=snap.time), fontsize=9)
    ax.tick_params(labelsize=6)


def render(spec: FigureSpec) -> Path:
    """Render the figure described by ``spec``; returns the output path."""
    snaps = [load_snapshot(p) for p in spec.snapshot_paths]
    _check_consistency(snaps, spec)
    snaps.sort(key=lambda s: s.time)

    n = len(snaps)
    ncols = VIEW_COLUMNS
    nrows = math.ceil(n / ncols)
    fig, axes = plt.subplots(
        nrows, ncols,
        figsize=(spec.panel_size[0] * ncols, spec.panel_size[1] * nrows),
        squeeze=False,
    )
    for ax in axes.ravel():
        ax.set_axis_off()
    for ax, snap in zip(axes.ravel(), snaps):
        ax.set_axis_on()
        _draw_panel(ax, snap, spec)
    fig.tight_layout()
    out = Path(spec.out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(
        out, dpi=spec.dpi,
        metadata={"Software": None},  # keep output bytes reproducible
    )
    plt.close(fig)
    return out
