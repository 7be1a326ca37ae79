"""CLI: ``plots render --view boundary --snapshots 'out/snap_*.csv' --out fig.png``."""

from __future__ import annotations

import argparse
import glob
import sys

from vortexmc_plots.render import FigureSpec, render
from vortexmc_plots.snapshots import SnapshotFormatError


def cmd_render(args) -> int:
    paths: list[str] = []
    for pattern in args.snapshots:
        hits = sorted(glob.glob(pattern))
        paths.extend(hits if hits else [pattern])
    try:
        spec = FigureSpec(
            snapshot_paths=tuple(paths),
            view=args.view,
            out_path=args.out,
            dpi=args.dpi,
        )
        out = render(spec)
    except (SnapshotFormatError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(f"wrote {out} ({len(paths)} panels)")
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="plots", description="Render vortexmc snapshot figures")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render a multi-panel figure from snapshots")
    p.add_argument("--view", required=True, choices=("boundary", "outer"))
    p.add_argument(
        "--snapshots", required=True, nargs="+",
        help="snapshot files or glob patterns, one panel each",
    )
    p.add_argument("--out", required=True, help="output image path")
    p.add_argument("--dpi", type=int, default=110)
    p.set_defaults(func=cmd_render)
    args = ap.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
