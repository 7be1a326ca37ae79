"""Command-line interface.

Subcommands: ``run <config>``, ``verify``, ``lattice-info <config>``,
``golden``.  Worker count comes from --workers or VORTEXMC_WORKERS.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from vortexmc import config as cfgmod


def _load_config(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        print(f"error: cannot read config '{path}': {e}", file=sys.stderr)
        raise SystemExit(2)
    try:
        return cfgmod.parse_config(text)
    except cfgmod.ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        raise SystemExit(2)


def cmd_run(args) -> int:
    from vortexmc import summation
    from vortexmc.runner import run

    if args.workers is not None:
        summation.set_workers(args.workers)
    else:
        summation.workers_from_env()
    cfg = _load_config(args.config)
    report = run(cfg, args.out, seed_override=args.seed)
    print(
        f"run complete: scheme={report['scheme']} nodes={report['n_nodes']}"
        f" steps={report['n_steps']} snapshots={report['snapshots']}"
        f" elapsed={report['elapsed_s']}s out={args.out}"
    )
    return 0


def cmd_verify(args) -> int:
    from vortexmc.verify import run_verify

    return 1 if run_verify() else 0


def cmd_lattice_info(args) -> int:
    from vortexmc.runner import build_lattice

    cfg = _load_config(args.config)
    lat = build_lattice(cfg)
    print(f"scheme = {cfg.scheme}")
    print(f"node_count = {lat.node_count}")
    if cfg.is_wall:
        boundary = int((lat.tags == 0).sum())
        print(f"boundary_nodes = {boundary}")
        print(f"outer_nodes = {lat.node_count - boundary}")
        print(f"reynolds = {cfg.reynolds:g}")
    print(f"extent = {lat.extent:g}")
    print(f"weight_total = {float(lat.weights.sum()):.6g}")
    return 0


def cmd_golden(args) -> int:
    text = cfgmod.GOLDEN_CONFIG
    if args.out:
        Path(args.out).write_text(text)
        print(f"golden preset written to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="vortexmc",
        description="Random-vortex Monte-Carlo simulation of 2D viscous flow",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a configured simulation")
    p_run.add_argument("config", help="path to a config file")
    p_run.add_argument("--out", default="out", help="output directory (default: out)")
    p_run.add_argument("--seed", type=int, default=None, help="override the config seed")
    p_run.add_argument("--workers", type=int, default=None, help="summation thread count")
    p_run.set_defaults(func=cmd_run)

    p_verify = sub.add_parser("verify", help="run the oracle self-check table")
    p_verify.set_defaults(func=cmd_verify)

    p_info = sub.add_parser("lattice-info", help="print lattice counts and extents")
    p_info.add_argument("config", help="path to a config file")
    p_info.set_defaults(func=cmd_lattice_info)

    p_golden = sub.add_parser("golden", help="emit the wall-experiment preset")
    p_golden.add_argument("--out", default=None, help="write to a file instead of stdout")
    p_golden.set_defaults(func=cmd_golden)

    args = ap.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
