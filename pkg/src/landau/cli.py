"""Command-line interface.

Two subcommands::

    landau run    --preset NAME [options]   # execute an experiment
    landau kernel --n N --R R --fine F --out PATH   # precompute a kernel cache

``landau run`` also accepts ``--config FILE`` pointing at a flat
key-value file whose keys mirror the flags (``n = 32``, ``t-final = 1``);
explicit flags override file entries.  Parallelism of the transform
backend is capped by the LANDAU_THREADS environment variable.
"""

from __future__ import annotations

import argparse
import sys

from .config import parse_config_file, resolve_config
from .driver import run_experiment
from .errors import ConfigurationError, LandauError
from .grid import make_grid
from .kernel import compute_kernel_table, store_kernel


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="landau",
        description="Spectral solver for the space-homogeneous Coulomb collision equation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment preset")
    run.add_argument("--preset", required=True,
                     choices=["maxwellian-accuracy", "rosenbluth", "two-gaussians", "custom"])
    run.add_argument("--config", help="flat key-value file mirroring the flags; flags override it")
    run.add_argument("--n", type=int, help="lattice points per axis (even, >= 4)")
    run.add_argument("--R", type=float, help="half-width of the velocity cube")
    run.add_argument("--dt", type=float, help="time step")
    run.add_argument("--t-final", type=float, dest="t_final", help="final time")
    run.add_argument("--scheme", choices=["plain", "steady"],
                     help="plain collision operator or the equilibrium-preserving variant")
    run.add_argument("--diag-every", type=int, dest="diag_every", help="steps between CSV rows (default 1)")
    run.add_argument("--dump-every", type=int, dest="dump_every",
                     help="steps between field snapshots (default 0: final only)")
    run.add_argument("--kernel-cache", dest="kernel_cache", help="kernel table cache path (load or create)")
    run.add_argument("--kernel-fine", type=int, dest="kernel_fine",
                     help="kernel quadrature points per axis (default max(256, 8n))")
    run.add_argument("--out", dest="out_dir", default=None, help="output directory (default: current)")
    run.add_argument("--reference", help="field dump used for the error columns (finer commensurate lattice ok)")
    run.add_argument("--ic-file", dest="ic_file", help="initial-condition dump (custom preset)")

    kern = sub.add_parser("kernel", help="precompute a kernel-table cache")
    kern.add_argument("--n", type=int, required=True)
    kern.add_argument("--R", type=float, required=True)
    kern.add_argument("--fine", type=int, required=True)
    kern.add_argument("--out", required=True)
    return parser


_RUN_KEYS = {
    "preset": str, "n": int, "R": float, "dt": float, "t_final": float,
    "scheme": str, "diag_every": int, "dump_every": int,
    "kernel_cache": str, "kernel_fine": int, "out_dir": str,
    "reference": str, "ic_file": str,
}

_CONFIG_KEY_ALIASES = {"out": "out_dir"}


def _overrides_from_args(args) -> dict:
    out = {}
    for key in _RUN_KEYS:
        if key == "preset":
            continue
        value = getattr(args, key, None)
        if value is not None:
            out[key] = value
    return out


def _merge_config_file(path, flag_overrides: dict, preset: str):
    entries = parse_config_file(path)
    merged = {}
    file_preset = None
    for raw_key, raw_value in entries.items():
        key = _CONFIG_KEY_ALIASES.get(raw_key, raw_key)
        if key == "preset":
            file_preset = raw_value
            continue
        if key not in _RUN_KEYS:
            raise ConfigurationError(f"unknown config key {raw_key!r} in {path}")
        try:
            merged[key] = _RUN_KEYS[key](raw_value)
        except ValueError as exc:
            raise ConfigurationError(f"bad value for {raw_key!r} in {path}: {exc}") from exc
    merged.update(flag_overrides)
    return merged, (preset or file_preset)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "kernel":
            grid = make_grid(args.n, args.R)
            table = compute_kernel_table(grid, args.fine)
            store_kernel(table, args.out)
            print(f"kernel table (n={table.n}, T={table.T:g}, fine={table.fine}) -> {args.out}",
                  file=sys.stderr)
            return 0

        overrides = _overrides_from_args(args)
        preset = args.preset
        if args.config:
            overrides, preset = _merge_config_file(args.config, overrides, preset)
        if "out_dir" not in overrides or overrides["out_dir"] is None:
            overrides["out_dir"] = "."
        config = resolve_config(preset, **overrides)
        result = run_experiment(config)
        return result.status
    except LandauError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
