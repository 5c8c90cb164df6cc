"""Run orchestration: kernel acquisition, the time loop, and output files.

A run writes into its output directory:

* ``diagnostics.csv`` - one row per diagnostics interval with the schema
  t, rho, ux, uy, uz, temp, Pxx, Pxy, Pxz, Pyy, Pyz, Pzz, m4, entropy,
  rel_entropy, nonpos_count, mass_drift, l1_err, l2_err, linf_err.
  Rows are flushed as they are written, so an aborted run keeps every
  completed row.  Error columns are empty unless a reference is available
  (the maxwellian-accuracy preset, or ``--reference``).
* ``run.json`` - the resolved parameters and derived quantities.
* ``field_STEP.lspf`` snapshots every ``dump_every`` steps (0 disables),
  plus ``field_final.lspf`` at the end of every run.

The relative-entropy column is measured against the nodal Maxwellian
built from the initial invariants of the run - the same field the
equilibrium-preserving scheme pins, so for that scheme the column decays
to the roundoff floor.  mass_drift is relative to the initial density.
"""

from __future__ import annotations

import csv
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .collision import CollisionWorkspace, collision_operator, maxwellian_field
from .config import ExperimentConfig, build_initial_condition
from .diagnostics import collect, error_norms, moments
from .errors import BlowUpError, ConfigurationError, DegenerateStateError
from .fieldio import read_field, write_field
from .grid import make_grid
from .integrator import rk3_step
from .kernel import compute_kernel_table, default_fine, load_kernel, store_kernel
from .spectral import DistributionField, fft_workers

CSV_COLUMNS = [
    "t", "rho", "ux", "uy", "uz", "temp",
    "Pxx", "Pxy", "Pxz", "Pyy", "Pyz", "Pzz",
    "m4", "entropy", "rel_entropy", "nonpos_count", "mass_drift",
    "l1_err", "l2_err", "linf_err",
]


def acquire_kernel(grid, fine: int | None, cache_path=None, log=None):
    """Load the kernel table from cache or compute (and optionally store) it.

    A cache file must match (n, T) and, when `fine` is specified, the
    quadrature resolution as well; mismatches raise instead of silently
    recomputing so runs never mix tables.
    """
    fine = int(fine) if fine is not None else default_fine(grid.n)
    if cache_path:
        cache_path = Path(cache_path)
        if cache_path.is_file():
            table = load_kernel(cache_path, n=grid.n, T=grid.T, fine=fine)
            if log:
                log(f"kernel: loaded cache {cache_path} (n={table.n}, fine={table.fine})")
            return table
        table = compute_kernel_table(grid, fine)
        cache_path.parent.mkdir(parents=True, exist_ok=True)
        store_kernel(table, cache_path)
        if log:
            log(f"kernel: computed (n={table.n}, fine={table.fine}) and cached to {cache_path}")
        return table
    table = compute_kernel_table(grid, fine)
    if log:
        log(f"kernel: computed (n={table.n}, fine={table.fine})")
    return table


def restrict_reference(ref: DistributionField, grid) -> DistributionField:
    """Restrict a reference field on a finer commensurate lattice to `grid`.

    Requires the same half-width and a resolution that is an integer
    multiple of the target; shared nodes are then an exact stride of the
    storage array.
    """
    if ref.grid.R != grid.R:
        raise ConfigurationError(
            f"reference half-width R={ref.grid.R} does not match run R={grid.R}"
        )
    if ref.grid.n % grid.n != 0:
        raise ConfigurationError(
            f"reference resolution n={ref.grid.n} is not a multiple of run n={grid.n}"
        )
    q = ref.grid.n // grid.n
    if q == 1:
        return DistributionField(grid, ref.values.copy())
    return DistributionField(grid, np.ascontiguousarray(ref.values[::q, ::q, ::q]))


def _format_row(ms, mass_drift, errs) -> list:
    row = [
        f"{ms.t:.10g}", f"{ms.rho:.17g}",
        f"{ms.u[0]:.17g}", f"{ms.u[1]:.17g}", f"{ms.u[2]:.17g}",
        f"{ms.temp:.17g}",
    ]
    P = ms.pressure
    row += [f"{P[0, 0]:.17g}", f"{P[0, 1]:.17g}", f"{P[0, 2]:.17g}",
            f"{P[1, 1]:.17g}", f"{P[1, 2]:.17g}", f"{P[2, 2]:.17g}"]
    row += [f"{ms.m4:.17g}", f"{ms.entropy:.17g}", f"{ms.rel_entropy:.17g}",
            str(ms.nonpos_count), f"{mass_drift:.17g}"]
    if errs is None:
        row += ["", "", ""]
    else:
        row += [f"{errs.l1:.17g}", f"{errs.l2:.17g}", f"{errs.linf:.17g}"]
    return row


class RunResult:
    """Where a run put its outputs, and how it ended."""

    def __init__(self, out_dir: Path, status: int, steps_done: int, message: str = ""):
        self.out_dir = out_dir
        self.status = status
        self.steps_done = steps_done
        self.message = message


def run_experiment(config: ExperimentConfig, log=None) -> RunResult:
    """Execute one configured run; returns paths and exit status."""
    log = log or (lambda msg: print(msg, file=sys.stderr))
    for note in config.notes:
        log(note)

    grid = make_grid(config.n, config.R)
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    table = acquire_kernel(grid, config.kernel_fine, config.kernel_cache, log=log)
    ws = CollisionWorkspace(grid, table)

    f, t0 = build_initial_condition(config, grid)
    if not np.all(np.isfinite(f.values)):
        raise ConfigurationError("initial condition contains non-finite values")

    ms0 = moments(f, t=t0)
    if config.preset == "maxwellian-accuracy":
        # The invariants of this preset are known in closed form; building
        # the pinned Maxwellian from them (the same call that produced the
        # initial field) makes it bit-identical to f0, so the
        # equilibrium-preserving stage RHS cancels exactly instead of
        # leaving a quadrature-sized residue.
        equilibrium = maxwellian_field(1.0, (0.0, 0.0, 0.0), 1.0, grid)
    else:
        equilibrium = maxwellian_field(ms0.rho, ms0.u, ms0.temp, grid)

    reference = None
    if config.reference:
        ref_field, _ = read_field(config.reference)
        reference = restrict_reference(ref_field, grid)
    elif config.preset == "maxwellian-accuracy":
        reference = maxwellian_field(1.0, (0.0, 0.0, 0.0), 1.0, grid)

    if config.scheme == "steady":
        steady_term = collision_operator(equilibrium, ws)

        def rhs(field: DistributionField) -> np.ndarray:
            return collision_operator(field, ws) - steady_term
    else:
        def rhs(field: DistributionField) -> np.ndarray:
            return collision_operator(field, ws)

    span = config.t_final - t0
    steps = int(round(span / config.dt))
    if steps < 1 or abs(steps * config.dt - span) > 1e-9 * max(1.0, abs(span)):
        steps = max(1, int(np.ceil(span / config.dt - 1e-12)))

    manifest = {
        "preset": config.preset,
        "scheme": config.scheme,
        "n": grid.n,
        "R": grid.R,
        "T": grid.T,
        "h": grid.h,
        "dt": config.dt,
        "t0": t0,
        "t_final": config.t_final,
        "steps": steps,
        "diag_every": config.diag_every,
        "dump_every": config.dump_every,
        "kernel_fine": table.fine,
        "kernel_cache": str(config.kernel_cache) if config.kernel_cache else None,
        "reference": str(config.reference) if config.reference else None,
        "ic_file": str(config.ic_file) if config.ic_file else None,
        "initial_rho": ms0.rho,
        "initial_u": list(ms0.u),
        "initial_temp": ms0.temp,
        "fft_workers": fft_workers(),
        "version": __version__,
        "notes": list(config.notes),
    }
    (out_dir / "run.json").write_text(json.dumps(manifest, indent=2) + "\n")

    csv_path = out_dir / "diagnostics.csv"
    status, message, steps_done = 0, "", 0
    wall0 = time.monotonic()
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)

        def emit(field, t):
            ms = collect(field, t=t, reference=equilibrium)
            drift = (ms.rho - ms0.rho) / ms0.rho
            errs = error_norms(field, reference) if reference is not None else None
            writer.writerow(_format_row(ms, drift, errs))
            fh.flush()

        emit(f, t0)
        if config.dump_every:
            write_field(out_dir / "field_000000.lspf", f, t0)
        try:
            for step in range(1, steps + 1):
                t_prev = t0 + (step - 1) * config.dt
                f = rk3_step(f, rhs, config.dt, t=t_prev)
                steps_done = step
                t = t0 + step * config.dt
                if step % config.diag_every == 0 or step == steps:
                    emit(f, t)
                if config.dump_every and step % config.dump_every == 0:
                    write_field(out_dir / f"field_{step:06d}.lspf", f, t)
        except (BlowUpError, DegenerateStateError) as exc:
            status, message = 1, str(exc)
            log(f"aborted: {message}")
    if status == 0:
        write_field(out_dir / "field_final.lspf", f, t0 + steps * config.dt)
        log(
            f"done: {steps} steps to t={t0 + steps * config.dt:.6g} "
            f"in {time.monotonic() - wall0:.1f}s -> {out_dir}"
        )
    return RunResult(out_dir, status, steps_done, message)
