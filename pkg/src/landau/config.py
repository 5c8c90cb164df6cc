"""Experiment presets, run configuration, and initial conditions.

Three built-in experiments cover the standard validation suite:

``maxwellian-accuracy``
    A unit Maxwellian on [-7, 7]^3.  The exact solution is stationary, so
    the distance from the initial data measures pure discretization error;
    error columns are filled against the analytic equilibrium.

``rosenbluth``
    A spherical shell profile exp(-S (|v|-sigma)^2 / sigma^2) / S^2 with
    sigma = 0.3, S = 10 on [-1, 1]^3, a classic isotropic relaxation
    problem with a long run horizon.

``two-gaussians``
    The half/half mixture of two unit Gaussians with width sigma = pi/10
    centered at +/- 2 sigma e_x on [-2.75, 2.75]^3; anisotropic data that
    relaxes toward a single Maxwellian.

``custom`` runs start from a binary field dump (``--ic-file``), which also
supplies the lattice and the starting time, making restarts exact.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .collision import maxwellian_field
from .errors import ConfigurationError
from .fieldio import read_field
from .grid import VelocityGrid
from .integrator import SCHEMES, parabolic_dt
from .spectral import DistributionField

PRESET_NAMES = ("maxwellian-accuracy", "rosenbluth", "two-gaussians", "custom")

#: Shell-profile parameters of the rosenbluth preset.
ROSENBLUTH_SIGMA = 0.3
ROSENBLUTH_S = 10.0

#: Width of each hump in the two-gaussians preset.
TWO_GAUSSIANS_SIGMA = np.pi / 10.0


@dataclass(frozen=True)
class PresetSpec:
    n: int
    R: float
    dt: float
    t_final: float
    scheme: str
    n_ref: int


# The two-gaussians step size is deliberately below the published 5e-3:
# the fixed three-stage integrator has a real-axis stability reach of
# about 2.51, and the measured operator spectral radius for this initial
# state (~553, by power iteration on the linearized collision operator)
# puts 5e-3 just past the boundary.  4e-3 leaves a 12% margin.  Step
# sizes are empirical per experiment; re-find them when parameters move.
_PRESETS = {
    "maxwellian-accuracy": PresetSpec(n=32, R=7.0, dt=0.005, t_final=1.0, scheme="plain", n_ref=32),
    "rosenbluth": PresetSpec(n=32, R=1.0, dt=0.1, t_final=50.0, scheme="steady", n_ref=32),
    "two-gaussians": PresetSpec(n=32, R=2.75, dt=0.004, t_final=5.0, scheme="steady", n_ref=32),
}


@dataclass
class ExperimentConfig:
    """Fully resolved run parameters, plus any resolution log lines."""

    preset: str
    n: int
    R: float
    dt: float
    t_final: float
    scheme: str
    diag_every: int = 1
    dump_every: int = 0
    kernel_cache: str | None = None
    kernel_fine: int | None = None
    out_dir: str = "."
    reference: str | None = None
    ic_file: str | None = None
    notes: tuple = ()

    def __post_init__(self):
        if self.preset not in PRESET_NAMES:
            raise ConfigurationError(f"unknown preset {self.preset!r}; choose from {PRESET_NAMES}")
        if self.scheme not in SCHEMES:
            raise ConfigurationError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.diag_every < 1:
            raise ConfigurationError(f"diag-every must be >= 1, got {self.diag_every}")
        if self.dump_every < 0:
            raise ConfigurationError(f"dump-every must be >= 0, got {self.dump_every}")
        if self.preset == "custom" and not self.ic_file:
            raise ConfigurationError("the custom preset requires --ic-file")
        if self.preset != "custom" and self.ic_file:
            raise ConfigurationError("--ic-file is only meaningful with the custom preset")


def resolve_config(preset: str, **overrides) -> ExperimentConfig:
    """Fill preset defaults, apply user overrides, and rescale dt if needed.

    When the resolution is overridden without an explicit dt, the preset
    step size is rescaled by (n_ref / n)^2 to track the parabolic stiffness
    of the spectral operator; the adjustment is recorded in `notes`.  An
    explicit dt always wins, with a note when it sits far above the
    rescaled guideline.
    """
    if preset not in PRESET_NAMES:
        raise ConfigurationError(f"unknown preset {preset!r}; choose from {PRESET_NAMES}")
    overrides = {k: v for k, v in overrides.items() if v is not None}
    notes = []

    if preset == "custom":
        ic_file = overrides.get("ic_file")
        if not ic_file:
            raise ConfigurationError("the custom preset requires --ic-file")
        field, t0 = read_field(ic_file)
        n = int(overrides.pop("n", field.grid.n))
        R = float(overrides.pop("R", field.grid.R))
        if n != field.grid.n or R != field.grid.R:
            raise ConfigurationError(
                f"--n/--R ({n}, {R}) disagree with the initial-condition dump "
                f"(n={field.grid.n}, R={field.grid.R})"
            )
        dt = overrides.pop("dt", None)
        if dt is None:
            raise ConfigurationError("the custom preset requires --dt")
        t_final = overrides.pop("t_final", None)
        if t_final is None:
            raise ConfigurationError("the custom preset requires --t-final")
        if t_final <= t0:
            raise ConfigurationError(
                f"t-final {t_final} is not beyond the dump time t={t0}"
            )
        scheme = overrides.pop("scheme", "plain")
        return ExperimentConfig(
            preset=preset, n=n, R=R, dt=float(dt), t_final=float(t_final),
            scheme=scheme, notes=tuple(notes), **overrides,
        )

    spec = _PRESETS[preset]
    n = int(overrides.pop("n", spec.n))
    R = float(overrides.pop("R", spec.R))
    dt = overrides.pop("dt", None)
    if dt is None:
        dt = spec.dt
        if n != spec.n_ref:
            dt = parabolic_dt(spec.dt, spec.n_ref, n)
            notes.append(
                f"dt rescaled to {dt:.6g} = {spec.dt} * ({spec.n_ref}/{n})^2 for n={n}"
            )
    else:
        dt = float(dt)
        guideline = parabolic_dt(spec.dt, spec.n_ref, n)
        if dt > 1.5 * guideline:
            notes.append(
                f"warning: dt={dt:.6g} exceeds the parabolic guideline "
                f"{guideline:.6g} for n={n}; the explicit stepper may be unstable"
            )
    t_final = float(overrides.pop("t_final", spec.t_final))
    scheme = overrides.pop("scheme", spec.scheme)
    return ExperimentConfig(
        preset=preset, n=n, R=R, dt=dt, t_final=t_final, scheme=scheme,
        notes=tuple(notes), **overrides,
    )


def parse_config_file(path) -> dict:
    """Read a flat key-value config file into an override dict.

    Lines look like ``key = value`` (or ``key: value``); keys mirror the
    command-line flags with dashes or underscores, '#' starts a comment.
    Values keep their string form; the CLI applies the same conversions it
    uses for flags.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"config file not found: {path}")
    out: dict[str, str] = {}
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        for sep in ("=", ":"):
            if sep in text:
                key, value = text.split(sep, 1)
                break
        else:
            raise ConfigurationError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if not key or not value:
            raise ConfigurationError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        if key == "config":
            raise ConfigurationError(f"{path}:{lineno}: config files cannot nest")
        out[key] = value
    return out


def rosenbluth_profile(grid: VelocityGrid) -> DistributionField:
    """Spherical shell initial state of the rosenbluth preset."""
    vx, vy, vz = grid.node_mesh()
    speed = np.sqrt(vx * vx + vy * vy + vz * vz)
    s, sig = ROSENBLUTH_S, ROSENBLUTH_SIGMA
    vals = np.exp(-s * (speed - sig) ** 2 / sig ** 2) / s ** 2
    return DistributionField(grid, vals)


def two_gaussians_profile(grid: VelocityGrid) -> DistributionField:
    """Symmetric two-hump initial state of the two-gaussians preset."""
    sig = TWO_GAUSSIANS_SIGMA
    shift = 2.0 * sig
    vx, vy, vz = grid.node_mesh()
    yz = vy * vy + vz * vz
    norm = 0.5 * (2.0 * np.pi * sig ** 2) ** -1.5
    vals = norm * (
        np.exp(-((vx - shift) ** 2 + yz) / (2.0 * sig ** 2))
        + np.exp(-((vx + shift) ** 2 + yz) / (2.0 * sig ** 2))
    )
    return DistributionField(grid, vals)


def build_initial_condition(config: ExperimentConfig, grid: VelocityGrid):
    """Initial field and starting time for a resolved configuration."""
    if config.preset == "maxwellian-accuracy":
        return maxwellian_field(1.0, (0.0, 0.0, 0.0), 1.0, grid), 0.0
    if config.preset == "rosenbluth":
        return rosenbluth_profile(grid), 0.0
    if config.preset == "two-gaussians":
        return two_gaussians_profile(grid), 0.0
    field, t0 = read_field(config.ic_file)
    if field.grid != grid:
        raise ConfigurationError("initial-condition dump grid does not match the run grid")
    return field, t0
