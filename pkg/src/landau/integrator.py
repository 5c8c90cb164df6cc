"""Fixed-step third-order strong-stability-preserving time advancement.

The stepper is the classic three-stage SSP Runge-Kutta scheme (Shu-Osher
form).  Stages are written incrementally, as f plus a multiple of the
stage update: the convex-combination form is algebraically identical, but
the incremental form also reproduces f bit-for-bit when the right-hand
side vanishes, which the equilibrium-preserving scheme relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BlowUpError, ConfigurationError
from .spectral import DistributionField

SCHEMES = ("plain", "steady")


@dataclass(frozen=True)
class StepperConfig:
    """Time-stepping parameters: step size, scheme flavor, final time."""

    dt: float
    scheme: str
    t_final: float

    def __post_init__(self):
        if not (np.isfinite(self.dt) and self.dt > 0.0):
            raise ConfigurationError(f"dt must be positive and finite, got {self.dt!r}")
        if self.scheme not in SCHEMES:
            raise ConfigurationError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if not (np.isfinite(self.t_final) and self.t_final > 0.0):
            raise ConfigurationError(f"t_final must be positive and finite, got {self.t_final!r}")


def parabolic_dt(dt_ref: float, n_ref: int, n: int) -> float:
    """Rescale a step size known to be stable at n_ref to resolution n.

    The spectral diffusion stiffness grows like n^2, so dt shrinks by
    (n_ref/n)^2; empirically this keeps the explicit stepper stable across
    the resolutions of interest.
    """
    return float(dt_ref) * (float(n_ref) / float(n)) ** 2


def _checked(values: np.ndarray, t: float, stage: int) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise BlowUpError(t, stage)
    return values


def rk3_step(f: DistributionField, rhs, dt: float, t: float = 0.0) -> DistributionField:
    """Advance df/dt = rhs(f) by one SSP-RK3 step of size dt.

    `rhs` maps a DistributionField to an ndarray of nodal time derivatives.
    Every stage is checked for non-finite values and aborts with
    BlowUpError carrying the time and stage index.
    """
    f0 = f.values
    grid = f.grid

    k0 = rhs(f)
    f1 = _checked(f0 + dt * k0, t, 1)

    k1 = rhs(DistributionField(grid, f1))
    f2 = _checked(f0 + 0.25 * ((f1 - f0) + dt * k1), t, 2)

    k2 = rhs(DistributionField(grid, f2))
    out = _checked(f0 + (2.0 / 3.0) * ((f2 - f0) + dt * k2), t, 3)
    return DistributionField(grid, out)
