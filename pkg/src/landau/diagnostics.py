"""Lattice observables: moments, entropies, error norms, and reductions.

All integrals use the rectangle rule h^3 * sum over inner nodes, which is
spectrally accurate for smooth, decaying distributions and is exactly the
quadrature under which the discrete collision operator conserves mass.
Reductions use numpy's fixed summation order, so repeated evaluation of
the same field is bit-reproducible regardless of thread settings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ConfigurationError, DegenerateStateError, InvalidReferenceError
from .spectral import DistributionField


@dataclass
class MomentSet:
    """One diagnostics row: bulk observables of a distribution at time t."""

    t: float
    rho: float
    u: np.ndarray
    temp: float
    pressure: np.ndarray = field(repr=False)
    m4: float
    entropy: float = float("nan")
    rel_entropy: float = float("nan")
    nonpos_count: int = 0


class ErrorNorms(NamedTuple):
    l1: float
    l2: float
    linf: float


def moments(f: DistributionField, t: float = 0.0) -> MomentSet:
    """Density, bulk velocity, temperature, pressure tensor and fourth moment.

    The temperature is trace(P) / (3 rho), with P the centered second
    moment tensor; the fourth moment uses the uncentered speed |v|.
    Raises DegenerateStateError when the density is not positive.
    """
    grid = f.grid
    h3 = grid.h ** 3
    w = f.values
    vx, vy, vz = grid.node_mesh()

    rho = h3 * float(w.sum())
    if not rho > 0.0:
        raise DegenerateStateError(f"nonpositive density {rho:.6g}")
    u = np.array(
        [
            h3 * float((vx * w).sum()),
            h3 * float((vy * w).sum()),
            h3 * float((vz * w).sum()),
        ]
    )
    u /= rho

    cx, cy, cz = vx - u[0], vy - u[1], vz - u[2]
    pressure = np.empty((3, 3))
    centered = (cx, cy, cz)
    for a in range(3):
        for b in range(a, 3):
            pressure[a, b] = pressure[b, a] = h3 * float((centered[a] * centered[b] * w).sum())
    temp = (pressure[0, 0] + pressure[1, 1] + pressure[2, 2]) / (3.0 * rho)

    speed2 = vx * vx + vy * vy + vz * vz
    m4 = h3 * float((speed2 * speed2 * w).sum())
    return MomentSet(t=float(t), rho=rho, u=u, temp=temp, pressure=pressure, m4=m4)


def nonpositive_count(f: DistributionField) -> int:
    """Number of nodes with f <= 0 (excluded from entropy integrals)."""
    return int((f.values <= 0.0).sum())


def entropy(f: DistributionField) -> float:
    """Boltzmann entropy h^3 sum f log f over the nodes where f > 0.

    Nodes with f <= 0 carry no entropy contribution; their count is
    reported separately so undershoots stay visible instead of crashing
    the log.
    """
    w = f.values
    mask = w > 0.0
    pos = w[mask]
    return f.grid.h ** 3 * float((pos * np.log(pos)).sum())


def relative_entropy(f: DistributionField, m: DistributionField) -> float:
    """Relative entropy h^3 sum f log(f/m) against a positive reference m.

    Uses the same f > 0 masking as `entropy`.  The reference must be
    strictly positive everywhere; anything else raises
    InvalidReferenceError since log(f/m) would be ill-defined.
    """
    if m.grid != f.grid:
        raise ConfigurationError("reference grid does not match field grid")
    if not np.all(m.values > 0.0):
        raise InvalidReferenceError("relative entropy reference must be positive at every node")
    w = f.values
    mask = w > 0.0
    pos = w[mask]
    ratio = pos / m.values[mask]
    return f.grid.h ** 3 * float((pos * np.log(ratio)).sum())


def collect(
    f: DistributionField,
    t: float = 0.0,
    reference: DistributionField | None = None,
) -> MomentSet:
    """Full diagnostics row: moments plus entropy bookkeeping.

    `reference` is the equilibrium used for the relative entropy; when it
    is None the rel_entropy slot stays NaN.
    """
    ms = moments(f, t=t)
    ms.entropy = entropy(f)
    ms.nonpos_count = nonpositive_count(f)
    if reference is not None:
        ms.rel_entropy = relative_entropy(f, reference)
    return ms


def error_norms(f: DistributionField, ref: DistributionField) -> ErrorNorms:
    """Discrete L1, L2 and max-norm distance between two fields on one grid."""
    if ref.grid != f.grid:
        raise ConfigurationError(
            f"cannot compare fields on different grids: "
            f"(n={f.grid.n}, R={f.grid.R}) vs (n={ref.grid.n}, R={ref.grid.R})"
        )
    diff = f.values - ref.values
    h3 = f.grid.h ** 3
    l1 = h3 * float(np.abs(diff).sum())
    l2 = float(np.sqrt(h3 * float((diff * diff).sum())))
    linf = float(np.max(np.abs(diff)))
    return ErrorNorms(l1=l1, l2=l2, linf=linf)


def projection_xy(f: DistributionField) -> np.ndarray:
    """Marginal h * sum over v_z, an (n, n) array over the (x, y) lattice."""
    return f.grid.h * f.values.sum(axis=2)


def cross_section_z(f: DistributionField) -> np.ndarray:
    """Nodal values along the v_z axis through the origin, f(0, 0, v_z)."""
    n = f.grid.n
    return f.values[n // 2, n // 2, :].copy()
