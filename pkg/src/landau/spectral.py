"""Trigonometric analysis, synthesis, differentiation, and lattice embedding.

A field sampled on a lattice of `size` points per axis with half-width L is
expanded in the trigonometric basis exp(i pi k . v / L) with integer modes
k in [-size/2, size/2 - 1]^3.  Since the nodes are v_j = j h with
h = 2L/size, analysis and synthesis reduce to standard DFTs of the stored
arrays up to the centered/wraparound index reshuffle, which is what the
functions below implement.

All arrays follow the storage convention of :mod:`landau.grid`: position
s = j + size/2 along each axis, for node indices and mode indices alike.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np
import scipy.fft as _fft

from .errors import SpectralRealnessError
from .grid import VelocityGrid

#: Relative bound on the imaginary residue tolerated when synthesizing a
#: field that is real by construction.  Violations raise rather than being
#: silently truncated: they indicate a broken coefficient symmetry upstream.
IMAG_RESIDUE_TOL = 1e-10


def fft_workers() -> int:
    """Worker count for the FFT backend, capped by the LANDAU_THREADS env var."""
    avail = os.cpu_count() or 1
    cap = os.environ.get("LANDAU_THREADS")
    if cap:
        try:
            return max(1, min(avail, int(cap)))
        except ValueError:
            return avail
    return avail


class TransformTally:
    """Counter of forward/inverse transforms keyed by lattice size.

    The collision evaluation has a fixed transform budget (one forward and
    nine inverse transforms on the doubled lattice, at most ten transforms
    on the inner lattice); tests assert against these counters.
    """

    def __init__(self):
        self.forward: dict[int, int] = {}
        self.inverse: dict[int, int] = {}

    def reset(self) -> None:
        self.forward.clear()
        self.inverse.clear()

    def record(self, direction: str, size: int) -> None:
        bucket = self.forward if direction == "forward" else self.inverse
        bucket[size] = bucket.get(size, 0) + 1

    def count(self, direction: str, size: int) -> int:
        bucket = self.forward if direction == "forward" else self.inverse
        return bucket.get(size, 0)


#: Process-wide tally; cheap enough to keep always on.
tally = TransformTally()


@dataclass
class SpectralCoeffs:
    """Coefficient array c(k) over the centered mode cube [-size/2, size/2-1]^3.

    Attributes
    ----------
    size : int
        Modes per axis (equals the lattice size the field was analyzed on).
    halfwidth : float
        Half-width L of the lattice the coefficients refer to (R for the
        inner lattice, T = 2R for the extended one).
    data : np.ndarray
        Complex array in centered storage order, s = k + size/2.
    """

    size: int
    halfwidth: float
    data: np.ndarray


@dataclass
class DistributionField:
    """Nodal values of a distribution on the inner lattice of a grid."""

    grid: VelocityGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        n = self.grid.n
        if vals.shape != (n, n, n):
            raise ValueError(f"field shape {vals.shape} does not match grid n={n}")
        self.values = np.ascontiguousarray(vals)

    def copy(self) -> "DistributionField":
        return DistributionField(self.grid, self.values.copy())


def analyze(values: np.ndarray, halfwidth: float) -> SpectralCoeffs:
    """Expand nodal values into trigonometric coefficients.

    Computes c(k) = size^-3 sum_j f(v_j) exp(-i pi k . v_j / L) for all
    centered modes k; with v_j = j h the exponent is the plain DFT phase
    -2 pi i k . j / size.
    """
    values = np.asarray(values)
    size = values.shape[0]
    if values.shape != (size, size, size):
        raise ValueError(f"expected a cubic array, got shape {values.shape}")
    spec = _fft.fftn(np.fft.ifftshift(values), workers=fft_workers())
    tally.record("forward", size)
    data = np.fft.fftshift(spec)
    data /= float(size) ** 3
    return SpectralCoeffs(size=size, halfwidth=float(halfwidth), data=data)


def synthesize(coeffs: SpectralCoeffs) -> np.ndarray:
    """Evaluate the trigonometric sum at the lattice nodes; returns real values.

    The coefficients of a real field are Hermitian-symmetric and the
    synthesized imaginary part is pure roundoff; it is checked against
    IMAG_RESIDUE_TOL (relative to the field/coefficient scale) and then
    dropped.  A violation raises SpectralRealnessError.
    """
    size = coeffs.size
    out = _fft.ifftn(np.fft.ifftshift(coeffs.data), workers=fft_workers())
    tally.record("inverse", size)
    out = np.fft.fftshift(out)
    out *= float(size) ** 3
    scale = max(float(np.max(np.abs(out.real))), float(np.max(np.abs(coeffs.data))))
    resid = float(np.max(np.abs(out.imag)))
    if resid > IMAG_RESIDUE_TOL * scale:
        raise SpectralRealnessError(
            f"imaginary residue {resid:.3e} exceeds {IMAG_RESIDUE_TOL:.0e} x scale {scale:.3e}"
        )
    return np.ascontiguousarray(out.real)


def derive(coeffs: SpectralCoeffs, alpha) -> SpectralCoeffs:
    """Coefficients of the partial derivative d^alpha, |alpha| <= 3.

    Multiplies by (i pi k_a / L)^alpha_a along each axis.  On axes where
    alpha_a is odd the unpaired highest mode k = -size/2 is zeroed: it has
    no conjugate partner, and keeping it would make the sampled derivative
    of a real field complex.
    """
    orders = tuple(int(a) for a in alpha)
    if len(orders) != 3 or any(a < 0 for a in orders):
        raise ValueError(f"alpha must be three nonnegative integers, got {alpha!r}")
    if sum(orders) > 3:
        raise ValueError(f"derivative order |alpha|={sum(orders)} exceeds 3")
    size, L = coeffs.size, coeffs.halfwidth
    k = np.arange(-(size // 2), size // 2, dtype=np.float64)
    out = None
    for axis, order in enumerate(orders):
        if order == 0:
            continue
        factor = (1j * np.pi * k / L) ** order
        if order % 2 == 1:
            factor[0] = 0.0
        shape = [1, 1, 1]
        shape[axis] = size
        factor = factor.reshape(shape)
        out = coeffs.data * factor if out is None else out * factor
    if out is None:
        out = coeffs.data.copy()
    return SpectralCoeffs(size=size, halfwidth=L, data=out)


def zero_extend(f: DistributionField) -> np.ndarray:
    """Embed inner-lattice values into the doubled lattice, padding with zeros.

    The inner node with integer index j sits at position j + n in the
    extended storage, i.e. the central n^3 block.
    """
    n = f.grid.n
    out = np.zeros((2 * n, 2 * n, 2 * n), dtype=np.float64)
    s = slice(n // 2, n // 2 + n)
    out[s, s, s] = f.values
    return out


def sample_inner(coeffs: SpectralCoeffs) -> np.ndarray:
    """Synthesize extended-lattice coefficients and restrict to inner nodes.

    Because the two lattices share their nodes, restriction is an exact
    slice of the central block; nothing is interpolated.
    """
    if coeffs.size % 2 != 0:
        raise ValueError(f"extended lattice size must be even, got {coeffs.size}")
    inner = coeffs.size // 2
    full = synthesize(coeffs)
    s = slice(inner // 2, inner // 2 + inner)
    return np.ascontiguousarray(full[s, s, s])
