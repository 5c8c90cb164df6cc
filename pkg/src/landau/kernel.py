"""Tabulated trigonometric coefficients of the truncated Coulomb kernel.

The Rosenbluth potential is a convolution with psi(z) = |z| truncated to
the extended cube [-T, T]^3.  Its trigonometric coefficients

    psi_hat(k) = (T / pi)^4 * integral over [-pi, pi]^3 of |z| exp(-i k.z) dz

are evaluated once per (n, T, fine) by a rectangle rule on a uniform cube
of `fine` points per axis and retained for the 2n^3 modes the solver uses.
Sampling |z| at z_m = 2*pi*m/fine turns the rectangle rule into a plain
DFT, so the table is exact quadrature, deterministic, and cheap to cache.

The quadrature is organized plane by plane along the x axis: each
(fine x fine) plane is transformed in 2D and only the retained modes are
accumulated, which keeps peak memory at O(fine * (2n)^2) instead of
O(fine^3).  The result is identical to transforming the full cube.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass

import numpy as np
import scipy.fft as _fft

from .errors import ConfigurationError, KernelCacheError, KernelQuadratureError
from .grid import VelocityGrid
from .spectral import fft_workers

MAGIC = b"LSKT"
FORMAT_VERSION = 1

#: Realness bound for the quadrature output: |z| sampled on the centered
#: lattice is exactly even under negation mod fine, so the imaginary part
#: of the DFT is pure roundoff.
REALNESS_TOL = 1e-8


@dataclass(frozen=True)
class KernelTable:
    """Real coefficients psi_hat(k) for k in [-n, n-1]^3, centered storage.

    `values[s]` holds the mode k = s - n along each axis; the table scales
    like T^4 and depends on the quadrature resolution `fine` only through
    aliasing that decays as fine grows.
    """

    n: int
    T: float
    fine: int
    values: np.ndarray


def default_fine(n: int) -> int:
    """Default quadrature resolution: generous but bounded below by 256."""
    return max(256, 8 * n)


def compute_kernel_table(grid: VelocityGrid, fine: int | None = None) -> KernelTable:
    """Evaluate the kernel coefficients for `grid` by rectangle-rule quadrature.

    Parameters
    ----------
    grid : VelocityGrid
        Supplies n and T = 2R; the table covers the doubled mode cube.
    fine : int, optional
        Quadrature points per axis; defaults to ``default_fine(grid.n)``.
        Must be even and at least 2n so every retained mode is resolved.
    """
    n = grid.n
    if fine is None:
        fine = default_fine(n)
    fine = int(fine)
    if fine < 2 * n:
        raise ConfigurationError(f"kernel quadrature needs fine >= 2n, got fine={fine}, n={n}")
    if fine % 2 != 0:
        raise ConfigurationError(f"kernel quadrature resolution must be even, got {fine}")

    workers = fft_workers()
    # Sample coordinates in FFT (wraparound) order so plane transforms need
    # no pre-shift: index m holds z = 2*pi*m/fine with m in [-fine/2, fine/2).
    m = np.fft.fftfreq(fine) * fine
    z = (2.0 * np.pi / fine) * m
    z2 = z * z
    # FFT output positions of the retained modes k = -n .. n-1, in centered order.
    keep = np.concatenate([np.arange(fine - n, fine), np.arange(0, n)])

    buf = np.empty((fine, 2 * n, 2 * n), dtype=np.complex128)
    plane_r2 = z2[:, None] + z2[None, :]
    for ix in range(fine):
        plane = np.sqrt(z2[ix] + plane_r2)
        spec = _fft.fft2(plane, workers=workers)
        buf[ix] = spec[np.ix_(keep, keep)]
    out = _fft.fft(buf, axis=0, workers=workers)
    out = out[keep, :, :]
    out *= (2.0 * np.pi / fine) ** 3 * (grid.T / np.pi) ** 4

    re = np.ascontiguousarray(out.real)
    max_re = float(np.max(np.abs(re)))
    max_im = float(np.max(np.abs(out.imag)))
    if max_im > REALNESS_TOL * max_re:
        raise KernelQuadratureError(
            f"kernel quadrature imaginary part {max_im:.3e} exceeds "
            f"{REALNESS_TOL:.0e} x {max_re:.3e}; the sampled kernel lost its even symmetry"
        )
    # psi_hat(-k) = psi_hat(k) holds exactly for the quadrature; enforce it
    # on the stored table so the symmetry survives transform roundoff.
    core = re[1:, 1:, 1:]
    core += core[::-1, ::-1, ::-1]
    core *= 0.5
    return KernelTable(n=n, T=grid.T, fine=fine, values=re)


def store_kernel(table: KernelTable, path) -> None:
    """Write a kernel table cache.

    Layout: magic "LSKT", version u32, n u32, fine u32, T f64, the (2n)^3
    values as little-endian f64 in storage order, then CRC32 (u32) of the
    value bytes.  All integers little-endian.
    """
    payload = np.ascontiguousarray(table.values, dtype="<f8").tobytes()
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<III", FORMAT_VERSION, table.n, table.fine))
        fh.write(struct.pack("<d", table.T))
        fh.write(payload)
        fh.write(struct.pack("<I", zlib.crc32(payload) & 0xFFFFFFFF))


def load_kernel(path, *, n: int, T: float, fine: int | None = None) -> KernelTable:
    """Read a kernel table cache, validating header and checksum.

    The header must match the requested (n, T) exactly and `fine` as well
    when one is specified; a stale or foreign cache is an error, never a
    silent recompute.
    """
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise KernelCacheError(f"cannot read kernel cache {path}: {exc}") from exc

    head = 4 + 4 + 4 + 4 + 8
    if len(raw) < head + 4 or raw[:4] != MAGIC:
        raise KernelCacheError(f"{path} is not a kernel cache (bad magic or truncated header)")
    version, file_n, file_fine = struct.unpack_from("<III", raw, 4)
    (file_T,) = struct.unpack_from("<d", raw, 16)
    if version != FORMAT_VERSION:
        raise KernelCacheError(f"{path}: unsupported kernel cache version {version}")
    if file_n != n or file_T != float(T):
        raise KernelCacheError(
            f"{path}: cache is for (n={file_n}, T={file_T!r}), requested (n={n}, T={float(T)!r})"
        )
    if fine is not None and file_fine != int(fine):
        raise KernelCacheError(f"{path}: cache quadrature fine={file_fine}, requested fine={fine}")
    count = (2 * file_n) ** 3
    expect = head + 8 * count + 4
    if len(raw) != expect:
        raise KernelCacheError(f"{path}: expected {expect} bytes, found {len(raw)} (truncated or padded)")
    payload = raw[head:head + 8 * count]
    (crc,) = struct.unpack_from("<I", raw, head + 8 * count)
    if zlib.crc32(payload) & 0xFFFFFFFF != crc:
        raise KernelCacheError(f"{path}: CRC mismatch, cache is corrupt")
    values = np.frombuffer(payload, dtype="<f8").astype(np.float64).reshape(
        (2 * file_n,) * 3
    )
    return KernelTable(n=file_n, T=file_T, fine=file_fine, values=values)
