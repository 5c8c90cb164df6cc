"""Binary snapshots of distribution fields.

Layout: magic "LSPF", version u32, n u32, R f64, t f64, then the n^3
nodal values as little-endian f64 in storage order (see
:mod:`landau.grid`), then CRC32 (u32) of the value bytes.  Integers are
little-endian.  Round-trips are bit-exact, so a dump can seed a restart
that continues the original trajectory.
"""

from __future__ import annotations

import struct
import zlib

import numpy as np

from .errors import FieldFormatError
from .grid import make_grid
from .spectral import DistributionField

MAGIC = b"LSPF"
FORMAT_VERSION = 1


def write_field(path, f: DistributionField, t: float) -> None:
    """Write one field snapshot taken at time t."""
    payload = np.ascontiguousarray(f.values, dtype="<f8").tobytes()
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<II", FORMAT_VERSION, f.grid.n))
        fh.write(struct.pack("<dd", f.grid.R, float(t)))
        fh.write(payload)
        fh.write(struct.pack("<I", zlib.crc32(payload) & 0xFFFFFFFF))


def read_field(path) -> tuple[DistributionField, float]:
    """Read a snapshot back; returns the field and its dump time."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise FieldFormatError(f"cannot read field dump {path}: {exc}") from exc

    head = 4 + 4 + 4 + 8 + 8
    if len(raw) < head + 4 or raw[:4] != MAGIC:
        raise FieldFormatError(f"{path} is not a field dump (bad magic or truncated header)")
    version, n = struct.unpack_from("<II", raw, 4)
    R, t = struct.unpack_from("<dd", raw, 12)
    if version != FORMAT_VERSION:
        raise FieldFormatError(f"{path}: unsupported field dump version {version}")
    count = n ** 3
    expect = head + 8 * count + 4
    if len(raw) != expect:
        raise FieldFormatError(f"{path}: expected {expect} bytes, found {len(raw)} (truncated or padded)")
    payload = raw[head:head + 8 * count]
    (crc,) = struct.unpack_from("<I", raw, head + 8 * count)
    if zlib.crc32(payload) & 0xFFFFFFFF != crc:
        raise FieldFormatError(f"{path}: CRC mismatch, dump is corrupt")
    values = np.frombuffer(payload, dtype="<f8").astype(np.float64).reshape((n, n, n))
    return DistributionField(make_grid(n, R), values), float(t)
