"""Binary field files (FLD1).

Layout, all little-endian:

    bytes 0..3   magic "FLD1"
    u32          n (dimension)
    u32 * n      sizes per axis
    f64          period
    u8           domain tag: 0 = physical samples, 1 = spectral coefficients
    c128 * prod  samples, row-major

Physical samples are stored in grid order.  Spectral coefficients are stored
row-major over the centered lattice, i.e. ascending integer wavenumber
-size/2 .. size/2-1 per axis (an fftshift of the in-memory FFT order).
"""

from __future__ import annotations

import struct

import numpy as np

from .grid import Field, Grid

MAGIC = b"FLD1"
DOMAIN_PHYSICAL = 0
DOMAIN_SPECTRAL = 1

__all__ = ["read_field", "write_field", "MAGIC"]


def write_field(path, field, domain="physical"):
    """Write a Field to an FLD1 file in the requested domain."""
    if domain == "physical":
        tag, data = DOMAIN_PHYSICAL, field.physical
    elif domain == "spectral":
        tag, data = DOMAIN_SPECTRAL, np.fft.fftshift(field.spectral)
    else:
        raise ValueError("domain must be 'physical' or 'spectral', got %r"
                         % (domain,))
    g = field.grid
    header = struct.pack("<4sI", MAGIC, g.n)
    header += struct.pack("<%dI" % g.n, *g.sizes)
    header += struct.pack("<dB", g.period, tag)
    payload = np.ascontiguousarray(data, dtype="<c16").tobytes()
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload)


def read_field(path):
    """Read an FLD1 file back into a Field."""
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < 8 or raw[:4] != MAGIC:
        raise ValueError("%s: not an FLD1 file" % (path,))
    (n,) = struct.unpack_from("<I", raw, 4)
    if n < 1 or n > 3:
        raise ValueError("%s: bad dimension %d" % (path, n))
    off = 8
    sizes = struct.unpack_from("<%dI" % n, raw, off)
    off += 4 * n
    period, tag = struct.unpack_from("<dB", raw, off)
    off += 9
    grid = Grid(n, sizes, period)
    count = grid.npoints
    expected = off + 16 * count
    if len(raw) != expected:
        raise ValueError("%s: expected %d bytes, found %d"
                         % (path, expected, len(raw)))
    data = np.frombuffer(raw, dtype="<c16", count=count, offset=off)
    data = data.reshape(sizes).astype(np.complex128)
    if tag == DOMAIN_PHYSICAL:
        return Field.from_physical(grid, data)
    if tag == DOMAIN_SPECTRAL:
        return Field.from_spectral(grid, np.fft.ifftshift(data))
    raise ValueError("%s: unknown domain tag %d" % (path, tag))
