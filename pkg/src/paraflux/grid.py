"""Periodic grids and sampled complex fields.

The domain is the torus [0, period)^n sampled on a uniform lattice with a
power-of-two number of points per axis.  Frequencies live on the centered
integer lattice {-size/2, ..., size/2 - 1} per axis; the continuous frequency
attached to an integer vector k is (2*pi/period) * k, so with the default
period 2*pi the two coincide.  All norms downstream use the unit-measure
convention (integrals are plain averages over the sample points), which makes
every pure wave exp(i xi.x) have L_p norm 1 for every p.
"""

from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi

__all__ = ["Grid", "Field", "build_grid"]


def _is_pow2(m):
    return m >= 1 and (m & (m - 1)) == 0


class Grid:
    """Uniform periodic grid with precomputed frequency geometry.

    Attributes
    ----------
    n : int
        Spatial dimension, 1 to 3.
    sizes : tuple of int
        Points per axis, each a power of two >= 16.
    period : float
        Physical length per axis (default 2*pi).
    npoints : int
        Total number of lattice points.
    xi : ndarray
        |xi| modulus array over the frequency lattice, FFT order.
    nyquist : float
        Largest resolvable |xi| along the shortest axis, (2*pi/period)*min/2.
    jmax : int
        Largest dyadic index j with 3*2^(j-1) <= nyquist, so that the support
        of the j-th annular cutoff fits inside the lattice.
    """

    def __init__(self, n, sizes, period=TWO_PI):
        n = int(n)
        if n not in (1, 2, 3):
            raise ValueError("dimension must be 1, 2, or 3, got %r" % (n,))
        sizes = tuple(int(s) for s in sizes)
        if len(sizes) != n:
            raise ValueError("expected %d axis sizes, got %r" % (n, sizes))
        for s in sizes:
            if not _is_pow2(s) or s < 16:
                raise ValueError(
                    "axis size must be a power of two >= 16, got %d" % s)
        period = float(period)
        if not (period > 0.0 and np.isfinite(period)):
            raise ValueError("period must be positive and finite")

        self.n = n
        self.sizes = sizes
        self.period = period
        self.npoints = int(np.prod(sizes))
        self.spacing = period / np.asarray(sizes, dtype=float)

        scale = TWO_PI / period
        # integer wavenumbers per axis in FFT order, as exact floats
        axes = [np.fft.fftfreq(s, d=1.0 / s) for s in sizes]
        mesh = np.meshgrid(*axes, indexing="ij")
        self.k = tuple(_freeze(m) for m in mesh)
        self.xi = _freeze(scale * np.sqrt(sum(m * m for m in mesh)))
        self.nyquist = scale * (min(sizes) // 2)

        j = 0
        while 3.0 * 2.0 ** j <= self.nyquist:
            j += 1
        self.jmax = j
        if self.jmax < 2:
            raise ValueError(
                "grid too coarse: need at least 3 dyadic bands, "
                "largest admissible index is %d" % self.jmax)

    def coords(self):
        """Per-axis sample coordinate arrays (meshgrid, ij indexing)."""
        axes = [np.arange(s) * (self.period / s) for s in self.sizes]
        return np.meshgrid(*axes, indexing="ij")

    def compatible(self, other):
        return (self.n == other.n and self.sizes == other.sizes
                and self.period == other.period)

    def __repr__(self):
        return "Grid(n=%d, sizes=%r, period=%.6g, jmax=%d)" % (
            self.n, self.sizes, self.period, self.jmax)


def _freeze(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def build_grid(n, size, period=TWO_PI):
    """Build an n-dimensional grid with `size` points along every axis.

    Raises ValueError for a dimension outside 1..3, a size that is not a
    power of two >= 16, or a grid too coarse to carry three dyadic bands.
    """
    return Grid(n, (size,) * int(n), period)


class Field:
    """Complex field on a grid, kept synchronized in both representations.

    Coefficient convention: f(x) = sum_k c_k exp(i xi_k . x), i.e.
    spectral = fft(physical) / npoints and physical = ifft(spectral) * npoints.
    Under the unit-measure convention this makes Parseval read
    mean(|f|^2) = sum(|c_k|^2).  Instances are immutable; arithmetic returns
    new fields.
    """

    __slots__ = ("grid", "physical", "spectral")

    normalization = "unit-measure, coefficient spectra"

    def __init__(self, grid, physical, spectral):
        self.grid = grid
        self.physical = _freeze(np.asarray(physical, dtype=np.complex128))
        self.spectral = _freeze(np.asarray(spectral, dtype=np.complex128))

    @classmethod
    def from_physical(cls, grid, values):
        values = np.asarray(values, dtype=np.complex128)
        if values.shape != grid.sizes:
            raise ValueError("sample shape %r does not match grid %r"
                             % (values.shape, grid.sizes))
        coeffs = np.fft.fftn(values) / grid.npoints
        return cls(grid, values, coeffs)

    @classmethod
    def from_spectral(cls, grid, coeffs):
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        if coeffs.shape != grid.sizes:
            raise ValueError("coefficient shape %r does not match grid %r"
                             % (coeffs.shape, grid.sizes))
        values = np.fft.ifftn(coeffs) * grid.npoints
        return cls(grid, values, coeffs)

    @classmethod
    def zeros(cls, grid):
        z = np.zeros(grid.sizes, dtype=np.complex128)
        return cls(grid, z, z)

    def l2(self):
        """sqrt(mean |f|^2), equal to the l2 norm of the coefficients."""
        return float(np.sqrt(np.mean(np.abs(self.physical) ** 2)))

    def _check(self, other):
        if not isinstance(other, Field):
            raise TypeError("expected a Field, got %r" % type(other).__name__)
        if not self.grid.compatible(other.grid):
            raise ValueError("fields live on incompatible grids")

    def __add__(self, other):
        self._check(other)
        return Field(self.grid, self.physical + other.physical,
                     self.spectral + other.spectral)

    def __sub__(self, other):
        self._check(other)
        return Field(self.grid, self.physical - other.physical,
                     self.spectral - other.spectral)

    def __neg__(self):
        return Field(self.grid, -self.physical, -self.spectral)

    def __mul__(self, alpha):
        if isinstance(alpha, Field):
            raise TypeError("pointwise field products alias; "
                            "use paraproduct.dealiased_product")
        alpha = complex(alpha)
        return Field(self.grid, alpha * self.physical, alpha * self.spectral)

    __rmul__ = __mul__

    def __repr__(self):
        return "Field(%r, l2=%.6g)" % (self.grid, self.l2())
