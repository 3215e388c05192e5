"""Deterministic field generators with independently known norms.

Each generator is a pure function of its parameters (seeds included), and
every generated field is band-limited to |xi| <= nyquist/m_max so that
m_max-fold products stay alias-free.  The lacunary and random-band
constructions place all their content on the plateaus of the annular
windows, where exactly one window equals 1 and its neighbors vanish; that
makes their Besov/Triebel norms available in closed form.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy.special import erf

from .dyadic import DyadicSystem
from .grid import Field, Grid
from .norms import sequence_norm

__all__ = [
    "GeneratorSpec", "materialize", "plateau_frequency", "lacunary_field",
    "LacunaryField", "random_band_field", "gaussian_bump", "smoothed_step",
    "pure_wave", "constant_field", "standard_bank", "BankEntry",
    "band_limit", "tuple_bank",
]

DEFAULT_MAX_ARITY = 3


def band_limit(grid, m_max=DEFAULT_MAX_ARITY):
    """Largest |xi| a generated field may carry: nyquist / m_max."""
    return grid.nyquist / float(m_max)


def plateau_frequency(j, grid=None):
    """Integer wavenumber along axis 1 sitting on the plateau of window j.

    ceil(3*2^(j-2)) gives 1, 2, 3, 6, 12, 24, ... which lies inside
    [3*2^(j-2), 2^j] for every j >= 0.
    """
    if j < 0:
        raise ValueError("band index must be nonnegative")
    k = -(-3 * 2 ** j // 4)  # ceil(3*2^j / 4)
    if grid is not None and k > grid.sizes[0] // 2 - 1:
        raise ValueError("plateau frequency %d does not fit the lattice" % k)
    return k


def _wave_index(grid, kvec):
    idx = []
    for k, size in zip(kvec, grid.sizes):
        k = int(k)
        if not -size // 2 <= k <= size // 2 - 1:
            raise ValueError("wavenumber %d outside the lattice" % k)
        idx.append(k % size)
    return tuple(idx)


class LacunaryField(Field):
    """Sum of single waves, one per dyadic plateau, with closed-form norms.

    amplitudes maps the band index j to the coefficient a_j of the wave
    exp(i k_j x_1).  Because each k_j lies on the plateau of window j, the
    block Delta_j returns its wave untouched and |Delta_j f| = |a_j|
    pointwise, so B and F norms both equal the weighted sequence norm of
    the amplitudes.
    """

    __slots__ = ("amplitudes",)

    def oracle_norm(self, s, q):
        if not self.amplitudes:
            return 0.0
        top = max(self.amplitudes)
        a = np.zeros(top + 1)
        for j, amp in self.amplitudes.items():
            a[j] = abs(amp)
        return sequence_norm(a, s, q)


def lacunary_field(grid, amplitudes, sys):
    """Build a lacunary field from {band index: amplitude}.

    Verifies plateau membership on the sampled windows: phi_j must equal 1
    exactly at the chosen frequency and the neighbor windows must vanish
    there; otherwise the frequency is off-plateau and the closed-form oracle
    would lie.  Amplitudes may also be given as a sequence starting at j=0.
    """
    if not isinstance(amplitudes, dict):
        amplitudes = {j: a for j, a in enumerate(amplitudes)}
    amplitudes = {int(j): complex(a) for j, a in amplitudes.items()
                  if a != 0}
    coeffs = np.zeros(grid.sizes, dtype=np.complex128)
    for j, amp in amplitudes.items():
        if not 0 <= j <= sys.jmax:
            raise ValueError("band %d outside 0..%d" % (j, sys.jmax))
        k = plateau_frequency(j, grid)
        idx = _wave_index(grid, (k,) + (0,) * (grid.n - 1))
        if sys.phi[j][idx] != 1.0:
            raise ValueError("frequency %d off the plateau of window %d"
                             % (k, j))
        for jn in (j - 1, j + 1):
            if 0 <= jn <= sys.jmax and sys.phi[jn][idx] != 0.0:
                raise ValueError("window %d does not vanish at frequency %d"
                                 % (jn, k))
        coeffs[idx] = amp
    out = LacunaryField(grid,
                        np.fft.ifftn(coeffs) * grid.npoints,
                        coeffs)
    out.amplitudes = amplitudes
    return out


def _plateau_mask(sys, j, cap):
    return (sys.phi[j] == 1.0) & (sys.grid.xi <= cap)


def random_band_field(grid, s, p, seed, sys, m_max=DEFAULT_MAX_ARITY,
                      bands=None):
    """Random-phase field with lp_norm(Delta_j f) = 2^(-js) on each band.

    Each usable band's plateau points (inside the band limit) get
    unit-modulus coefficients with phases from a per-band PCG64 stream, then
    the band is rescaled to hit the target block norm exactly.  Since all
    content sits on plateaus, besov_norm(f; s, p, inf) = 1 by construction.
    """
    cap = band_limit(grid, m_max)
    if bands is None:
        bands = range(sys.jmax + 1)
    coeffs = np.zeros(grid.sizes, dtype=np.complex128)
    filled = []
    for j in bands:
        mask = _plateau_mask(sys, j, cap)
        count = int(mask.sum())
        if count == 0:
            continue
        rng = np.random.default_rng([int(seed), j])
        phases = np.exp(2j * np.pi * rng.random(count))
        band = np.zeros(grid.sizes, dtype=np.complex128)
        band[mask] = phases
        values = np.fft.ifftn(band) * grid.npoints
        if p == math.inf:
            size = float(np.abs(values).max())
        else:
            size = float(np.mean(np.abs(values) ** p) ** (1.0 / p))
        coeffs += band * (2.0 ** (-float(s) * j) / size)
        filled.append(j)
    if not filled:
        raise ValueError("no usable plateau frequencies under the band limit")
    return Field.from_spectral(grid, coeffs)


def _truncate_real(grid, values, m_max):
    """Band-limit real samples radially and renormalize to max 1."""
    coeffs = np.fft.fftn(np.asarray(values, dtype=np.complex128))
    coeffs[grid.xi > band_limit(grid, m_max)] = 0.0
    out = np.fft.ifftn(coeffs).real
    top = np.abs(out).max()
    if top == 0.0:
        raise ValueError("field vanished under band limiting")
    return Field.from_physical(grid, out / top)


def gaussian_bump(grid, center=None, width=0.5, m_max=DEFAULT_MAX_ARITY):
    """Periodized Gaussian bump, band-limited, max value 1.

    The center snaps to the nearest lattice point so the sampled field is
    exactly symmetric about it.  width is the Gaussian sigma in physical
    units.
    """
    width = float(width)
    if not width > 0.0:
        raise ValueError("width must be positive")
    if center is None:
        center = (grid.period / 2.0,) * grid.n
    center = [round(float(c) / h) * h
              for c, h in zip(np.atleast_1d(center), grid.spacing)]
    coords = grid.coords()
    r2 = np.zeros(grid.sizes)
    for x, c in zip(coords, center):
        d = np.mod(x - c + grid.period / 2.0, grid.period) - grid.period / 2.0
        r2 += d * d
    return _truncate_real(grid, np.exp(-r2 / (2.0 * width ** 2)), m_max)


def smoothed_step(grid, edge_width=0.25, m_max=DEFAULT_MAX_ARITY):
    """Gaussian-smoothed indicator of the middle half along axis 1.

    Built from periodized erf differences, so it is analytic with spectrum
    decaying like exp(-(xi*w)^2/2); at the default width the band-limit
    truncation is numerically inert.  Values lie in [0, 1], rising across
    x = period/4 and falling across x = 3*period/4.
    """
    w = float(edge_width)
    if not w > 0.0:
        raise ValueError("edge width must be positive")
    P = grid.period
    a, b = P / 4.0, 3.0 * P / 4.0
    x = grid.coords()[0]
    values = np.zeros(grid.sizes)
    for wrap in range(-2, 3):
        shift = wrap * P
        values += 0.5 * (erf((x - a + shift) / (math.sqrt(2.0) * w))
                         - erf((x - b + shift) / (math.sqrt(2.0) * w)))
    return _truncate_real(grid, values, m_max)


def pure_wave(grid, kvec):
    """exp(i k.x) for an integer wavenumber vector."""
    if np.isscalar(kvec):
        kvec = (kvec,) + (0,) * (grid.n - 1)
    coeffs = np.zeros(grid.sizes, dtype=np.complex128)
    coeffs[_wave_index(grid, kvec)] = 1.0
    return Field.from_spectral(grid, coeffs)


def constant_field(grid, value=1.0):
    coeffs = np.zeros(grid.sizes, dtype=np.complex128)
    coeffs[(0,) * grid.n] = value
    return Field.from_spectral(grid, coeffs)


@dataclass(frozen=True)
class GeneratorSpec:
    """Serializable recipe for one generated field."""

    kind: str
    params: dict = dc_field(default_factory=dict)
    grid: dict = dc_field(default_factory=dict)

    def to_json(self):
        payload = {"kind": self.kind, "params": self.params,
                   "grid": self.grid}
        return json.dumps(payload, sort_keys=True, separators=(",", ": "))

    @classmethod
    def from_json(cls, text):
        payload = json.loads(text)
        return cls(kind=payload["kind"], params=payload.get("params", {}),
                   grid=payload["grid"])


def spec_for(kind, grid, **params):
    return GeneratorSpec(kind=kind, params=params,
                         grid={"n": grid.n, "sizes": list(grid.sizes),
                               "period": grid.period})


def materialize(spec, sys=None):
    """Build the field a GeneratorSpec describes (bitwise reproducible)."""
    if isinstance(spec, str):
        spec = GeneratorSpec.from_json(spec)
    g = spec.grid
    grid = Grid(g["n"], g["sizes"], g.get("period", 2.0 * np.pi))
    if sys is not None and not sys.grid.compatible(grid):
        raise ValueError("provided dyadic system does not match spec grid")
    params = dict(spec.params)
    kind = spec.kind
    if kind in ("lacunary", "random-band") and sys is None:
        sys = DyadicSystem(grid)
    if kind == "lacunary":
        amps = {int(j): complex(re, im)
                for j, (re, im) in params["amplitudes"].items()}
        return lacunary_field(grid, amps, sys)
    if kind == "random-band":
        return random_band_field(grid, params["s"], params["p"],
                                 params["seed"], sys,
                                 params.get("m_max", DEFAULT_MAX_ARITY))
    if kind == "gaussian-bump":
        return gaussian_bump(grid, params.get("center"),
                             params.get("width", 0.5),
                             params.get("m_max", DEFAULT_MAX_ARITY))
    if kind == "smoothed-step":
        return smoothed_step(grid, params.get("edge_width", 0.25),
                             params.get("m_max", DEFAULT_MAX_ARITY))
    if kind == "pure-wave":
        return pure_wave(grid, params["k"])
    if kind == "constant":
        return constant_field(grid, params.get("value", 1.0))
    raise ValueError("unknown generator kind %r" % (kind,))


@dataclass
class BankEntry:
    name: str
    field: Field
    spec: GeneratorSpec


def _lacunary_spec_params(amplitudes):
    return {"amplitudes": {str(j): (a.real, a.imag)
                           for j, a in amplitudes.items()}}


def standard_bank(grid, sys, m_max=DEFAULT_MAX_ARITY, seed=811):
    """The fixed field collection every sweep runs over (>= 20 entries).

    Lacunary families with three amplitude laws, random-band fields across
    smoothness/integrability targets, bumps, steps, waves, and the constant.
    All entries respect the band limit for m_max-fold products.
    """
    cap = band_limit(grid, m_max)
    jtop = max(j for j in range(sys.jmax + 1)
               if plateau_frequency(j) <= cap)

    entries = []

    def add(name, fieldval, spec):
        entries.append(BankEntry(name, fieldval, spec))

    laws = {
        "geometric": {j: 2.0 ** (-j) for j in range(jtop + 1)},
        "flat": {j: 1.0 + 0j for j in range(jtop + 1)},
        "alternating": {j: ((-1) ** j) * 2.0 ** (-0.5 * j)
                        for j in range(jtop + 1)},
    }
    for law, amps in laws.items():
        amps = {j: complex(a) for j, a in amps.items()}
        add("lacunary-%s" % law, lacunary_field(grid, amps, sys),
            GeneratorSpec("lacunary", _lacunary_spec_params(amps),
                          {"n": grid.n, "sizes": list(grid.sizes),
                           "period": grid.period}))

    combos = [(-1.0, 1.0), (-1.0, 2.0), (0.0, 1.0), (0.0, 2.0),
              (0.5, 1.0), (0.5, 2.0), (1.0, 1.0), (1.0, 2.0),
              (2.0, 1.0), (2.0, 2.0), (1.5, 4.0), (0.5, 0.5)]
    for i, (s, p) in enumerate(combos):
        sd = seed + i
        add("random-band[s=%g,p=%g]" % (s, p),
            random_band_field(grid, s, p, sd, sys, m_max),
            spec_for("random-band", grid, s=s, p=p, seed=sd, m_max=m_max))

    for width in (0.4, 0.8):
        add("gaussian-bump[w=%g]" % width,
            gaussian_bump(grid, None, width, m_max),
            spec_for("gaussian-bump", grid, width=width, m_max=m_max))
    for width in (0.25, 0.5):
        add("smoothed-step[w=%g]" % width,
            smoothed_step(grid, width, m_max),
            spec_for("smoothed-step", grid, edge_width=width, m_max=m_max))

    for k in (1, 4):
        add("pure-wave[k=%d]" % k, pure_wave(grid, k),
            spec_for("pure-wave", grid, k=k))
    add("constant", constant_field(grid),
        spec_for("constant", grid, value=1.0))

    return entries


def tuple_bank(grid, sys, params, seed, count, with_step=True):
    """Random m-tuples matched to a theorem parameter list [(s_i, p_i)].

    Tuple t, slot i draws from the stream [seed, t, i]; when with_step is
    set, the first tuple swaps a smoothed step into slot 2 to exercise a
    non-random factor.
    """
    m = len(params)
    tuples = []
    for t in range(count):
        fields = []
        for i, (s, p) in enumerate(params):
            p_eff = 2.0 if p == math.inf else min(p, 4.0)
            fields.append(random_band_field(
                grid, s, p_eff, seed * 1000 + t * 10 + i, sys))
        if with_step and t == 0 and m >= 2:
            fields[1] = smoothed_step(grid)
        tuples.append(tuple(fields))
    return tuples
