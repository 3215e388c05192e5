"""Quasi-norms built on the frequency blocks.

Exponent conventions used throughout:

* the torus carries total measure 1, so L_p means (mean |f|^p)^(1/p) and the
  essential supremum is the plain maximum over samples;
* p and q below 1 are computed verbatim as quasi-norms;
* q = inf and p = inf take suprema;
* sums over the band index stop at jmax, which is exact for grid fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dyadic import BandDecomposition, decompose
from .grid import Field

INF = math.inf

__all__ = [
    "SpaceSpec", "lp_norm", "sequence_norm", "lp_of_lq", "lq_of_lp",
    "besov_norm", "triebel_norm",
]

_FAMILY_ALIASES = {
    "b": "B", "besov": "B",
    "f": "F", "triebellizorkin": "F", "triebel-lizorkin": "F", "triebel": "F",
}


def _check_exponent(value, name, allow_inf=True):
    if value == INF:
        if not allow_inf:
            raise ValueError("%s must be finite" % name)
        return INF
    value = float(value)
    if not value > 0.0 or not math.isfinite(value):
        raise ValueError("%s must satisfy 0 < %s <= inf, got %r"
                         % (name, name, value))
    return value


@dataclass(frozen=True)
class SpaceSpec:
    """Identifies one quasi-norm: family 'B' or 'F', smoothness s, and the
    integrability/fine exponents p, q (0 < p,q <= inf; 'F' needs p < inf)."""

    family: str
    s: float
    p: float
    q: float

    def __post_init__(self):
        fam = _FAMILY_ALIASES.get(str(self.family).lower())
        if fam is None:
            raise ValueError("unknown family %r (use 'B' or 'F')"
                             % (self.family,))
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "p", _check_exponent(self.p, "p"))
        object.__setattr__(self, "q", _check_exponent(self.q, "q"))
        if fam == "F" and self.p == INF:
            raise ValueError("the F family requires p < inf")

    def label(self):
        def ex(v):
            return "inf" if v == INF else ("%g" % v)
        return "%s^%g_{%s,%s}" % (self.family, self.s, ex(self.p), ex(self.q))


def _samples(f):
    if isinstance(f, Field):
        return f.physical
    return np.asarray(f)


def lp_norm(f, p):
    """(mean |f|^p)^(1/p) over the grid, max |f| for p = inf.

    Accepts a Field or a bare sample array; absolutely homogeneous in f.
    """
    p = _check_exponent(p, "p")
    a = np.abs(_samples(f))
    if a.size == 0:
        return 0.0
    if p == INF:
        return float(a.max())
    return float(np.mean(a ** p) ** (1.0 / p))


def sequence_norm(a, s, q):
    """Weighted sequence norm (sum_j 2^{jsq} |a_j|^q)^(1/q), sup for q=inf."""
    q = _check_exponent(q, "q")
    a = np.abs(np.asarray(a, dtype=float).ravel())
    if a.size == 0:
        return 0.0
    w = 2.0 ** (float(s) * np.arange(a.size))
    wa = w * a
    if q == INF:
        return float(wa.max())
    return float(np.sum(wa ** q) ** (1.0 / q))


def _block_magnitudes(blocks):
    if isinstance(blocks, BandDecomposition):
        blocks = blocks.blocks
    return [np.abs(_samples(b)) for b in blocks]


def lp_of_lq(blocks, s, p, q):
    """L_p of the pointwise weighted l_q across bands (the F-norm kernel)."""
    p = _check_exponent(p, "p", allow_inf=False)
    q = _check_exponent(q, "q")
    mags = _block_magnitudes(blocks)
    if not mags:
        return 0.0
    stack = np.stack(mags)
    w = 2.0 ** (float(s) * np.arange(stack.shape[0]))
    w = w.reshape((-1,) + (1,) * (stack.ndim - 1))
    ws = w * stack
    if q == INF:
        inner = ws.max(axis=0)
    else:
        inner = np.sum(ws ** q, axis=0) ** (1.0 / q)
    return lp_norm(inner, p)


def lq_of_lp(blocks, s, p, q):
    """Weighted l_q of the per-band L_p norms (the B-norm kernel)."""
    p = _check_exponent(p, "p")
    q = _check_exponent(q, "q")
    mags = _block_magnitudes(blocks)
    if not mags:
        return 0.0
    per_band = [lp_norm(m, p) for m in mags]
    return sequence_norm(per_band, s, q)


def besov_norm(f, spec, sys):
    """The B^s_{p,q} quasi-norm of a field: l^s_q of the block L_p norms."""
    if spec.family != "B":
        raise ValueError("besov_norm needs a 'B' spec, got %s" % spec.label())
    return lq_of_lp(decompose(f, sys), spec.s, spec.p, spec.q)


def triebel_norm(f, spec, sys):
    """The F^s_{p,q} quasi-norm of a field: L_p of the pointwise l^s_q."""
    if spec.family != "F":
        raise ValueError("triebel_norm needs an 'F' spec, got %s"
                         % spec.label())
    return lp_of_lq(decompose(f, sys), spec.s, spec.p, spec.q)
