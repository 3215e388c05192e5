"""Arithmetic validators for the embedding and multiplication hypotheses.

Each checker evaluates every inequality of its hypothesis set on concrete
numbers and returns a HypothesisReport: the per-condition verdicts (with the
inequality rendered numerically), the conjunction, and derived quantities
such as the admissible interval for 1/p.  Checkers report, they never throw
on unsatisfied hypotheses.

Comparisons are plain float comparisons on the given exponents; the one
derived quantity compared for equality, the differential dimension s - n/p,
uses a 1e-12 absolute tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

INF = math.inf

__all__ = [
    "HypothesisReport", "check_embedding_hypotheses",
    "check_theorem_hypotheses", "pick_admissible_p",
]

_EQ_TOL = 1e-12


def _inv(p):
    return 0.0 if p == INF else 1.0 / p


def _ex(v):
    return "inf" if v == INF else ("%g" % (v,))


def _diffdim_eq(a, b):
    return abs(a - b) <= _EQ_TOL


@dataclass
class HypothesisReport:
    """Outcome of one hypothesis check.

    satisfied is the conjunction of all condition flags; conditions holds
    (name, rendered inequality, flag) triples; derived carries computed
    quantities (admissible 1/p interval, h_i ranges, gap, ...).
    """

    satisfied: bool
    conditions: list
    derived: dict = field(default_factory=dict)

    def failed(self):
        return [name for name, _, ok in self.conditions if not ok]

    def condition(self, name):
        for cname, rendered, ok in self.conditions:
            if cname == name:
                return rendered, ok
        raise KeyError(name)

    def summary(self):
        lines = ["satisfied" if self.satisfied else "not satisfied"]
        for name, rendered, ok in self.conditions:
            lines.append("  [%s] %-22s %s" % ("ok" if ok else "XX",
                                              name, rendered))
        return "\n".join(lines)


def _finish(conditions, derived):
    return HypothesisReport(
        satisfied=all(ok for _, _, ok in conditions),
        conditions=conditions,
        derived=derived,
    )


def check_embedding_hypotheses(spec0, spec1, n, mode=None):
    """Validate the hypotheses for spec0 embedding into spec1.

    mode 'same-family' checks the monotone embedding (equal families):
    either s0 > s1 with p0 = p1, or s0 >= s1 along the line of equal
    differential dimension s - n/p (with q0 <= q1 required for Besov).
    mode 'franke-jawerth' checks the cross-family chain link, requiring one
    Besov and one Triebel-Lizorkin spec with all p finite and equal
    differential dimensions.  When mode is None it is inferred from the
    families.
    """
    n = int(n)
    if n < 1:
        raise ValueError("dimension must be positive")
    if mode is None:
        mode = ("same-family" if spec0.family == spec1.family
                else "franke-jawerth")
    if mode not in ("same-family", "franke-jawerth"):
        raise ValueError("unknown mode %r" % (mode,))

    d0 = spec0.s - n * _inv(spec0.p)
    d1 = spec1.s - n * _inv(spec1.p)
    derived = {"mode": mode, "diffdim": (d0, d1)}
    conds = []

    if mode == "same-family":
        conds.append((
            "family-match",
            "%s vs %s" % (spec0.family, spec1.family),
            spec0.family == spec1.family,
        ))
        strict = spec0.s > spec1.s and spec0.p == spec1.p
        line = spec0.s >= spec1.s and _diffdim_eq(d0, d1)
        if spec0.family == "B" == spec1.family:
            line = line and spec0.q <= spec1.q
            line_desc = ("s0>=s1, s0-n/p0 = %g = %g = s1-n/p1, q0<=q1"
                         % (d0, d1))
        else:
            line_desc = "s0>=s1, s0-n/p0 = %g = %g = s1-n/p1" % (d0, d1)
        conds.append((
            "monotone-or-diffdim",
            "(s0=%g > s1=%g with p0=p1) or (%s)"
            % (spec0.s, spec1.s, line_desc),
            strict or line,
        ))
        derived["branch"] = ("strict" if strict else
                             "diffdim" if line else "none")
        return _finish(conds, derived)

    # Franke-Jawerth: exactly one Besov and one Triebel-Lizorkin side.
    pair_ok = {spec0.family, spec1.family} == {"B", "F"}
    conds.append((
        "family-pair",
        "%s -> %s (need one B and one F)" % (spec0.family, spec1.family),
        pair_ok,
    ))
    finite = spec0.p < INF and spec1.p < INF
    conds.append((
        "p-finite",
        "p0=%s, p1=%s < inf" % (_ex(spec0.p), _ex(spec1.p)),
        finite,
    ))
    conds.append((
        "diffdim",
        "s0-n/p0 = %g vs s1-n/p1 = %g" % (d0, d1),
        _diffdim_eq(d0, d1),
    ))
    if pair_ok:
        if spec0.family == "B":
            # B^{s0}_{p0,q0} -> F^{s}_{p,q}
            s, p, q = spec1.s, spec1.p, spec1.q
            strict = spec0.s > s and spec0.q <= p
            equal = spec0.s == s and spec0.q <= min(p, q)
            rendered = ("(s0=%g > s=%g and q0=%s <= p=%s) or "
                        "(s0=s and q0 <= min(p,q)=%s)"
                        % (spec0.s, s, _ex(spec0.q), _ex(p),
                           _ex(min(p, q))))
        else:
            # F^{s}_{p,q} -> B^{s1}_{p1,q1}
            s, p, q = spec0.s, spec0.p, spec0.q
            strict = s > spec1.s and spec1.q >= p
            equal = s == spec1.s and spec1.q >= max(p, q)
            rendered = ("(s=%g > s1=%g and q1=%s >= p=%s) or "
                        "(s=s1 and q1 >= max(p,q)=%s)"
                        % (s, spec1.s, _ex(spec1.q), _ex(p),
                           _ex(max(p, q))))
        conds.append(("fj-branch", rendered, strict or equal))
        derived["branch"] = ("strict" if strict else
                             "equal" if equal else "none")
    return _finish(conds, derived)


def check_theorem_hypotheses(params, q, n, mode):
    """Validate the multiplication-theorem hypotheses.

    params is the list of (s_i, p_i) pairs for i = 1..m; mode 'positive'
    checks the positive-smoothness ordering 0 < s1 < s2 <= ... <= s_m plus
    s1 < n/p1, mode 'negative' checks s1 <= 0 < s2 <= ... <= s_m plus
    s1 + s2 > 0.  Both check 1 <= p1 < inf, the per-factor feasibility of
    (1/p_i - s_i/n)_+ < 1/h_i <= 1/p_i, and that the implied interval for
    1/p intersects (0, 1).  derived holds the h_i ranges and the admissible
    1/p interval (open left, closed right, capped strictly below 1).
    """
    params = [(float(s), (INF if p == INF else float(p))) for s, p in params]
    m = len(params)
    if m < 2:
        raise ValueError("need at least two factors, got %d" % m)
    if mode not in ("positive", "negative"):
        raise ValueError("mode must be 'positive' or 'negative'")
    n = int(n)
    if n < 1:
        raise ValueError("dimension must be positive")

    s = [si for si, _ in params]
    p = [pi for _, pi in params]
    conds = []

    conds.append((
        "p1-range",
        "1 <= p1=%s < inf" % _ex(p[0]),
        1.0 <= p[0] < INF,
    ))
    conds.append((
        "pi-range",
        "0 < p_i <= inf for i>=2: %s" % ", ".join(_ex(v) for v in p[1:]),
        all(v > 0 for v in p[1:]),
    ))
    conds.append((
        "q-range",
        "0 < q=%s <= inf" % _ex(q),
        (q == INF) or (0.0 < q < INF),
    ))

    tail_sorted = all(s[i] <= s[i + 1] for i in range(1, m - 1))
    if mode == "positive":
        conds.append((
            "ordering",
            "0 < s1=%g < s2=%g <= ... <= s_m" % (s[0], s[1]),
            0.0 < s[0] < s[1] and tail_sorted,
        ))
        conds.append((
            "s1-subcritical",
            "s1=%g < n/p1=%g" % (s[0], n * _inv(p[0])),
            s[0] < n * _inv(p[0]),
        ))
    else:
        conds.append((
            "ordering",
            "s1=%g <= 0 < s2=%g <= ... <= s_m" % (s[0], s[1]),
            s[0] <= 0.0 < s[1] and tail_sorted,
        ))
        conds.append((
            "s1-plus-s2",
            "s1+s2 = %g > 0" % (s[0] + s[1]),
            s[0] + s[1] > 0.0,
        ))

    # per-factor h_i range: (1/p_i - s_i/n)_+ < 1/h_i <= 1/p_i
    h_ranges = []
    factor_ok = True
    for si, pi in params[1:]:
        lo = max(_inv(pi) - si / n, 0.0)
        hi = _inv(pi)
        h_ranges.append((lo, hi))
        factor_ok = factor_ok and lo < hi
    conds.append((
        "h-feasible",
        "(1/p_i - s_i/n)_+ < 1/p_i per factor: %s"
        % ", ".join("(%g, %g]" % r for r in h_ranges),
        factor_ok,
    ))

    lo_p = _inv(p[0]) + sum(lo for lo, _ in h_ranges)
    hi_p = _inv(p[0]) + sum(hi for _, hi in h_ranges)
    hi_eff = min(hi_p, 1.0)
    interval_ok = lo_p < hi_eff  # (lo, hi] intersected with (0, 1) nonempty
    conds.append((
        "p-interval",
        "1/p in (%g, %g%s with 1/p < 1" % (
            lo_p, hi_p, "]" if hi_p < 1.0 else ") after capping at 1"),
        interval_ok,
    ))

    derived = {
        "mode": mode,
        "m": m,
        "h_ranges": h_ranges,
        "inv_p_interval": (lo_p, hi_p),
        "inv_p_interval_capped": (lo_p, hi_eff, hi_p < 1.0),
    }
    return _finish(conds, derived)


def pick_admissible_p(report, position=0.5):
    """A p inside the report's admissible interval for 1/p.

    position slides from just above the open left end (0) to the right end
    (1).  Raises if the report's interval is empty.
    """
    lo, hi, closed = report.derived["inv_p_interval_capped"]
    if not lo < hi:
        raise ValueError("admissible interval for 1/p is empty")
    if not 0.0 < position <= 1.0:
        raise ValueError("position must lie in (0, 1]")
    if position == 1.0 and not closed:
        position = 0.999
    inv = lo + (hi - lo) * position
    return 1.0 / inv
