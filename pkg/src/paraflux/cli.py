"""paraflux command line: norms, product decompositions, and audit sweeps.

Every command is a pure function of its flags (plus the PARAFLUX_THREADS
worker cap, which never changes values, only scheduling), so two runs with
the same flags write byte-identical output.  Exit codes: 0 clean, 1 a hard
numerical assertion failed, 2 invalid configuration, 3 I/O trouble.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys as _sys

from . import fldio
from .audit import lemma_suite, run_audit_manifest
from .dyadic import build_dyadic_system
from .grid import TWO_PI, build_grid
from .norms import SpaceSpec, besov_norm, triebel_norm
from .paraproduct import decompose_product, dump_decomposition, min_gap
from .testbank import (GeneratorSpec, materialize, pure_wave, spec_for,
                       standard_bank, tuple_bank)

__all__ = ["main"]


class ConfigError(Exception):
    """Bad flag combination or bad input values: exit code 2."""


def _exponent(text):
    try:
        value = float(text)
    except ValueError:
        raise ConfigError("not an exponent: %r (use a number or 'inf')"
                          % (text,))
    if math.isnan(value):
        raise ConfigError("exponent may not be nan")
    return value


def _fmt(x):
    if x != x:
        return "nan"
    if x == math.inf:
        return "inf"
    return "%.17g" % (x,)


def _emit(text, out_path):
    if out_path is None:
        _sys.stdout.write(text)
    else:
        with open(out_path, "w") as fh:
            fh.write(text)


def _build(args):
    grid = build_grid(args.dim, args.grid, args.period)
    return grid, build_dyadic_system(grid)


def _load_field(path, grid=None):
    field = fldio.read_field(path)
    if grid is not None and not field.grid.compatible(grid):
        raise ConfigError("field in %s lives on %r, expected %r"
                          % (path, field.grid, grid))
    return field


# ---------------------------------------------------------------------------


def cmd_norm(args):
    if args.s is None or args.p is None:
        raise ConfigError("norm needs at least one --s and --p")
    s_list = [float(v) for v in args.s]
    p_list = [_exponent(v) for v in args.p]
    q_list = [_exponent(v) for v in (args.q or [])]
    count = max(len(s_list), len(p_list), len(q_list) or 1)

    def widen(values, name, fallback=None):
        if not values and fallback is not None:
            return [fallback] * count
        if len(values) == 1:
            return values * count
        if len(values) != count:
            raise ConfigError("%s given %d times, expected 1 or %d"
                              % (name, len(values), count))
        return values

    s_list = widen(s_list, "--s")
    p_list = widen(p_list, "--p")
    q_list = widen(q_list, "--q", fallback=math.inf)

    grid, sys_ = _build(args)
    if args.infile is not None:
        field = _load_field(args.infile)
        grid = field.grid
        sys_ = build_dyadic_system(grid)
        source = args.infile
    elif args.wave is not None:
        field = pure_wave(grid, args.wave)
        source = "wave k=%d" % args.wave
    else:
        raise ConfigError("norm needs --in FILE or --wave K")

    families = ["B", "F"] if args.space is None else [args.space]
    rows = []
    for s, p, q in zip(s_list, p_list, q_list):
        for fam in families:
            if fam == "F" and p == math.inf:
                continue
            spec = SpaceSpec(fam, s, p, q)
            value = (besov_norm if fam == "B" else triebel_norm)(
                field, spec, sys_)
            rows.append((spec, value))

    if args.json:
        payload = {
            "field": source,
            "grid": {"n": grid.n, "sizes": list(grid.sizes),
                     "period": grid.period},
            "norms": [{"space": spec.label(), "family": spec.family,
                       "s": spec.s,
                       "p": "inf" if spec.p == math.inf else spec.p,
                       "q": "inf" if spec.q == math.inf else spec.q,
                       "value": value}
                      for spec, value in rows],
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n",
              args.out)
    else:
        lines = ["%s  %s" % (spec.label(), _fmt(value))
                 for spec, value in rows]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_decompose(args):
    grid, sys_ = _build(args)
    if args.infile:
        if len(args.infile) < 2:
            raise ConfigError("decompose needs at least two --in files")
        fields = [_load_field(path, grid) for path in args.infile]
    else:
        m = args.m
        if m < 2:
            raise ConfigError("--m must be at least 2")
        params = [(1.0, 2.0)] * m
        fields = list(tuple_bank(grid, sys_, params, args.seed, 1)[0])
    gap = args.gap if args.gap is not None else min_gap(len(fields))
    pd = decompose_product(fields, sys_, gap)
    report = dump_decomposition(pd, sys_, args.out, bands=args.dump_bands)

    recon = pd.pi1_total() + pd.pi2 - pd.product
    drift = recon.l2() / pd.product.l2() if pd.product.l2() > 0 else 0.0
    summary = {
        "m": pd.m, "gap": pd.gap,
        "reconstruction_rel_l2": drift,
        "hard_annulus_pass": report.hard_all_pass,
        "claimed_annulus_rate": report.claimed_pass_rate,
        "out": args.out,
    }
    if args.json:
        _emit(json.dumps(summary, sort_keys=True, indent=2,
                         default=str) + "\n", None)
    else:
        lines = [
            "m=%d gap=%d -> %s" % (pd.m, pd.gap, args.out),
            "reconstruction residual (rel l2): %s" % _fmt(drift),
            "hard annulus [2^(j-2), 2^(j+1)]: %s"
            % ("pass" if report.hard_all_pass else "FAIL"),
            "claimed annulus [2^(j-1), 2^(j+1)] rate: %s"
            % _fmt(report.claimed_pass_rate),
        ]
        _emit("\n".join(lines) + "\n", None)
    if not report.hard_all_pass or drift > 1e-10:
        return 1
    return 0


def _emit_sweep(sweep, args):
    text = sweep.to_json() if args.json else sweep.to_csv()
    _emit(text, args.out)
    failures = sweep.failures()
    for rec in failures:
        _sys.stderr.write("FAIL %s ratio=%s bound=%s\n"
                          % (rec.name, _fmt(rec.ratio),
                             _fmt(rec.reference_bound)))
    return 1 if failures else 0


def cmd_lemmas(args):
    grid, sys_ = _build(args)
    try:
        sweep = lemma_suite(grid, sys_, only=args.only, seed=args.seed)
    except ValueError as exc:
        raise ConfigError(str(exc))
    return _emit_sweep(sweep, args)


def cmd_audit(args):
    with open(args.manifest) as fh:
        try:
            manifest = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError("manifest %s: %s" % (args.manifest, exc))
    if args.resolutions is not None:
        try:
            manifest["resolutions"] = [
                int(r) for r in args.resolutions.split(",") if r]
        except ValueError:
            raise ConfigError("--resolutions wants a comma list of ints")
    if args.seed is not None:
        manifest["seed"] = args.seed
    try:
        sweep = run_audit_manifest(manifest)
    except ValueError as exc:
        raise ConfigError(str(exc))
    return _emit_sweep(sweep, args)


def cmd_gen(args):
    grid, sys_ = _build(args)
    os.makedirs(args.out, exist_ok=True)
    jobs = []
    if args.bank:
        for entry in standard_bank(grid, sys_, seed=args.seed):
            jobs.append((entry.name.replace("[", "_").replace("]", "")
                         .replace("=", "").replace(",", "_"),
                         entry.field, entry.spec))
    for path in args.spec or []:
        with open(path) as fh:
            text = fh.read()
        try:
            spec = GeneratorSpec.from_json(text)
        except (ValueError, KeyError, TypeError) as exc:
            raise ConfigError("bad generator spec %s: %s" % (path, exc))
        stem = os.path.splitext(os.path.basename(path))[0]
        jobs.append((stem, materialize(spec), spec))
    if args.wave is not None:
        spec = spec_for("pure-wave", grid, k=args.wave)
        jobs.append(("wave_k%d" % args.wave, materialize(spec), spec))
    if not jobs:
        raise ConfigError("gen needs --bank, --spec FILE, or --wave K")

    index = []
    for stem, field, spec in jobs:
        fname = stem + ".fld"
        # generators are defined by their coefficients; storing the
        # spectral side keeps the file exactly rematerializable
        fldio.write_field(os.path.join(args.out, fname), field,
                          domain="spectral")
        index.append({"file": fname, "spec": json.loads(spec.to_json())})
    with open(os.path.join(args.out, "index.json"), "w") as fh:
        json.dump(index, fh, sort_keys=True, indent=2)
        fh.write("\n")
    _emit("wrote %d fields to %s\n" % (len(index), args.out), None)
    return 0


# ---------------------------------------------------------------------------


def _parser():
    top = argparse.ArgumentParser(
        prog="paraflux",
        description="Dyadic frequency decompositions, Besov/Triebel-Lizorkin"
                    " norms, paraproducts, and inequality audits on the"
                    " discrete torus.",
        epilog="PARAFLUX_THREADS caps sweep workers (default 1); results"
               " never depend on it.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, grid_default=64):
        p.add_argument("--grid", type=int, default=grid_default,
                       help="points per axis (default %d)" % grid_default)
        p.add_argument("--dim", type=int, default=1,
                       help="dimension n (default 1)")
        p.add_argument("--period", type=float, default=TWO_PI,
                       help="torus period (default 2*pi)")

    p = sub.add_parser("norm", help="print Besov/Triebel-Lizorkin norms")
    common(p)
    p.add_argument("--space", choices=["B", "F"],
                   help="one family only (default: both)")
    p.add_argument("--s", action="append", help="smoothness (repeatable)")
    p.add_argument("--p", action="append",
                   help="integrability, 'inf' ok (repeatable)")
    p.add_argument("--q", action="append",
                   help="summability, 'inf' ok (repeatable, default inf)")
    p.add_argument("--in", dest="infile", metavar="FILE",
                   help="read the field from an FLD1 file")
    p.add_argument("--wave", type=int, metavar="K",
                   help="use the pure wave exp(i K x) instead of a file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", help="write output here instead of stdout")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("decompose",
                       help="paraproduct decomposition of a pointwise"
                            " product, with support verification")
    common(p, 128)
    p.add_argument("--m", type=int, default=2,
                   help="number of factors to generate (default 2)")
    p.add_argument("--gap", type=int,
                   help="band gap N (default: smallest safe value)")
    p.add_argument("--in", dest="infile", action="append", metavar="FILE",
                   help="factor field file (repeat m times)")
    p.add_argument("--seed", type=int, default=811)
    p.add_argument("--dump-bands", action="store_true",
                   help="also write every per-band term")
    p.add_argument("--out", default="paraflux-decomp",
                   help="artifact directory (default paraflux-decomp)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("lemmas",
                       help="run the inequality lemma suite on the frozen"
                            " field bank")
    common(p, 128)
    p.add_argument("--only", metavar="SECTION",
                   help="one section: hardy, nikolskii, maximal, qj_lp,"
                        " delta_lt, qj_lt")
    p.add_argument("--seed", type=int, default=811)
    p.add_argument("--json", action="store_true",
                   help="JSON instead of CSV")
    p.add_argument("--out", help="write the table here instead of stdout")
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("audit",
                       help="embedding/multiplication audits from a JSON"
                            " manifest")
    p.add_argument("--manifest", required=True, metavar="FILE")
    p.add_argument("--resolutions", metavar="N,N",
                   help="override the manifest resolutions, e.g. 128,256")
    p.add_argument("--seed", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("gen", help="materialize field generators to FLD1")
    common(p)
    p.add_argument("--bank", action="store_true",
                   help="write the whole standard bank")
    p.add_argument("--spec", action="append", metavar="FILE",
                   help="generator spec JSON (repeatable)")
    p.add_argument("--wave", type=int, metavar="K")
    p.add_argument("--seed", type=int, default=811)
    p.add_argument("--out", default="paraflux-fields",
                   help="output directory (default paraflux-fields)")
    p.set_defaults(func=cmd_gen)

    return top


def main(argv=None):
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.func(args)
    except ConfigError as exc:
        _sys.stderr.write("error: %s\n" % exc)
        return 2
    except ValueError as exc:
        _sys.stderr.write("error: %s\n" % exc)
        return 2
    except OSError as exc:
        _sys.stderr.write("i/o error: %s\n" % exc)
        return 3


if __name__ == "__main__":
    _sys.exit(main())
