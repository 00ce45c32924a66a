"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data error, 3 a guarantee was
violated (which indicates a bug, since the guarantees are theorems).
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from girthcs import binmat, bounds, certify, lpsolve, tanner
from girthcs.errors import GirthCSError
from girthcs.experiment import DEFAULT_TAIL_EPS, ExperimentConfig, run_experiment

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --------------------------------------------------------------------------- helpers

def _add_matrix_args(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", choices=binmat.BUILTIN_NAMES, metavar="NAME",
                     help="one of: " + ", ".join(binmat.BUILTIN_NAMES))
    src.add_argument("--file", metavar="PATH", help="matrix file (alist or dense)")
    p.add_argument("--format", choices=("alist", "dense"),
                   help="file format (default: alist for *.alist, else dense)")


def _read_text(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"file not found: {path}")
    return p.read_text()


def _load_matrix(args):
    if args.builtin:
        return args.builtin, binmat.builtin(args.builtin)
    text = _read_text(args.file)
    fmt = args.format or ("alist" if args.file.endswith(".alist") else "dense")
    H = binmat.load_alist(text) if fmt == "alist" else binmat.load_dense(text)
    return Path(args.file).stem, H


def _load_vector(path: str) -> list[Fraction]:
    return certify.load_certificate(_read_text(path))


def _emit(pairs):
    for key, val in pairs:
        print(f"{key}={'' if val is None else val}")


def _k_values(args, default):
    if args.k is not None:
        return [args.k]
    lo = args.k_min if args.k_min is not None else 1
    hi = args.k_max if args.k_max is not None else default
    if hi is None:
        raise UsageError("--k or --k-max required when the matrix has no guarantee")
    if lo > hi:
        raise UsageError("--k-min exceeds --k-max")
    return list(range(lo, hi + 1))


def _write(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------- commands

def cmd_analyze(args):
    name, H = _load_matrix(args)
    p = tanner.profile(H)
    _emit([("matrix", name), ("m", p.m), ("n", p.n), ("gamma", p.gamma),
           ("girth", p.girth), ("lambda", p.lam),
           ("col_weights", " ".join(map(str, p.col_weights))), ("zero_rows", p.zero_rows)])
    if args.out:
        gamma = "" if p.gamma is None else p.gamma
        Path(args.out).write_text("matrix_id,m,n,gamma,girth,lambda\n"
                                  f"{name},{p.m},{p.n},{gamma},{p.girth},{p.lam}\n")
    return EXIT_OK


def cmd_bounds(args):
    name, H = _load_matrix(args)
    b = bounds.guarantee(tanner.profile(H))
    consts = None if args.k is None else bounds.approximation_constants(b.c0, args.k)
    _emit([("matrix", name), ("gamma", b.gamma), ("girth", b.girth), ("lambda", b.lam),
           ("c0", b.c0), ("source", b.source), ("t", b.t), ("k_max", b.k_max),
           ("rip_k_sup", b.rip_k_sup), ("rip_k_max", b.rip_k_max),
           ("nsp_k_sup", b.nsp_k_sup), ("nsp_k_max", b.nsp_k_max)])
    if consts is not None:
        c = consts
        _emit([("k", c.k), ("C1", c.exact_c1), ("C2", repr(c.c2)), ("C3", c.exact_c3)])
    return EXIT_OK


def cmd_certify(args):
    name, H = _load_matrix(args)
    if args.cert:
        w = _load_vector(args.cert)
    elif args.builtin:
        w = binmat.BUILTIN_CERTIFICATES[args.builtin]
    else:
        raise UsageError("--cert is required with --file")
    r = certify.verify_certificate(H, w, c0=args.c0)
    _emit([("matrix", name), ("in_nullspace", r.in_nullspace), ("balance_ok", r.balance_ok),
           ("l1", r.l1), ("l2", repr(r.l2)), ("linf", r.linf),
           ("awgn_pseudoweight", r.awgn_pseudoweight),
           ("maxfrac_pseudoweight", r.maxfrac_pseudoweight),
           ("c0", r.c0_used), ("tightness", r.tightness),
           ("rounding_distance", r.rounding_distance), ("note", r.note)])
    if r.in_nullspace and r.tightness is not None and r.tightness > 1:
        print("theorem violation: nullspace vector breaks the coordinate bound",
              file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_recover(args):
    name, H = _load_matrix(args)
    D = H.to_dense(np.float64)
    if args.x:
        x = np.array([float(v) for v in _load_vector(args.x)])
        if x.size != H.n:
            raise ValueError(f"signal length {x.size} != n = {H.n}")
        res = lpsolve.basis_pursuit(H, D @ x, x)
    elif args.y:
        res = lpsolve.basis_pursuit(H, [float(v) for v in _load_vector(args.y)])
    else:
        raise UsageError("one of --x or --y is required")
    _emit([("matrix", name), ("estimate", " ".join(repr(float(v)) for v in res.estimate)),
           ("l1_value", repr(res.l1_value)), ("alt_opt", res.alternate_optimum),
           ("residual", repr(res.residual)), ("success", res.success),
           ("linf_err", None if res.err_linf is None else repr(res.err_linf))])
    return EXIT_OK


def cmd_empirical_c0(args):
    name, H = _load_matrix(args)
    value = lpsolve.empirical_c0(H)
    try:
        theory = bounds.guarantee(tanner.profile(H)).c0
    except GirthCSError:
        theory = None
    _emit([("matrix", name), ("empirical_c0", repr(value)), ("theoretical_c0", theory)])
    if theory is not None and value < float(theory) - 1e-7:
        print("theorem violation: empirical C0 below theoretical bound", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_nsp(args):
    name, H = _load_matrix(args)
    _emit([("matrix", name), ("k", args.k), ("nsp_constant", repr(lpsolve.nsp_constant(H, args.k)))])
    return EXIT_OK


def _run(args, approx: bool):
    name, H = _load_matrix(args)
    prof = tanner.profile(H)
    try:
        bundle = bounds.guarantee(prof)
    except GirthCSError:
        bundle = None
    ks = _k_values(args, None if bundle is None else bundle.k_max)
    if approx:
        if bundle is None:
            raise bounds.BoundsNotApplicable("approximation guarantees need a theoretical C0")
        for k in ks:
            bounds.approximation_constants(bundle.c0, k)
    trials = args.trials if args.trials is not None else (1 if args.exhaustive else 100)
    cfg = ExperimentConfig(name, H, ks, trials=trials, seed=args.seed,
                           exhaustive=args.exhaustive,
                           tail_eps=args.tail_eps if approx else 0.0)
    result = run_experiment(cfg)
    _write(result.to_csv(), args.out)
    log = sys.stdout if args.out else sys.stderr
    for row in result.summary():
        print(" ".join(f"{k}={v}" for k, v in row.items()), file=log)
    if result.violations:
        first = result.violations[0]
        print(f"theorem violation: k={first.k} trial={first.trial}: {first.violation}",
              file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_experiment(args):
    return _run(args, approx=False)


def cmd_approx(args):
    return _run(args, approx=True)


def cmd_generate(args):
    H, g = binmat.generate_regular(args.m, args.n, args.gamma, args.girth, args.seed)
    text = binmat.save_alist(H) if args.format == "alist" else binmat.save_dense(H)
    _write(text, args.out)
    print(f"girth={g}", file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


# --------------------------------------------------------------------------- parser

def build_parser():
    p = _Parser(prog="girthcs", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="girth, column weights and lambda")
    _add_matrix_args(a)
    a.add_argument("--out", metavar="PATH", help="also write the profile as CSV")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bounds", help="guarantee constants")
    _add_matrix_args(b)
    b.add_argument("--k", type=int, help="also print the approximation constants at k")
    b.set_defaults(func=cmd_bounds)

    c = sub.add_parser("certify", help="verify a nullspace certificate exactly")
    _add_matrix_args(c)
    c.add_argument("--cert", metavar="PATH",
                   help="certificate file (default for builtins: the printed example)")
    c.add_argument("--c0", type=Fraction, help="override the theoretical C0")
    c.set_defaults(func=cmd_certify)

    r = sub.add_parser("recover", help="basis pursuit on one signal")
    _add_matrix_args(r)
    g = r.add_mutually_exclusive_group()
    g.add_argument("--x", metavar="PATH", help="true signal file; y = Hx")
    g.add_argument("--y", metavar="PATH", help="measurement file")
    r.set_defaults(func=cmd_recover)

    e = sub.add_parser("empirical-c0", help="LP-computed best coordinate bound")
    _add_matrix_args(e)
    e.set_defaults(func=cmd_empirical_c0)

    n = sub.add_parser("nsp", help="brute-force nullspace-property constant")
    _add_matrix_args(n)
    n.add_argument("--k", type=int, required=True)
    n.set_defaults(func=cmd_nsp)

    for name, func, helptext in (("experiment", cmd_experiment, "exact-recovery sweep"),
                                 ("approx", cmd_approx, "sparse-approximation check")):
        x = sub.add_parser(name, help=helptext)
        _add_matrix_args(x)
        x.add_argument("--k", type=int)
        x.add_argument("--k-min", type=int)
        x.add_argument("--k-max", type=int)
        x.add_argument("--trials", type=int,
                       help="trials per k (exhaustive: draws per pattern; default 100 / 1)")
        x.add_argument("--seed", type=int, default=0)
        x.add_argument("--exhaustive", action="store_true",
                       help="enumerate all supports and sign patterns")
        x.add_argument("--out", metavar="PATH", help="CSV destination (default stdout)")
        if name == "approx":
            x.add_argument("--tail-eps", type=float, default=DEFAULT_TAIL_EPS)
        x.set_defaults(func=func)

    gen = sub.add_parser("generate", help="column-regular matrix by edge growth")
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--gamma", type=int, required=True)
    gen.add_argument("--girth", type=int, help="required minimum girth")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--format", choices=("alist", "dense"), default="alist")
    gen.add_argument("--out", metavar="PATH")
    gen.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"girthcs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GirthCSError, OSError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"girthcs: {msg}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
