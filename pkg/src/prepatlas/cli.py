"""prep-atlas: command-line front end.

Exit codes: 0 success, 1 computational failure (message on stderr as JSON),
2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .arith import (ParseError, RealAlgebraic, alg_compare, endpoint_json, parse_interval, parse_number,
                    parse_rational)

FORMATS = ("csv", "json", "pgm", "table")


class UsageError(Exception):
    pass


# argument types ---------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _number(text: str):
    try:
        return parse_number(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _interval(text: str):
    try:
        a, b = parse_interval(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if alg_compare(a, b) > 0:
        raise argparse.ArgumentTypeError(f"empty interval {text!r}")
    return a, b


def _window(text: str) -> tuple[Fraction, ...]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("window is re_min,re_max,im_min,im_max")
    vals = tuple(_rational(p) for p in parts)
    if not (vals[0] < vals[1] and vals[2] < vals[3]):
        raise argparse.ArgumentTypeError("window must satisfy re_min < re_max and im_min < im_max")
    return vals


def _resolution(text: str) -> tuple[int, int]:
    try:
        w, h = (int(p) for p in text.lower().split("x"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("resolution is WIDTHxHEIGHT") from exc
    if w < 1 or h < 1:
        raise argparse.ArgumentTypeError("resolution must be at least 1x1")
    return w, h


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _ptol(text: str) -> float:
    try:
        v = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


# parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="prep-atlas",
                                 description="Preperiodic parameters of x^2 + c for a fixed starting point alpha.")
    ap.add_argument("--precision", type=_positive, help="default working precision in bits "
                    "(same as PREP_ATLAS_PRECISION)")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(p, formats, default, alpha=True, alpha_default=None):
        if alpha:
            p.add_argument("--alpha", type=_rational, required=alpha_default is None,
                           default=alpha_default, help="starting point, an exact rational such as 3/2")
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("-o", "--output", help="output file (default: stdout)")
        p.add_argument("--threads", type=_positive, default=1, help="worker cap")

    p = sub.add_parser("render", help="escape-time raster of M(alpha)")
    common(p, ("pgm", "csv"), "pgm")
    p.add_argument("--window", type=_window, default=_window("-2.5,1.5,-1.5,1.5"),
                   help="re_min,re_max,im_min,im_max")
    p.add_argument("--res", type=_resolution, default=(512, 512), help="WIDTHxHEIGHT")
    p.add_argument("--max-iter", type=_positive, default=200)
    p.add_argument("--backend", choices=("cython", "python"))

    p = sub.add_parser("prep-roots", help="complex roots of F_{m,n}")
    common(p, ("csv", "json", "table"), "table")
    p.add_argument("--m", type=_nonneg, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--tol", type=_ptol, default=1e-9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iter", type=_positive, default=2000)
    p.add_argument("--degree-cap", type=_positive, default=None, help="largest n accepted")
    p.add_argument("--backend", choices=("cython", "python"))

    p = sub.add_parser("decide", help="is alpha preperiodic for f_c?")
    common(p, ("json", "table"), "table")
    p.add_argument("--c", type=_number, required=True, help="rational or a+b*sqrtN parameter")
    p.add_argument("--budget", type=_positive, help="step cap for rational parameters")

    p = sub.add_parser("cantor", help="certified levels C_n for |alpha| >= 2")
    common(p, ("csv", "json", "table"), "table")
    p.add_argument("--depth", type=_positive, default=4)
    p.add_argument("--eps", type=_rational, default=Fraction(1, 10 ** 12))
    p.add_argument("--depth-cap", type=_positive, default=12)
    p.add_argument("--localize", action="store_true",
                   help="also localise the roots of F_{m,depth} for every m < depth")

    p = sub.add_parser("capacity", help="capacities and Fekete points")
    common(p, ("json", "table"), "table", alpha_default=Fraction(1))
    p.add_argument("--interval", type=_interval, help='real interval "l,r", e.g. "-2-sqrt2,0"')
    p.add_argument("--lemniscate", type=_positive, metavar="N",
                   help="capacities of the first N lemniscates {|psi_n| <= R} for --alpha")
    p.add_argument("--fekete", type=_positive, metavar="N", help="Fekete points of size N on --interval")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=_positive, default=8)

    p = sub.add_parser("degree-bound", help="smallest n0 of the capacity criterion")
    common(p, ("json", "table"), "table", alpha=False)
    p.add_argument("--interval", type=_interval, required=True)
    p.add_argument("--cap", type=_positive, default=64)

    p = sub.add_parser("classify", help="totally real preperiodic parameters for alpha in {-1, 0, 1}")
    common(p, ("json", "table"), "table")
    p.add_argument("--cap", type=_positive, default=None, help="largest n0 searched")

    p = sub.add_parser("verify-paper", help="run the acceptance checks")
    common(p, ("json", "table"), "table", alpha=False)
    p.add_argument("--only", type=_positive, action="append", help="run only this criterion (repeatable)")
    return ap


# commands ----------------------------------------------------------------------

def _emit(args, text: str | bytes) -> None:
    if args.output:
        mode = "wb" if isinstance(text, bytes) else "w"
        with open(args.output, mode, **({} if mode == "wb" else {"encoding": "utf-8", "newline": ""})) as fh:
            fh.write(text)
    elif isinstance(text, bytes):
        sys.stdout.buffer.write(text)
        sys.stdout.buffer.flush()
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def cmd_render(args) -> int:
    from .mandelset import escape_grid

    if args.format == "pgm" and not args.output and sys.stdout.isatty():
        raise UsageError("refusing to write binary PGM to a terminal; use -o FILE or --format csv")
    grid = escape_grid(args.alpha, args.window, args.res, args.max_iter, threads=args.threads,
                       backend=args.backend)
    _emit(args, grid.to_pgm() if args.format == "pgm" else grid.to_csv())
    return 0


def cmd_prep_roots(args) -> int:
    from .mandelset import RootFindingError, prep_roots, verify_in_disc
    from .orbit import DEFAULT_PSI_CAP

    if args.m >= args.n:
        raise UsageError("need m < n")
    cap = args.degree_cap or DEFAULT_PSI_CAP
    if args.n > cap:
        raise UsageError(f"n = {args.n} exceeds the degree cap {cap} (raise it with --degree-cap)")
    try:
        rs = prep_roots(args.alpha, args.m, args.n, tol=args.tol, cap=cap, seed=args.seed,
                        max_iter=args.max_iter, backend=args.backend, threads=args.threads)
    except RootFindingError as exc:
        _emit(args, exc.partial.to_json() if args.format == "json" else exc.partial.to_csv())
        raise
    disc = verify_in_disc(rs, strict=False)
    if args.format == "csv":
        _emit(args, rs.to_csv())
    elif args.format == "json":
        d = rs.as_dict()
        d["disc"] = disc.as_dict()
        _emit(args, _json(d))
    else:
        lines = [f"F_({rs.m},{rs.n}) at alpha = {rs.alpha}: degree {rs.degree}, "
                 f"square-free degree {rs.squarefree_degree}, {rs.real_roots} real",
                 f"{'re':>22} {'im':>22} {'|F| bound':>12} {'radius':>12}"]
        for r in rs.roots:
            lines.append(f"{r.re:>22.15g} {r.im:>22.15g} {r.residual:>12.3e} {r.radius:>12.3e}")
        lines.append(f"max modulus {disc.max_modulus:.12g} <= R = {disc.radius:.12g}: "
                     f"{'yes' if disc.ok else 'NO'}")
        _emit(args, "\n".join(lines))
    return 0 if disc.ok else 1


def _verdict_text(v) -> str:
    d = v.as_dict()
    return ", ".join(f"{k}={val}" for k, val in d.items())


def cmd_decide(args) -> int:
    from .orbit import decide_algebraic, decide_rational

    c = args.c
    if isinstance(c, RealAlgebraic):
        if args.budget is not None:
            raise UsageError("--budget applies to rational parameters only")
        verdicts = decide_algebraic(args.alpha, c.minpoly)
        rows = [(r, v) for r, v in verdicts]
        target = next(v for r, v in rows if alg_compare(r, c) == 0)
        out = {"alpha": str(args.alpha), "c": endpoint_json(c), "minpoly": str(c.minpoly),
               "result": target.as_dict(),
               "conjugates": [{"c": endpoint_json(r), "result": v.as_dict()} for r, v in rows]}
        text = f"alpha = {args.alpha}, c = {float(c):.15g} (root of {c.minpoly}): {_verdict_text(target)}"
    else:
        rec = decide_rational(args.alpha, c, budget=args.budget)
        out = {"alpha": str(args.alpha), "c": str(c), "result": rec.verdict.as_dict(),
               "orbit": [str(x) for x in rec.values]}
        orbit = " -> ".join(str(x) for x in rec.values[:12]) + (" -> ..." if len(rec.values) > 12 else "")
        text = f"alpha = {args.alpha}, c = {c}: {_verdict_text(rec.verdict)}\norbit: {orbit}"
    _emit(args, _json(out) if args.format == "json" else text)
    return 0


def cmd_cantor(args) -> int:
    from .cantor import cantor_level, localize_roots

    level = cantor_level(args.alpha, args.depth, eps=args.eps, cap=args.depth_cap, threads=args.threads)
    reports = [localize_roots(args.alpha, m, args.depth, level=level, eps=args.eps)
               for m in range(args.depth)] if args.localize else []
    if args.format == "json":
        d = level.to_json()
        if reports:
            d["localization"] = [r.as_dict() for r in reports]
        _emit(args, _json(d))
    elif args.format == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["index", "left", "right", "left_width", "right_width", "left_tag", "right_tag"])
        wr.writerows(level.to_csv_rows())
        _emit(args, buf.getvalue())
    else:
        lines = [f"C_{level.depth} for alpha = {level.alpha}: {len(level)} intervals"]
        for i, row in enumerate(level.to_csv_rows()):
            lines.append(f"{i:>4}  [{row[1]}, {row[2]}]  {row[5]} | {row[6]}")
        for r in reports:
            lines.append(f"F_({r.m},{r.n}): {r.real_roots}/{r.squarefree_degree} real, "
                         f"outside {r.outside}, one per interval: {'yes' if r.ok else 'NO'}")
        _emit(args, "\n".join(lines))
    return 0 if all(r.ok for r in reports) else 1


def cmd_capacity(args) -> int:
    from .capacity import exact_n_diameter, fekete_optimize, interval_capacity, lemniscate_capacity

    if args.fekete and not args.interval:
        raise UsageError("--fekete needs --interval")
    if not (args.interval or args.lemniscate):
        raise UsageError("give --interval and/or --lemniscate N")
    out: dict = {}
    lines = []
    if args.interval:
        a, b = args.interval
        cap = interval_capacity(a, b)
        below = alg_compare(cap, 1) < 0
        out["interval"] = {"left": endpoint_json(a), "right": endpoint_json(b),
                           "capacity": endpoint_json(cap), "capacity_below_1": below}
        lines.append(f"capacity of [{float(a):.12g}, {float(b):.12g}] = {float(cap):.15g} "
                     f"({'< 1' if below else '>= 1'})")
        if args.fekete:
            conf = fekete_optimize([(a, b)], args.fekete, restarts=args.restarts, seed=args.seed,
                                   threads=args.threads)
            exact = exact_n_diameter(a, b, args.fekete)
            rel = abs(conf.diameter - float(exact.mid)) / float(exact.mid)
            fd = conf.as_dict()
            fd["exact_d_n"] = {"decimal": exact.decimal(18), "width": str(float(exact.width))}
            fd["relative_error"] = rel
            out["fekete"] = fd
            pts = ", ".join(f"{float(p):.12g}" for p in conf.points)
            lines.append(f"Fekete n = {args.fekete}: d_n = {conf.diameter:.15g} "
                         f"(exact {float(exact.mid):.15g}, rel. error {rel:.2e})")
            lines.append(f"points: {pts}")
    if args.lemniscate:
        rows = []
        for n in range(1, args.lemniscate + 1):
            enc = lemniscate_capacity(args.alpha, n)
            rows.append({"n": n, "decimal": enc.decimal(18), "width": str(float(enc.width))})
            lines.append(f"lemniscate n = {n:>3}: {enc.decimal(18)}")
        out["lemniscate"] = {"alpha": str(args.alpha), "capacities": rows}
    _emit(args, _json(out) if args.format == "json" else "\n".join(lines))
    return 0


def cmd_degree_bound(args) -> int:
    from .capacity import degree_bound

    rep = degree_bound(*args.interval, cap=args.cap)
    _emit(args, _json(rep.as_dict()) if args.format == "json" else rep.table_text())
    return 0 if rep.n0 is not None else 1


def cmd_classify(args) -> int:
    from .classify import classify_totally_real_prep

    res = classify_totally_real_prep(args.alpha, threads=args.threads, cap=args.cap)
    _emit(args, _json(res.as_dict()) if args.format == "json" else res.report())
    return 0


def cmd_verify_paper(args) -> int:
    from .verify import CHECKS, run_check

    numbers = args.only or [num for num, *_ in CHECKS]
    known = {num for num, *_ in CHECKS}
    bad = [n for n in numbers if n not in known]
    if bad:
        raise UsageError(f"unknown criterion {bad[0]}; choose from {sorted(known)}")
    results = []
    for n in numbers:
        r = run_check(n)
        results.append(r)
        if args.format == "table" and not args.output:
            print(r.line(), flush=True)
    passed = sum(r.passed for r in results)
    if args.format == "json":
        _emit(args, _json({"results": [r.as_dict() for r in results], "passed": passed,
                           "total": len(results)}))
    else:
        text = "\n".join(r.line() for r in results) + f"\n{passed}/{len(results)} criteria passed"
        if args.output:
            _emit(args, text)
        else:
            print(f"{passed}/{len(results)} criteria passed")
    return 0 if passed == len(results) else 1


COMMANDS = {
    "render": cmd_render,
    "prep-roots": cmd_prep_roots,
    "decide": cmd_decide,
    "cantor": cmd_cantor,
    "capacity": cmd_capacity,
    "degree-bound": cmd_degree_bound,
    "classify": cmd_classify,
    "verify-paper": cmd_verify_paper,
}


# options whose values may start with "-" (argparse would read "-2-sqrt2,0" as a flag)
_SIGNED_OPTS = {"--alpha", "--c", "--interval", "--window", "--eps"}


def _glue_signed(argv: Sequence[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _SIGNED_OPTS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and argv[i + 1] not in ("-h", "--help") and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = _glue_signed(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    if args.precision:
        os.environ["PREP_ATLAS_PRECISION"] = str(args.precision)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"prep-atlas {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, ValueError, RuntimeError, AssertionError) as exc:
        msg = {"error": type(exc).__name__, "command": args.command, "message": str(exc)}
        print(json.dumps(msg), file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
