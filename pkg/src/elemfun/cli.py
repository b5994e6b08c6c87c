"""
Command-line front end.

Subcommands: eval, gen-tables, verify-machin, find-machin, bench.
Exit codes: 0 success, 1 usage error, 2 numeric/domain error.
"""

import argparse
import csv
import math
import random
import sys
import time

from .fixedpoint import FixedPoint, isqrt_newton
from .relations import Basis, generate_table, reduce_argument, save_table
from . import machin
from . import series
from . import elementary as el

from gmpy2 import mpz

_BITS_PER_DIGIT = math.log2(10)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print("%s: error: %s" % (self.prog, message), file=sys.stderr)
        sys.exit(1)


def _digits_to_bits(digits):
    return int(math.ceil(digits * _BITS_PER_DIGIT)) + 32


def _parse_x(text, B):
    if text == "sqrt2-1":
        return FixedPoint(isqrt_newton(mpz(2) << (2 * B)) - (mpz(1) << B), B)
    return FixedPoint.from_decimal(text, B)


_FUNC_KIND = {"exp": "log", "log": "log",
              "sin": "atan", "cos": "atan", "tan": "atan", "atan": "atan"}


def _evaluate(func, x, B, ctx):
    if func == "exp":
        return el.exp_full(x, B, ctx)
    if func == "log":
        return el.log_full(x, B, ctx)
    if func == "atan":
        return el.atan_full(x, B, ctx)
    if func == "tan":
        return el.tan_full(x, B, ctx)
    c, s = el.cos_sin_full(x, B, ctx)
    return c if func == "cos" else s


def cmd_eval(args):
    B = _digits_to_bits(args.digits)
    x = _parse_x(args.x, B)
    kind = _FUNC_KIND[args.func]
    threshold = el.EXP_CROSSOVER_BITS if kind == "log" \
        else el.ATAN_CROSSOVER_BITS
    ctx = None
    if B >= threshold:
        ctx = el.context_create(kind, args.n, B + 256)
    print(_evaluate(args.func, x, B, ctx).to_decimal(args.digits))
    return 0


def cmd_gen_tables(args):
    basis = Basis.log_primes(args.n) if args.kind == "log" \
        else Basis.gaussian_atan(args.n)
    table = generate_table(basis, args.C, args.r)
    save_table(table, args.out)
    smallest = table.relations[-1].eps_exact if table.relations else None
    print("relations: %d  complete: %s" % (len(table.relations),
                                           table.complete))
    if smallest is not None:
        print("smallest eps: %s  max r: %d"
              % (smallest.to_scientific(6), table.max_r()))
    print("wrote %s" % args.out)
    return 0


def cmd_verify_machin(args):
    wp = args.bits
    failures = 0
    for n in range(1, args.n + 1):
        formula = machin.builtin_formula(args.kind, n)
        vals = machin.eval_basis(formula, wp)
        if args.kind == "log":
            ref = [series.log_int(p, wp) for p in formula.basis.primes]
        else:
            ref = [series.atan_frac(b, a, wp)
                   for a, b in formula.basis.gprimes]
        err = max(abs(v.man - r.man) for v, r in zip(vals, ref))
        ok = err <= (mpz(1) << max(wp - args.bits + 10, 10))
        mu = machin.lehmer_measure(formula.X)
        print("%s n=%-2d  %s  mu=%s" % (args.kind, n,
                                        "PASS" if ok else "FAIL",
                                        "inf" if math.isinf(mu)
                                        else "%.5f" % mu))
        failures += not ok
    return 2 if failures else 0


def cmd_find_machin(args):
    if args.kind == "log":
        primes = [int(p) for p in args.primes.split(",")]
        basis = Basis("log", primes=primes)
    else:
        norms = [int(q) for q in args.norms.split(",")]
        basis = Basis("atan", gprimes=[_gaussian_from_norm(q) for q in norms])
    candidates = machin.find_candidates(basis, args.x_max)
    formula = machin.find_formula(basis, candidates)
    mu = machin.lehmer_measure(formula.X)
    print("X = {%s}" % ", ".join(str(x) for x in formula.X))
    print("mu = %s" % ("inf" if math.isinf(mu) else "%.5f" % mu))
    if args.out:
        machin.save_formula(formula, args.out)
        print("wrote %s" % args.out)
    return 0


def _gaussian_from_norm(q):
    for a in range(1, int(math.isqrt(q)) + 1):
        b2 = q - a * a
        b = int(math.isqrt(b2))
        if b * b == b2 and a >= b >= 1:
            return (a, b)
    raise ValueError("%d is not a sum of two positive squares" % q)


def cmd_bench(args):
    digits_list = [int(d) for d in args.digits.split(",")]
    n_list = [int(n) for n in args.n.split(",")]
    rng = random.Random(args.seed)
    rows = []
    for digits in digits_list:
        B = _digits_to_bits(digits)
        xs = [FixedPoint.from_float(rng.uniform(0.0, 2.0), B)
              for _ in range(args.repeats)]
        ref_time = None
        for n in n_list:
            t0 = time.time()
            ctx = None
            achieved_r = ""
            if n > 0:
                kind = _FUNC_KIND[args.func]
                ctx = el.context_create(kind, n, B + 256)
                part = ctx.part(kind)
                probe = reduce_argument(
                    FixedPoint.from_float(0.5, B), part.table,
                    min(part.table.max_r(), B // 40 + 64), norm_limit=B)
                achieved_r = "%d" % min(probe.achieved_r, part.table.max_r())
            pre = time.time() - t0
            t0 = time.time()
            first = _bench_once(args.func, xs[0], B, ctx)
            first = time.time() - t0
            t0 = time.time()
            for x in xs:
                _bench_once(args.func, x, B, ctx)
            per = (time.time() - t0) / len(xs)
            if n == 0:
                ref_time = per
            speedup = "%.2f" % (ref_time / per) \
                if (ref_time and n > 0) else ""
            rows.append({"func": args.func, "digits": digits, "n": n,
                         "precomp_s": "%.4f" % pre,
                         "first_s": "%.5f" % first,
                         "repeat_s": "%.5f" % per,
                         "achieved_r": achieved_r, "speedup": speedup})
    cols = ["func", "digits", "n", "precomp_s", "first_s", "repeat_s",
            "achieved_r", "speedup"]
    widths = [max(len(c), max(len(str(r[c])) for r in rows)) for c in cols]
    print("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
    for r in rows:
        print("  ".join(str(r[c]).ljust(w) for c, w in zip(cols, widths)))
    print("(timings are hardware-dependent)")
    if args.csv:
        with open(args.csv, "w", newline="") as f:
            w = csv.DictWriter(f, fieldnames=cols)
            w.writeheader()
            w.writerows(rows)
        print("wrote %s" % args.csv)
    return 0


def _bench_once(func, x, B, ctx):
    if func == "exp":
        return el.exp_full(x, B, ctx) if ctx else el.reference_exp(x, B)
    if func in ("sin", "cos"):
        return (el.cos_sin_full(x, B, ctx) if ctx
                else el.reference_cos_sin(x, B))
    if func == "log":
        return el.log_full(x.add(FixedPoint.from_int(1, B)), B, ctx)
    if func == "atan":
        return el.atan_full(x, B, ctx)
    return el.tan_full(x, B, ctx)


def build_parser():
    p = _Parser(prog="elemfun",
                description="arbitrary-precision elementary functions "
                            "via multi-prime argument reduction")
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate a function")
    pe.add_argument("--func", required=True, choices=sorted(_FUNC_KIND))
    pe.add_argument("--x", required=True,
                    help="decimal literal or the token sqrt2-1")
    pe.add_argument("--digits", type=int, required=True)
    pe.add_argument("--n", type=int, default=el.DEFAULT_N)
    pe.set_defaults(run=cmd_eval)

    pg = sub.add_parser("gen-tables", help="generate a relation table")
    pg.add_argument("--kind", required=True, choices=["log", "atan"])
    pg.add_argument("--n", type=int, required=True)
    pg.add_argument("--C", type=float, default=10)
    pg.add_argument("--r", type=int, required=True)
    pg.add_argument("--out", required=True)
    pg.set_defaults(run=cmd_gen_tables)

    pv = sub.add_parser("verify-machin", help="verify built-in formulas")
    pv.add_argument("--kind", required=True, choices=["log", "atan"])
    pv.add_argument("--n", type=int, required=True)
    pv.add_argument("--bits", type=int, default=1000)
    pv.set_defaults(run=cmd_verify_machin)

    pf = sub.add_parser("find-machin", help="search for a formula")
    pf.add_argument("--kind", required=True, choices=["log", "atan"])
    pf.add_argument("--primes", help="comma list (log kind)")
    pf.add_argument("--norms", help="comma list of norms (atan kind)")
    pf.add_argument("--x-max", type=int, default=10 ** 6)
    pf.add_argument("--out")
    pf.set_defaults(run=cmd_find_machin)

    pb = sub.add_parser("bench", help="benchmark against the reference path")
    pb.add_argument("--func", default="exp", choices=sorted(_FUNC_KIND))
    pb.add_argument("--digits", required=True, help="comma list")
    pb.add_argument("--n", default="0,13",
                    help="comma list; 0 means reference path")
    pb.add_argument("--repeats", type=int, default=10)
    pb.add_argument("--seed", type=int, default=0)
    pb.add_argument("--csv")
    pb.set_defaults(run=cmd_bench)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "find-machin":
        if args.kind == "log" and not args.primes:
            build_parser().error("--primes is required for --kind log")
        if args.kind == "atan" and not args.norms:
            build_parser().error("--norms is required for --kind atan")
    try:
        return args.run(args)
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
