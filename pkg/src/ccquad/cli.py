"""Command line front end: moments, integrate, weights, convergence, bench.

All tables go to stdout as CSV; warnings and errors go to stderr.
Exit codes: 0 success, 2 usage error, 3 numerical failure.
"""

import argparse
import contextlib
import statistics
import sys
import time
import warnings

from .errors import DomainError, NumericalFailure, UsageError
from .integrands import get_integrand
from .moments import moments
from .oracle import MAX_ORACLE_INDEX, oracle_integral, oracle_moment
from .quadrature import (
    NodeFamily,
    coefficients,
    integrate,
    integrate_with_rule,
    nodes,
    rule_weights,
)

EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def fmt(x):
    return format(float(x), ".17g")


def _write_rows(out, header, rows):
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(fmt(v) if isinstance(v, float) else str(v) for v in row) + "\n")


def _positive_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _int_list(text):
    try:
        return [int(float(t)) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of sizes, got {text}")


def _rule_list(text):
    rules = [t.strip() for t in text.split(",") if t.strip()]
    for r in rules:
        if r not in ("cc", "f1", "f2"):
            raise argparse.ArgumentTypeError(f"unknown rule {r!r}")
    return rules


def _add_weight_args(p):
    p.add_argument("--weight", choices=["jacobi", "logjacobi"], default="jacobi")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ccquad",
        description="Clenshaw-Curtis and Fejer quadrature for Jacobi-type weights",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="modified moments k = 0..n as CSV")
    _add_weight_args(p)
    p.add_argument("--basis", choices=["T", "U"], default="T")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--method", choices=["auto", "forward", "oliver"], default="auto")
    p.add_argument("--terms", type=int, choices=[1, 2, 3, 4], default=4)
    p.add_argument("--reference", choices=["oracle"])

    p = sub.add_parser("integrate", help="one weighted integral")
    _add_weight_args(p)
    p.add_argument("--rule", choices=["cc", "f1", "f2"], required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--f", required=True, help="integrand name")
    p.add_argument("--route", choices=["coeff", "weights"], default="coeff")

    p = sub.add_parser("weights", help="nodes and weights as CSV")
    _add_weight_args(p)
    p.add_argument("--rule", choices=["cc", "f1", "f2"], required=True)
    p.add_argument("--n", type=_positive_int, required=True)

    p = sub.add_parser("convergence", help="absolute error against the oracle, n = number of nodes")
    _add_weight_args(p)
    p.add_argument("--f", required=True)
    p.add_argument("--rules", type=_rule_list, default=["cc", "f1", "f2"])
    p.add_argument("--n-min", type=_positive_int, default=32)
    p.add_argument("--n-max", type=_positive_int, default=1024)
    p.add_argument("--n-step-factor", type=float, default=2.0)

    p = sub.add_parser("bench", help="median wall time per size")
    _add_weight_args(p)
    p.add_argument("--task", choices=["moments", "coeffs", "weights"], required=True)
    p.add_argument("--sizes", type=_int_list, required=True)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--rule", choices=["cc", "f1", "f2"], default="cc")
    p.set_defaults(alpha=-0.5, beta=100.0)
    return parser


def cmd_moments(args, out):
    mv = moments(args.n, (args.alpha, args.beta), args.weight, args.basis, args.method, args.terms)
    if args.reference != "oracle":
        _write_rows(out, ["k", "value"], ((k, float(v)) for k, v in enumerate(mv.values)))
        return
    rows = []
    for k, v in enumerate(mv.values):
        if k > MAX_ORACLE_INDEX:
            rows.append((k, float(v), "", ""))
            continue
        ref = oracle_moment(k, (args.alpha, args.beta), args.weight, args.basis)
        relerr = abs(v - ref) / abs(ref) if ref != 0.0 else abs(v - ref)
        rows.append((k, float(v), ref, relerr))
    _write_rows(out, ["k", "value", "reference", "relerr"], rows)


def cmd_integrate(args, out):
    f = get_integrand(args.f)
    params = (args.alpha, args.beta)
    if args.route == "coeff":
        value = integrate(f, args.n, args.rule, args.weight, params)
    else:
        value = integrate_with_rule(rule_weights(args.rule, args.n, args.weight, params), f)
    out.write(fmt(value) + "\n")


def cmd_weights(args, out):
    rule = rule_weights(args.rule, args.n, args.weight, (args.alpha, args.beta))
    rows = ((j, float(x), float(w)) for j, (x, w) in enumerate(zip(rule.nodes, rule.weights)))
    _write_rows(out, ["j", "node", "weight"], rows)


def sweep_sizes(n_min, n_max, factor):
    if factor <= 1.0:
        raise UsageError("--n-step-factor must exceed 1")
    sizes = []
    n = float(max(n_min, 1))
    while n <= n_max * (1 + 1e-12):
        size = int(round(n))
        if not sizes or size != sizes[-1]:
            sizes.append(size)
        n *= factor
    return sizes


def cmd_convergence(args, out):
    f = get_integrand(args.f)
    params = (args.alpha, args.beta)
    reference = oracle_integral(f, params, args.weight)
    rows = []
    for n in sweep_sizes(args.n_min, args.n_max, args.n_step_factor):
        if n < 2:
            raise UsageError("convergence sweeps need at least 2 nodes")
        for rule in args.rules:
            # n counts nodes, so the rule has degree N = n - 1
            value = integrate(f, n - 1, rule, args.weight, params)
            rows.append((n, rule, abs(value - reference)))
    _write_rows(out, ["n", "rule", "abs_error"], rows)


def _bench_task(args, N):
    params = (args.alpha, args.beta)
    if args.task == "moments":
        return lambda: moments(N, params, args.weight)
    if args.task == "coeffs":
        fvals = get_integrand("exp")(nodes(args.rule, N))
        return lambda: coefficients(args.rule, fvals)
    mv = moments(N, params, args.weight, NodeFamily(args.rule).basis)
    return lambda: rule_weights(args.rule, N, args.weight, params, mv=mv)


def median_time(func, repeat):
    times = []
    for _ in range(max(1, repeat)):
        t0 = time.perf_counter()
        func()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def cmd_bench(args, out):
    rows = []
    for N in args.sizes:
        rows.append((args.task, N, median_time(_bench_task(args, N), args.repeat)))
    _write_rows(out, ["task", "N", "median_seconds"], rows)


COMMANDS = {
    "moments": cmd_moments,
    "integrate": cmd_integrate,
    "weights": cmd_weights,
    "convergence": cmd_convergence,
    "bench": cmd_bench,
}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            COMMANDS[args.command](args, out)
            status = 0
        except (UsageError, DomainError) as exc:
            parser.print_usage(err)
            err.write(f"ccquad: error: {exc}\n")
            status = EXIT_USAGE
        except (NumericalFailure, ArithmeticError) as exc:
            err.write(f"ccquad: numerical failure: {exc}\n")
            status = EXIT_NUMERICAL
    for w in caught:
        err.write(f"warning: {w.message}\n")
    return status


def run():
    sys.exit(main())
