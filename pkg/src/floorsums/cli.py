"""Command-line front end.

Subcommands: eval, oracle, hits, verify, fourier, sinesum, residual, bench.
Exit codes: 0 success, 1 verification counterexamples, 2 usage or parse
errors, 3 internal correctness-gate failure.  All floats print with 12
significant digits; sweep rows are comma-delimited and --csv adds a header.
"""

from __future__ import annotations

import argparse
import math
import statistics
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import _kernels, harmonic
from .exact import format_rational, parse_rational
from .floorsum import (
    brute_force_sum,
    closed_form_sum,
    list_integer_hits,
    verify_range,
)

EXIT_OK = 0
EXIT_COUNTEREXAMPLES = 1
EXIT_USAGE = 2
EXIT_GATE = 3


class UsageError(ValueError):
    pass


class CorrectnessGateError(RuntimeError):
    """Closed form and oracle disagreed; timing such a pair would be meaningless."""


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


def _rational_arg(token: str) -> Fraction:
    try:
        return parse_rational(token)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive(name: str, value: int) -> int:
    if value < 1:
        raise UsageError(f"{name} must be positive")
    return value


# ---------------------------------------------------------------------------
# Benchmark
# ---------------------------------------------------------------------------


@dataclass
class BenchReport:
    m: int
    n: int
    x: Fraction
    iters: int
    value: int
    closed_ns: tuple[float, int, int]  # median, min, max
    oracle_ns: tuple[float, int, int]

    @property
    def speedup(self) -> float:
        return self.oracle_ns[0] / self.closed_ns[0]


def _time_ns(fn, iters: int) -> tuple[float, int, int]:
    fn()  # warm-up, discarded
    samples = []
    for _ in range(iters):
        t0 = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - t0)
    return statistics.median(samples), min(samples), max(samples)


def bench(m: int, n: int, x, iters: int, backend: str | None = None) -> BenchReport:
    """Time the O(1) closed form against the O(m) oracle on one instance.

    Both paths must agree on the value before any timing is reported.
    """
    _positive("m", m)
    _positive("iters", iters)
    closed = closed_form_sum(m, n, x)
    oracle = brute_force_sum(m, n, x, backend=backend)
    if closed != oracle:
        raise CorrectnessGateError(
            f"correctness gate failed: closed={closed} oracle={oracle} "
            f"for m={m} n={n} x={format_rational(x)}"
        )
    closed_t = _time_ns(lambda: closed_form_sum(m, n, x), iters)
    oracle_t = _time_ns(lambda: brute_force_sum(m, n, x, backend=backend), iters)
    return BenchReport(m, n, x, iters, closed, closed_t, oracle_t)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="floorsums", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def instance_flags(p, with_x=True):
        p.add_argument("--m", type=int, required=True, help="period (positive integer)")
        p.add_argument("--n", type=int, required=True, help="step (any integer)")
        if with_x:
            p.add_argument(
                "--x", type=_rational_arg, required=True, help="offset, e.g. 5/2 or -7"
            )

    p_eval = sub.add_parser("eval", help="closed-form value of S(m, n, x)")
    instance_flags(p_eval)

    p_oracle = sub.add_parser("oracle", help="definitional O(m) value of S(m, n, x)")
    instance_flags(p_oracle)
    p_oracle.add_argument("--backend", choices=_kernels.BACKENDS, default=None)

    p_hits = sub.add_parser("hits", help="k in [0, m) where (x + n*k)/m is an integer")
    instance_flags(p_hits)

    p_verify = sub.add_parser("verify", help="closed form vs oracle over a full grid")
    p_verify.add_argument("--m-max", type=int, required=True)
    p_verify.add_argument("--n-max", type=int, required=True)
    p_verify.add_argument("--q-max", type=int, required=True)
    p_verify.add_argument("--p-span", type=int, required=True)
    p_verify.add_argument("--workers", type=int, default=1)
    p_verify.add_argument("--backend", choices=_kernels.BACKENDS, default=None)

    p_fourier = sub.add_parser("fourier", help="truncated sawtooth series for floor(x)")
    p_fourier.add_argument("--x", type=float, default=None)
    p_fourier.add_argument("--terms", type=int, required=True)
    p_fourier.add_argument("--x-start", type=float, default=None)
    p_fourier.add_argument("--x-end", type=float, default=None)
    p_fourier.add_argument("--x-step", type=float, default=None)
    p_fourier.add_argument("--csv", action="store_true", help="emit a header row")

    p_sine = sub.add_parser("sinesum", help="sum of sin(z + a*k) for k = 0..p")
    p_sine.add_argument("--z", type=float, default=None, help="initial angle (radians)")
    p_sine.add_argument("--a", type=float, default=None, help="angle step (radians)")
    p_sine.add_argument("--p", type=int, default=None, help="last index, inclusive")
    p_sine.add_argument("--z-pi", type=_rational_arg, default=None, help="z as a rational multiple of pi")
    p_sine.add_argument("--a-pi", type=_rational_arg, default=None, help="a as a rational multiple of pi")
    p_sine.add_argument("--m", type=int, default=None, help="instance form: period")
    p_sine.add_argument("--n", type=int, default=None, help="instance form: step")
    p_sine.add_argument("--x", type=_rational_arg, default=None, help="instance form: offset")
    p_sine.add_argument("--j", type=int, default=None, help="instance form: harmonic index")
    p_sine.add_argument("--method", choices=("closed", "direct"), default="closed")

    p_resid = sub.add_parser(
        "residual", help="truncated-series form of S minus its closed form"
    )
    instance_flags(p_resid)
    p_resid.add_argument("--terms", type=int, required=True)

    p_bench = sub.add_parser("bench", help="time the O(1) kernel against the O(m) oracle")
    instance_flags(p_bench)
    p_bench.add_argument("--iters", type=int, default=100)
    p_bench.add_argument("--backend", choices=_kernels.BACKENDS, default=None)

    return parser


# ---------------------------------------------------------------------------
# Subcommand bodies
# ---------------------------------------------------------------------------


def _cmd_eval(args) -> int:
    _positive("m", args.m)
    print(closed_form_sum(args.m, args.n, args.x))
    return EXIT_OK


def _cmd_oracle(args) -> int:
    _positive("m", args.m)
    print(brute_force_sum(args.m, args.n, args.x, backend=args.backend))
    return EXIT_OK


def _cmd_hits(args) -> int:
    _positive("m", args.m)
    print(",".join(str(k) for k in list_integer_hits(args.m, args.n, args.x)))
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = verify_range(
        _positive("m-max", args.m_max),
        args.n_max,
        args.q_max,
        args.p_span,
        workers=args.workers,
        backend=args.backend,
    )
    print(
        f"grid: m in [1,{report.m_max}] n in [-{report.n_max},{report.n_max}] "
        f"q in [1,{report.q_max}] p in [-{report.p_span},{report.p_span}]"
    )
    print(f"instances checked: {report.instances}")
    print(f"counterexamples: {len(report.counterexamples)}")
    for ce in report.counterexamples:
        print(ce.describe())
    return EXIT_OK if report.ok else EXIT_COUNTEREXAMPLES


def _cmd_fourier(args) -> int:
    _positive("terms", args.terms)
    sweep = (args.x_start, args.x_end, args.x_step)
    if args.x is not None:
        if any(v is not None for v in sweep):
            raise UsageError("give either --x or the sweep flags, not both")
        print(_fmt(harmonic.sawtooth_partial_sum(args.x, args.terms)))
        return EXIT_OK
    if any(v is None for v in sweep):
        raise UsageError("need --x, or all of --x-start --x-end --x-step")
    start, end, step = sweep
    if step <= 0 or end < start:
        raise UsageError("sweep needs --x-step > 0 and --x-end >= --x-start")
    if args.csv:
        print("x,partial_sum,floor,abs_error")
    count = int(math.floor((end - start) / step + 1e-9)) + 1
    for i in range(count):
        x = start + i * step
        val = harmonic.sawtooth_partial_sum(x, args.terms)
        floor_x = math.floor(x)
        print(f"{_fmt(x)},{_fmt(val)},{floor_x},{_fmt(abs(val - floor_x))}")
    return EXIT_OK


def _sine_spec_from_args(args) -> harmonic.SineSumSpec:
    instance = [args.m, args.n, args.x, args.j]
    if any(v is not None for v in instance):
        if any(v is None for v in instance):
            raise UsageError("instance form needs all of --m --n --x --j")
        if args.z is not None or args.a is not None or args.p is not None:
            raise UsageError("instance form replaces --z/--a/--p")
        _positive("m", args.m)
        _positive("j", args.j)
        # one period of sin(2*pi*j*(x + n*k)/m): z = 2*j*x/m * pi, a = 2*j*n/m * pi
        return harmonic.SineSumSpec.from_pi_multiples(
            2 * args.j * args.x / args.m,
            Fraction(2 * args.j * args.n, args.m),
            args.m - 1,
        )
    if args.p is None:
        raise UsageError("sinesum needs --p (or the instance form --m --n --x --j)")
    if args.p < 0:
        raise UsageError("p must be >= 0")
    if (args.z is None) == (args.z_pi is None):
        raise UsageError("give exactly one of --z or --z-pi")
    if (args.a is None) == (args.a_pi is None):
        raise UsageError("give exactly one of --a or --a-pi")
    z = args.z if args.z is not None else float(args.z_pi) * math.pi
    a = args.a if args.a is not None else float(args.a_pi) * math.pi
    return harmonic.SineSumSpec(z, a, args.p, args.z_pi, args.a_pi)


def _cmd_sinesum(args) -> int:
    spec = _sine_spec_from_args(args)
    if args.method == "direct":
        print(_fmt(harmonic.sine_sum_direct(spec)))
    else:
        print(_fmt(harmonic.sine_sum_closed(spec)))
    return EXIT_OK


def _cmd_residual(args) -> int:
    _positive("m", args.m)
    _positive("terms", args.terms)
    print(_fmt(harmonic.series_identity_residual(args.m, args.n, args.x, args.terms)))
    return EXIT_OK


def _cmd_bench(args) -> int:
    report = bench(args.m, args.n, args.x, args.iters, backend=args.backend)
    med_c, min_c, max_c = report.closed_ns
    med_o, min_o, max_o = report.oracle_ns
    print(f"m={report.m} n={report.n} x={format_rational(report.x)} value={report.value}")
    print(f"closed_ns: median={_fmt(med_c)} min={min_c} max={max_c}")
    print(f"oracle_ns: median={_fmt(med_o)} min={min_o} max={max_o}")
    print(f"speedup: {_fmt(report.speedup)}")
    return EXIT_OK


_COMMANDS = {
    "eval": _cmd_eval,
    "oracle": _cmd_oracle,
    "hits": _cmd_hits,
    "verify": _cmd_verify,
    "fourier": _cmd_fourier,
    "sinesum": _cmd_sinesum,
    "residual": _cmd_residual,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # single-line diagnostics already printed
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CorrectnessGateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GATE


if __name__ == "__main__":
    sys.exit(main())
