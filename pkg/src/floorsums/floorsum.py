"""Constant-time evaluation of S(m, n, x) = sum_{k=0}^{m-1} floor((x + n*k)/m).

For integer m > 0, integer n and rational x the sum collapses to

    S = (m-1)(n-1)/2 + (d-1)/2 + d*floor(x/d),        d = gcd(m, |n|),

where the two half terms are combined before a single exact division:
(m-1)(n-1) + (d-1) is always even.  Everything here is exact integer
arithmetic; the definitional O(m) sum is kept alongside as the oracle.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from . import _kernels
from .exact import as_rational

# numba/numpy kernels run inside this window; anything bigger widens to
# python ints automatically (never wraps).
_INT64_WINDOW = 1 << 60

_FLAG_NAMES = {1: "sum-mismatch", 2: "parity", 4: "hit-structure", 8: "congruence"}


class GcdDecomposition(NamedTuple):
    d: int
    m_prime: int
    n_prime: int


def _check_m(m: int) -> None:
    if m < 1:
        raise ValueError("m must be positive")


def decompose(m: int, n: int) -> GcdDecomposition:
    """Split (m, n) into d = gcd(m, |n|), m' = m/d, n' = n/d."""
    _check_m(m)
    d = math.gcd(m, n)
    return GcdDecomposition(d, m // d, n // d)


def closed_form_sum(m: int, n: int, x) -> int:
    """S(m, n, x) in O(1) integer operations."""
    if m < 1:
        raise ValueError("m must be positive")
    if not isinstance(x, Fraction):
        x = as_rational(x)
    d = math.gcd(m, n)
    return ((m - 1) * (n - 1) + (d - 1)) // 2 + d * (x.numerator // (x.denominator * d))


def brute_force_sum(m: int, n: int, x, backend: str | None = None) -> int:
    """The definitional O(m) sum, term by term, exact.

    With x = p/q each term is (p + q*n*k) // (q*m).  The multiples of q*m
    hiding in p and q*n are peeled off exactly first, so the remaining loop
    works on operands in [0, q*m) and can run on the int64 kernels; when
    even the reduced operands would not fit, the loop runs on python ints.
    """
    _check_m(m)
    x = as_rational(x)
    p, q = x.numerator, x.denominator
    big_m = q * m
    a_full = q * n
    a = a_full % big_m
    p0 = p % big_m
    peeled = ((a_full - a) // big_m) * (m * (m - 1) // 2) + ((p - p0) // big_m) * m
    backend = _kernels.resolve_backend(backend)
    if backend != "python" and big_m * m >= _INT64_WINDOW:
        backend = "python"
    return peeled + _kernels.brute_sum_reduced(p0, a, big_m, m, backend)


def hermite_sum(m: int, x) -> int:
    """sum_{k=0}^{m-1} floor(x + k/m), evaluated as S(m, 1, m*x) = floor(m*x)."""
    _check_m(m)
    return closed_form_sum(m, 1, m * as_rational(x))


def list_integer_hits(m: int, n: int, x) -> list[int]:
    """All k in [0, m) with (x + n*k)/m an integer, via the linear congruence.

    Nonempty exactly when x is an integer and d | x; then the solutions of
    n*k = -x (mod m) form d points spaced m' apart starting below m'.
    """
    _check_m(m)
    x = as_rational(x)
    if x.denominator != 1:
        return []
    d, m_p, n_p = decompose(m, n)
    if x.numerator % d != 0:
        return []
    if m_p == 1:
        k0 = 0
    else:
        k0 = (-(x.numerator // d)) * pow(n_p % m_p, -1, m_p) % m_p
    return [k0 + i * m_p for i in range(d)]


def scan_integer_hits(m: int, n: int, x, backend: str | None = None) -> list[int]:
    """O(m) cross-check of list_integer_hits by scanning every k."""
    _check_m(m)
    x = as_rational(x)
    if x.denominator != 1:
        return []
    backend = _kernels.resolve_backend(backend)
    if backend != "python" and m * m >= _INT64_WINDOW:
        backend = "python"
    return [int(k) for k in _kernels.hits_scan(x.numerator % m, n % m, m, backend)]


@dataclass(frozen=True)
class FloorSumInstance:
    """One sum S(m, n, x): m >= 1, integer step n, rational offset x."""

    m: int
    n: int
    x: Fraction

    def __post_init__(self):
        _check_m(self.m)
        object.__setattr__(self, "x", as_rational(self.x))

    def closed_form(self) -> int:
        return closed_form_sum(self.m, self.n, self.x)

    def oracle(self, backend: str | None = None) -> int:
        return brute_force_sum(self.m, self.n, self.x, backend=backend)

    def integer_hits(self) -> list[int]:
        return list_integer_hits(self.m, self.n, self.x)


# ---------------------------------------------------------------------------
# Grid verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    m: int
    n: int
    q: int
    p: int
    closed: int
    oracle: int
    flags: int

    def describe(self) -> str:
        names = ",".join(v for k, v in sorted(_FLAG_NAMES.items()) if self.flags & k)
        return (
            f"m={self.m} n={self.n} x={self.p}/{self.q} "
            f"closed={self.closed} oracle={self.oracle} [{names}]"
        )


@dataclass
class VerifyReport:
    m_max: int
    n_max: int
    q_max: int
    p_span: int
    backend: str
    instances: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def _grid_worker(args):
    return _kernels.verify_grid(*args)


def _balanced_shards(m_max: int, workers: int) -> list[tuple[int, int]]:
    # inner work per m is proportional to m; split [1, m_max] so each shard
    # carries a similar share of sum(m)
    workers = max(1, min(workers, m_max))
    total = m_max * (m_max + 1) // 2
    shards = []
    lo = 1
    acc = 0
    target = total / workers
    for m in range(1, m_max + 1):
        acc += m
        if acc >= target * (len(shards) + 1) and m < m_max:
            shards.append((lo, m))
            lo = m + 1
    shards.append((lo, m_max))
    return shards


def _grid_fits_int64(m_max: int, n_max: int, q_max: int, p_span: int) -> bool:
    worst = max(
        p_span + q_max * (n_max + 1) * m_max,
        m_max * (n_max + 1),
        m_max * m_max,
        q_max * m_max,
    )
    return worst < _INT64_WINDOW


def verify_range(
    m_max: int,
    n_max: int,
    q_max: int,
    p_span: int,
    workers: int = 1,
    backend: str | None = None,
    record_cap: int = 4096,
) -> VerifyReport:
    """Compare closed form against the oracle on the full (m, n, p/q) grid.

    Also checks, per instance: the parity of (m-1)(n-1) + (d-1), every hit-set
    invariant, and that congruence-based and scan-based hit enumeration agree.
    p/q pairs are deliberately left unreduced; duplicates re-check the same x.
    """
    _check_m(m_max)
    if n_max < 0 or q_max < 1 or p_span < 1:
        raise ValueError("bounds must satisfy n_max >= 0, q_max >= 1, p_span >= 1")
    backend = _kernels.resolve_backend(backend)
    if backend != "python" and not _grid_fits_int64(m_max, n_max, q_max, p_span):
        backend = "python"
    report = VerifyReport(m_max, n_max, q_max, p_span, backend)

    shards = _balanced_shards(m_max, workers)
    jobs = [(lo, hi, n_max, q_max, p_span, record_cap, backend) for lo, hi in shards]
    if len(jobs) == 1:
        parts = [_grid_worker(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=len(jobs)) as pool:
            parts = list(pool.map(_grid_worker, jobs))

    failures = 0
    for checked, failed, rec in parts:
        report.instances += checked
        failures += failed
        for flags, m, n, q, p, closed, oracle in rec:
            report.counterexamples.append(
                Counterexample(int(m), int(n), int(q), int(p), int(closed), int(oracle), int(flags))
            )
    if failures > len(report.counterexamples):
        # record cap overflowed; re-enumerate completely on the exact path
        report.counterexamples.clear()
        for lo, hi in shards:
            _, _, rec = _kernels.verify_grid(lo, hi, n_max, q_max, p_span, failures, "python")
            for flags, m, n, q, p, closed, oracle in rec:
                report.counterexamples.append(
                    Counterexample(int(m), int(n), int(q), int(p), int(closed), int(oracle), int(flags))
                )
    report.counterexamples.sort(key=lambda c: (c.m, c.n, c.q, c.p))
    return report
