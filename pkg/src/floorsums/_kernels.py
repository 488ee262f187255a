"""Hot integer kernels behind the floor-sum operations.

Three interchangeable backends share one loop body:

* ``numba``  -- the loop JIT-compiled with ``@njit`` (default when importable),
* ``numpy``  -- vectorized equivalents,
* ``python`` -- the same loop interpreted; arbitrary-precision, always safe.

``FLOORSUMS_BACKEND=numba|numpy|python`` pins the default.  The numba and
numpy paths require operands pre-reduced into a comfortable int64 window;
callers in :mod:`floorsums.floorsum` check the bounds and drop to the
``python`` path when they do not hold, so results never wrap silently.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(func):
            return func

        return wrap


_ENV_VAR = "FLOORSUMS_BACKEND"
BACKENDS = ("numba", "numpy", "python")

_CHUNK = 1 << 20


def resolve_backend(name=None) -> str:
    """Pick the backend: explicit arg, else env var, else numba when present."""
    if name is None:
        name = os.environ.get(_ENV_VAR, "").strip().lower() or None
    if name is None:
        return "numba" if HAVE_NUMBA else "numpy"
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; choose from {BACKENDS}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("backend 'numba' requested but numba is not importable")
    return name


# ---------------------------------------------------------------------------
# Loop bodies (run as-is for the python backend, jitted for numba)
# ---------------------------------------------------------------------------


def _brute_sum_loop(p0, a, big_m, m):
    # sum of (p0 + a*k) // big_m for k in [0, m), with 0 <= p0, a < big_m.
    # The quotient advances by at most 1 per step, so a carry replaces division.
    s = 0
    c = 0
    r = p0
    for _ in range(m):
        s += c
        r += a
        if r >= big_m:
            r -= big_m
            c += 1
    return s


def _hits_scan_loop(x0, step, m, out):
    # record k in [0, m) with (x0 + step*k) % m == 0, given 0 <= x0, step < m.
    cnt = 0
    t = x0
    for k in range(m):
        if t == 0:
            out[cnt] = k
            cnt += 1
        t += step
        if t >= m:
            t -= m
    return cnt


def _verify_grid_loop(m_lo, m_hi, n_max, q_max, p_span, rec):
    # Exhaustive check over m in [m_lo, m_hi], n in [-n_max, n_max],
    # x = p/q with q in [1, q_max], p in [-p_span, p_span].
    # Failure flags: 1 closed != brute, 2 parity, 4 hit structure, 8 congruence.
    checked = 0
    failures = 0
    nrec = 0
    cap = rec.shape[0]
    for m in range(m_lo, m_hi + 1):
        for n in range(-n_max, n_max + 1):
            n_abs = -n if n < 0 else n
            g0 = m
            g1 = n_abs
            while g1:
                g0, g1 = g1, g0 % g1
            d = g0
            m_p = m // d
            half_num = (m - 1) * (n - 1) + (d - 1)
            parity_ok = half_num % 2 == 0
            base = half_num // 2
            inv = 0
            if m_p > 1:
                # modular inverse of n/d (mod m/d) via extended Euclid
                r0 = (n // d) % m_p
                r1 = m_p
                s0 = 1
                s1 = 0
                while r1:
                    qq = r0 // r1
                    r0, r1 = r1, r0 - qq * r1
                    s0, s1 = s1, s0 - qq * s1
                inv = s0 % m_p
            for q in range(1, q_max + 1):
                qd = q * d
                qm = q * m
                astep = q * n
                for p in range(-p_span, p_span + 1):
                    checked += 1
                    closed = base + d * (p // qd)
                    s = 0
                    cnt = 0
                    first = -1
                    last = -1
                    spacing_ok = True
                    t = p
                    for k in range(m):
                        s += t // qm
                        if t % qm == 0:
                            cnt += 1
                            if first < 0:
                                first = k
                            elif k - last != m_p:
                                spacing_ok = False
                            last = k
                        t += astep
                    expect = False
                    k0 = -1
                    if p % q == 0:
                        x_int = p // q
                        if x_int % d == 0:
                            expect = True
                            if m_p > 1:
                                k0 = (((-(x_int // d)) % m_p) * inv) % m_p
                            else:
                                k0 = 0
                    flags = 0
                    if closed != s:
                        flags |= 1
                    if not parity_ok:
                        flags |= 2
                    if cnt == 0:
                        if expect:
                            flags |= 4
                    else:
                        if (not expect) or cnt != d or first >= m_p or not spacing_ok:
                            flags |= 4
                        if first != k0:
                            flags |= 8
                    if flags != 0:
                        failures += 1
                        if nrec < cap:
                            rec[nrec, 0] = flags
                            rec[nrec, 1] = m
                            rec[nrec, 2] = n
                            rec[nrec, 3] = q
                            rec[nrec, 4] = p
                            rec[nrec, 5] = closed
                            rec[nrec, 6] = s
                            nrec += 1
    return checked, failures, nrec


if HAVE_NUMBA:
    _brute_sum_nb = njit(cache=True)(_brute_sum_loop)
    _hits_scan_nb = njit(cache=True)(_hits_scan_loop)
    _verify_grid_nb = njit(cache=True)(_verify_grid_loop)


# ---------------------------------------------------------------------------
# Vectorized equivalents
# ---------------------------------------------------------------------------


def _brute_sum_np(p0, a, big_m, m):
    total = 0
    for lo in range(0, m, _CHUNK):
        k = np.arange(lo, min(lo + _CHUNK, m), dtype=np.int64)
        total += int(((p0 + a * k) // big_m).sum())
    return total


def _hits_scan_np(x0, step, m, out):
    cnt = 0
    for lo in range(0, m, _CHUNK):
        k = np.arange(lo, min(lo + _CHUNK, m), dtype=np.int64)
        found = k[(x0 + step * k) % m == 0]
        out[cnt : cnt + found.size] = found
        cnt += found.size
    return cnt


def _verify_grid_np(m_lo, m_hi, n_max, q_max, p_span, rec):
    checked = 0
    failures = 0
    nrec = 0
    cap = rec.shape[0]
    q_col = np.arange(1, q_max + 1, dtype=np.int64).reshape(-1, 1)
    p_row = np.arange(-p_span, p_span + 1, dtype=np.int64).reshape(1, -1)
    for m in range(m_lo, m_hi + 1):
        k = np.arange(m, dtype=np.int64)
        for n in range(-n_max, n_max + 1):
            d = math.gcd(m, abs(n))
            m_p = m // d
            half_num = (m - 1) * (n - 1) + (d - 1)
            parity_bad = half_num % 2 != 0
            base = half_num // 2
            inv = pow((n // d) % m_p, -1, m_p) if m_p > 1 else 0

            qm = (q_col * m)[:, :, None]
            t = p_row[:, :, None] + (q_col * n)[:, :, None] * k
            brute = (t // qm).sum(axis=2)
            closed = base + d * (p_row // (q_col * d))
            mask = t % qm == 0
            cnt = mask.sum(axis=2)
            first = np.where(cnt > 0, mask.argmax(axis=2), -1)
            prog = (k[None, None, :] - first[:, :, None]) % m_p == 0
            struct_nonempty = (mask == prog).all(axis=2) & (cnt == d) & (first < m_p)

            is_int = p_row % q_col == 0
            x_int = p_row // q_col
            expect = is_int & (x_int % d == 0)
            if m_p > 1:
                k0 = (((-(x_int // d)) % m_p) * inv) % m_p
            else:
                k0 = np.zeros_like(x_int)
            k0 = np.where(expect, k0, -1)

            sum_bad = closed != brute
            struct_bad = np.where(cnt == 0, expect, ~(expect & struct_nonempty))
            cong_bad = (cnt > 0) & (first != k0)
            flags = (
                sum_bad * 1
                + (2 if parity_bad else 0)
                + struct_bad * 4
                + cong_bad * 8
            )
            checked += flags.size
            if flags.any():
                bad = np.argwhere(flags != 0)
                failures += len(bad)
                for qi, pi in bad:
                    if nrec < cap:
                        rec[nrec, 0] = flags[qi, pi]
                        rec[nrec, 1] = m
                        rec[nrec, 2] = n
                        rec[nrec, 3] = q_col[qi, 0]
                        rec[nrec, 4] = p_row[0, pi]
                        rec[nrec, 5] = closed[qi, pi]
                        rec[nrec, 6] = brute[qi, pi]
                        nrec += 1
    return checked, failures, nrec


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def brute_sum_reduced(p0, a, big_m, m, backend) -> int:
    """Sum of (p0 + a*k) // big_m over k in [0, m); operands pre-reduced."""
    if backend == "numba":
        return int(_brute_sum_nb(p0, a, big_m, m))
    if backend == "numpy":
        return _brute_sum_np(p0, a, big_m, m)
    return _brute_sum_loop(p0, a, big_m, m)


def hits_scan(x0, step, m, backend) -> np.ndarray:
    """Indices k in [0, m) with (x0 + step*k) % m == 0; inputs already mod m."""
    out = np.empty(m, dtype=np.int64)
    if backend == "numba":
        cnt = _hits_scan_nb(x0, step, m, out)
    elif backend == "numpy":
        cnt = _hits_scan_np(x0, step, m, out)
    else:
        cnt = _hits_scan_loop(x0, step, m, out)
    return out[:cnt].copy()


def verify_grid(m_lo, m_hi, n_max, q_max, p_span, cap, backend):
    """Run the exhaustive grid check; returns (checked, failures, records)."""
    rec = np.zeros((cap, 7), dtype=np.int64)
    if backend == "numba":
        checked, failures, nrec = _verify_grid_nb(m_lo, m_hi, n_max, q_max, p_span, rec)
    elif backend == "numpy":
        checked, failures, nrec = _verify_grid_np(m_lo, m_hi, n_max, q_max, p_span, rec)
    else:
        checked, failures, nrec = _verify_grid_loop(m_lo, m_hi, n_max, q_max, p_span, rec)
    return int(checked), int(failures), rec[: int(nrec)]
