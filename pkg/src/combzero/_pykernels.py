"""Reference kernels in numpy / plain Python.

Used when the compiled ``_ckernels`` extension is not importable, and as the
baseline in ``benchmarks/bench_kernels.py``.  Signatures and results match the
Cython module exactly.
"""
import math

import numpy as np

BACKEND = "python"


def monic_tail(b, chat, xs, n, m):
    """Values of the monic recurrence ``p_{n-m} .. p_n`` at every ``x`` in xs.

    ``b[k]`` for ``0 <= k < n`` and ``chat[k]`` for ``1 <= k < n`` must be set
    (``chat[0]`` is ignored).  Returns ``(mantissa, exponent)`` arrays of shape
    ``(len(xs), m + 1)`` with mantissas in ``[1, 2)`` or exactly zero.
    """
    xs = np.ascontiguousarray(xs, dtype=np.float64).ravel()
    nx = xs.shape[0]
    mant = np.zeros((nx, m + 1), dtype=np.float64)
    expo = np.zeros((nx, m + 1), dtype=np.int64)
    lo = n - m
    u = np.zeros(nx)
    v = np.ones(nx)
    scale = np.zeros(nx, dtype=np.int64)
    if lo == 0:
        mant[:, 0] = 1.0
    for k in range(n):
        if k == 0:
            w = (xs - b[0]) * v
        else:
            w = (xs - b[k]) * v - chat[k] * u
        u, v = v, w
        big = np.maximum(np.abs(u), np.abs(v))
        _, e = np.frexp(big)
        e = e.astype(np.int64)
        u = np.ldexp(u, -e)
        v = np.ldexp(v, -e)
        scale += e
        deg = k + 1
        if deg >= lo:
            fm, fe = np.frexp(v)
            nz = fm != 0.0
            col = deg - lo
            mant[:, col] = np.where(nz, 2.0 * fm, 0.0)
            expo[:, col] = np.where(nz, scale + fe.astype(np.int64) - 1, 0)
    return mant, expo


def tridiag_eigvalsh(d, e, max_sweeps_per_order=30):
    """Eigenvalues (ascending) of the symmetric tridiagonal matrix.

    ``d`` is the diagonal, ``e`` the ``len(d) - 1`` off-diagonal entries.
    Implicit-shift QL with a Wilkinson-type shift; at most
    ``max_sweeps_per_order * len(d)`` QL sweeps in total.
    """
    d = [float(x) for x in d]
    n = len(d)
    if n == 0:
        return np.zeros(0)
    e = [float(x) for x in e] + [0.0]
    cap = max_sweeps_per_order * n
    sweeps = 0
    for l in range(n):
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) + dd == dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > cap:
                raise ArithmeticError("tridiagonal QL did not converge")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            deflated = False
            while i >= l:
                f = s * e[i]
                bb = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * bb
                p = s * r
                d[i + 1] = g + p
                g = c * r - bb
                i -= 1
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.sort(np.array(d))


def _count_below(d, e2, x):
    n = len(d)
    count = 0
    q = d[0] - x
    if q < 0.0:
        count += 1
    for i in range(1, n):
        if q == 0.0:
            q = 1e-300
        q = d[i] - x - e2[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def tridiag_extreme(d, e):
    """``(smallest, largest)`` eigenvalue by Sturm-count bisection."""
    d = [float(x) for x in d]
    n = len(d)
    e = [float(x) for x in e]
    e2 = [x * x for x in e]
    lo = hi = d[0]
    for i in range(n):
        r = (abs(e[i - 1]) if i > 0 else 0.0) + (abs(e[i]) if i < n - 1 else 0.0)
        lo = min(lo, d[i] - r)
        hi = max(hi, d[i] + r)
    span = max(hi - lo, abs(lo), abs(hi), 1e-300)
    out = []
    for target in (1, n):
        a, z = lo - 1e-12 * span, hi + 1e-12 * span
        for _ in range(300):
            mid = 0.5 * (a + z)
            if mid == a or mid == z:
                break
            if _count_below(d, e2, mid) >= target:
                z = mid
            else:
                a = mid
            if z - a <= 4e-16 * max(abs(a), abs(z)):
                break
        out.append(0.5 * (a + z))
    return out[0], out[1]
