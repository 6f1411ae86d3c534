# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport frexp, ldexp, fabs, hypot, copysign

cnp.import_array()

BACKEND = "cython"

cdef double _BIG = 2.0 ** 400
cdef double _SMALL = 2.0 ** -400


def monic_tail(b, chat, xs, Py_ssize_t n, Py_ssize_t m):
    cdef const double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef const double[::1] cv = np.ascontiguousarray(chat, dtype=np.float64)
    cdef const double[::1] xv = np.ascontiguousarray(xs, dtype=np.float64).ravel()
    cdef Py_ssize_t nx = xv.shape[0]
    mant_arr = np.zeros((nx, m + 1), dtype=np.float64)
    expo_arr = np.zeros((nx, m + 1), dtype=np.int64)
    cdef double[:, ::1] mant = mant_arr
    cdef long long[:, ::1] expo = expo_arr
    cdef Py_ssize_t lo = n - m
    cdef Py_ssize_t j, k, col
    cdef double x, u, v, w, big, fm
    cdef long long scale
    cdef int e
    for j in range(nx):
        x = xv[j]
        u = 0.0
        v = 1.0
        scale = 0
        if lo == 0:
            mant[j, 0] = 1.0
        for k in range(n):
            if k == 0:
                w = (x - bv[0]) * v
            else:
                w = (x - bv[k]) * v - cv[k] * u
            u = v
            v = w
            big = fabs(u) if fabs(u) > fabs(v) else fabs(v)
            if big > _BIG or (big < _SMALL and big != 0.0):
                frexp(big, &e)
                u = ldexp(u, -e)
                v = ldexp(v, -e)
                scale += e
            if k + 1 >= lo:
                col = k + 1 - lo
                fm = frexp(v, &e)
                if fm != 0.0:
                    mant[j, col] = 2.0 * fm
                    expo[j, col] = scale + e - 1
    return mant_arr, expo_arr


def tridiag_eigvalsh(d, e, int max_sweeps_per_order=30):
    cdef Py_ssize_t n = len(d)
    if n == 0:
        return np.zeros(0)
    dd_arr = np.array(d, dtype=np.float64)
    ee_arr = np.zeros(n, dtype=np.float64)
    ee_arr[: n - 1] = np.asarray(e, dtype=np.float64)[: n - 1]
    cdef double[::1] D = dd_arr
    cdef double[::1] E = ee_arr
    cdef Py_ssize_t l, m, i
    cdef long cap = max_sweeps_per_order * n
    cdef long sweeps = 0
    cdef double dd, g, r, s, c, p, f, bb
    cdef bint deflated
    for l in range(n):
        while True:
            m = l
            while m < n - 1:
                dd = fabs(D[m]) + fabs(D[m + 1])
                if fabs(E[m]) + dd == dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > cap:
                raise ArithmeticError("tridiagonal QL did not converge")
            g = (D[l + 1] - D[l]) / (2.0 * E[l])
            r = hypot(g, 1.0)
            g = D[m] - D[l] + E[l] / (g + copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            deflated = False
            while i >= l:
                f = s * E[i]
                bb = c * E[i]
                r = hypot(f, g)
                E[i + 1] = r
                if r == 0.0:
                    D[i + 1] -= p
                    E[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = D[i + 1] - p
                r = (D[i] - g) * s + 2.0 * c * bb
                p = s * r
                D[i + 1] = g + p
                g = c * r - bb
                i -= 1
            if deflated:
                continue
            D[l] -= p
            E[l] = g
            E[m] = 0.0
    return np.sort(dd_arr)


cdef Py_ssize_t _count_below(double[::1] D, double[::1] E2, double x):
    cdef Py_ssize_t n = D.shape[0]
    cdef Py_ssize_t i, count = 0
    cdef double q = D[0] - x
    if q < 0.0:
        count += 1
    for i in range(1, n):
        if q == 0.0:
            q = 1e-300
        q = D[i] - x - E2[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def tridiag_extreme(d, e):
    dd_arr = np.array(d, dtype=np.float64)
    ee_arr = np.asarray(e, dtype=np.float64)
    cdef double[::1] D = dd_arr
    cdef Py_ssize_t n = D.shape[0]
    e2_arr = np.ascontiguousarray(ee_arr * ee_arr)
    if e2_arr.shape[0] == 0:
        e2_arr = np.zeros(1)
    cdef double[::1] E2 = e2_arr
    cdef double lo = D[0], hi = D[0], r, span, a, z, mid
    cdef Py_ssize_t i, it, target
    for i in range(n):
        r = 0.0
        if i > 0:
            r += fabs(ee_arr[i - 1])
        if i < n - 1:
            r += fabs(ee_arr[i])
        if D[i] - r < lo:
            lo = D[i] - r
        if D[i] + r > hi:
            hi = D[i] + r
    span = max(hi - lo, fabs(lo), fabs(hi), 1e-300)
    out = []
    for target in (1, n):
        a = lo - 1e-12 * span
        z = hi + 1e-12 * span
        for it in range(300):
            mid = 0.5 * (a + z)
            if mid == a or mid == z:
                break
            if _count_below(D, E2, mid) >= target:
                z = mid
            else:
                a = mid
            if z - a <= 4e-16 * max(fabs(a), fabs(z)):
                break
        out.append(0.5 * (a + z))
    return out[0], out[1]
