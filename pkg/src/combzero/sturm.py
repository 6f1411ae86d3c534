"""Exact Sturm-chain root counting over the rationals.

Independent of the floating-point machinery: inputs are converted to exact
rationals (every float is one) and the chain is a primitive integer
remainder sequence, so counts are exact for the polynomial as given.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Optional, Sequence

from .errors import InvalidParameter, OracleOutOfRange

MAX_DEGREE = 40


def _to_integers(coeffs):
    fr = [Fraction(c) for c in coeffs]
    while fr and fr[-1] == 0:
        fr.pop()
    if not fr:
        raise InvalidParameter("zero polynomial has no finite root count")
    den = reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in fr), 1)
    return _primitive([int(f * den) for f in fr])


def _primitive(p):
    g = reduce(math.gcd, (abs(c) for c in p), 0)
    return [c // g for c in p] if g > 1 else p


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _derivative(p):
    return [k * p[k] for k in range(1, len(p))]


def _positive_prem(f, g):
    """A positive multiple of the remainder of f by g (ascending integer lists)."""
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    alg = abs(lg)
    sg = 1 if lg > 0 else -1
    while len(f) - 1 >= dg and f:
        shift = len(f) - 1 - dg
        lf = f[-1]
        f = [alg * c for c in f]
        for i, gc in enumerate(g):
            f[i + shift] -= sg * lf * gc
        _trim(f)
    return f


def sturm_chain(p):
    """Sturm sequence of integer polynomial ``p`` (ascending coefficients)."""
    chain = [p, _primitive(_derivative(p))]
    while len(chain[-1]) > 1:
        r = _positive_prem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(_primitive([-c for c in r]))
    return chain


def _sign_at(p, x: Fraction) -> int:
    u, v = x.numerator, x.denominator
    d = len(p) - 1
    acc = 0
    vp = 1
    # homogenized: sum c_k u^k v^(d-k) has the sign of p(u/v) since v > 0
    upow = [1]
    for _ in range(d):
        upow.append(upow[-1] * u)
    for k in range(d, -1, -1):
        acc += p[k] * upow[k] * vp
        vp *= v
    return (acc > 0) - (acc < 0)


def _sign_at_inf(p, positive: bool) -> int:
    s = 1 if p[-1] > 0 else -1
    if not positive and (len(p) - 1) % 2 == 1:
        s = -s
    return s


def _variations(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_real_root_count(coeffs: Sequence, interval: Optional[tuple] = None) -> int:
    """Number of distinct real roots of ``sum_k coeffs[k] x^k``.

    ``interval`` is ``None`` for the whole line or a closed ``(lo, hi)``;
    either end may be ``None`` / infinite.  Degree at most 40.
    """
    p = _to_integers(coeffs)
    deg = len(p) - 1
    if deg > MAX_DEGREE:
        raise OracleOutOfRange(f"degree {deg} exceeds oracle limit {MAX_DEGREE}")
    if deg == 0:
        return 0
    chain = sturm_chain(p)
    lo, hi = (None, None) if interval is None else interval

    def side(x, positive):
        if x is None or (isinstance(x, float) and math.isinf(x)):
            return [_sign_at_inf(q, positive) for q in chain], False
        fx = Fraction(x)
        return [_sign_at(q, fx) for q in chain], _sign_at(p, fx) == 0

    lo_signs, lo_is_root = side(lo, False)
    hi_signs, _ = side(hi, True)
    # V(lo) - V(hi) counts roots in (lo, hi]
    count = _variations(lo_signs) - _variations(hi_signs)
    if lo_is_root:
        count += 1
    return count


def real_root_count_with_multiplicity(coeffs: Sequence) -> int:
    """Real roots counted with multiplicity.

    A root of multiplicity m survives in the first m iterated gcd's
    ``g_0 = p``, ``g_{k+1} = gcd(g_k, g_k')``; summing their distinct counts
    gives the multiplicity-weighted total.
    """
    g = _to_integers(coeffs)
    total = 0
    while len(g) > 1:
        total += sturm_real_root_count(g)
        g = sturm_chain(g)[-1]
    return total


def nonreal_root_count(coeffs: Sequence) -> int:
    p = _to_integers(coeffs)
    return len(p) - 1 - real_root_count_with_multiplicity(p)


@lru_cache(maxsize=64)
def exact_monic_polys(family, n: int):
    """Rational coefficient lists (ascending) of monic ``p_0 .. p_n``."""
    polys = [(Fraction(1),)]
    if n == 0:
        return tuple(polys)
    b0 = family.b(0, exact=True)
    polys.append((-b0, Fraction(1)))
    for k in range(1, n):
        bk = family.b(k, exact=True)
        ck = family.chat(k, exact=True)
        cur, prev = polys[k], polys[k - 1]
        nxt = [Fraction(0)] * (k + 2)
        for i, c in enumerate(cur):
            nxt[i + 1] += c
            nxt[i] -= bk * c
        for i, c in enumerate(prev):
            nxt[i] -= ck * c
        polys.append(tuple(nxt))
    return tuple(polys)


def expand_combination_exact(family, rho, coeffs, n: int):
    """Ascending rational coefficients of ``q_n / rho_n``."""
    coeffs = list(coeffs)
    K = len(coeffs) - 1
    polys = exact_monic_polys(family, n)
    out = [Fraction(0)] * (n + 1)
    for j, g in enumerate(coeffs):
        if g == 0:
            continue
        w = Fraction(g) * rho.exact_back_ratio(n, j)
        for i, c in enumerate(polys[n - j]):
            out[i] += w * c
    return out
