"""Zero asymptotics for the classical families: central, edge, and bulk."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .combo import Combination, eval_combination_arrays
from .errors import InvalidFamily, InvalidParameter, NumericalFailure, PreconditionFailed
from .normalize import NormalizationSeq
from .recurrence import RecurrenceFamily
from .roots import certify_coeffs

# -- Bessel functions of the first kind ---------------------------------------

_SERIES_MAX_X = 12.0


def _series(nu, x):
    """J_nu(x) and J_nu'(x) from the ascending series (x > 0)."""
    half = 0.5 * x
    lead = math.exp(nu * math.log(half) - math.lgamma(nu + 1.0))
    term = lead
    val = term
    der = term * nu / x
    q = -half * half
    for k in range(1, 200):
        term *= q / (k * (k + nu))
        val += term
        der += term * (2 * k + nu) / x
        if abs(term) < 1e-18 * max(abs(val), 1e-300) and k > 2:
            break
    return val, der


def _hankel(nu, x):
    mu = 4.0 * nu * nu
    P = 0.0
    Q = 0.0
    a = 1.0
    prev = math.inf
    k = 0
    while k < 60:
        t = a / x**k
        if abs(t) > prev:
            break
        if k % 2 == 0:
            P += (-1) ** (k // 2) * t
        else:
            Q += (-1) ** (k // 2) * t
        prev = abs(t)
        if abs(t) < 1e-17:
            break
        k += 1
        a *= (mu - (2 * k - 1) ** 2) / (k * 8.0)
    w = x - (0.5 * nu + 0.25) * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (P * math.cos(w) - Q * math.sin(w))


def _miller(nu, x):
    """J_nu(x) and J_{nu+1}(x) by backward recurrence, normalized with

    ``(x/2)**mu = sum_k (mu + 2k) Gamma(mu + k) / k! J_{mu+2k}(x)`` where
    ``mu`` is the fractional part of nu (shifted into [0, 1)).
    """
    mu = nu - math.floor(nu)
    m = int(round(nu - mu))  # nu = mu + m, m >= -1
    top = max(x, abs(nu)) + 30 + int(math.sqrt(60 * max(x, abs(nu))))
    N = int(top) + 2
    vals = [0.0] * (N + 2)
    vals[N + 1], vals[N] = 0.0, 1e-30
    for k in range(N, 0, -1):
        v = mu + k
        vals[k - 1] = (2 * v / x) * vals[k] - vals[k + 1]
        if abs(vals[k - 1]) > 1e250:
            vals = [t * 1e-250 for t in vals]
    norm = 0.0
    for k in range(0, N // 2 + 1):
        if mu == 0.0:
            w = 1.0 if k == 0 else 2.0
        else:
            w = (mu + 2 * k) * math.exp(math.lgamma(mu + k) - math.lgamma(k + 1))
        norm += w * vals[2 * k]
    scale = (0.5 * x) ** mu / norm
    if m >= 0:
        return vals[m] * scale, vals[m + 1] * scale
    # order mu - 1, one more downward step
    jm1 = (2 * mu / x) * vals[0] - vals[1]
    return jm1 * scale, vals[0] * scale


def _hankel_ok(nu, x):
    return x > 40.0 + nu * nu


def bessel_j(nu: float, x: float) -> float:
    """J_nu(x) for real order nu > -1 and x > 0."""
    if x <= 0:
        raise InvalidParameter("bessel_j needs x > 0")
    if x <= _SERIES_MAX_X:
        return _series(nu, x)[0]
    if _hankel_ok(nu, x):
        return _hankel(nu, x)
    return _miller(nu, x)[0]


def _j_and_dj(nu, x):
    if x <= _SERIES_MAX_X:
        return _series(nu, x)
    if _hankel_ok(nu, x):
        j, j1 = _hankel(nu, x), _hankel(nu + 1, x)
    else:
        j, j1 = _miller(nu, x)
    return j, (nu / x) * j - j1


def mcmahon_guess(alpha: float, i: int) -> float:
    b = (i + 0.5 * alpha - 0.25) * math.pi
    mu = 4.0 * alpha * alpha
    e = 8.0 * b
    return (
        b
        - (mu - 1) / e
        - 4 * (mu - 1) * (7 * mu - 31) / (3 * e**3)
        - 32 * (mu - 1) * (83 * mu * mu - 982 * mu + 3779) / (15 * e**5)
    )


def _sign_changes_before(alpha, x, step=0.05):
    grid = np.arange(1e-6, x, step)
    if len(grid) < 2:
        return 0
    vals = np.sign([bessel_j(alpha, t) for t in grid])
    return int(np.sum(vals[:-1] * vals[1:] < 0))


def _refine(alpha, lo, hi, x0, tol):
    flo = bessel_j(alpha, lo)
    x = x0 if lo < x0 < hi else 0.5 * (lo + hi)
    for _ in range(100):
        f, df = _j_and_dj(alpha, x)
        if f == 0.0:
            return x
        if (f > 0) == (flo > 0):
            lo, flo = x, f
        else:
            hi = x
        step = f / df if df != 0 else math.inf
        nx = x - step
        if not (lo < nx < hi):
            nx = 0.5 * (lo + hi)
        if abs(nx - x) <= tol * max(1.0, abs(x)) or hi - lo <= tol * max(1.0, abs(x)):
            return nx
        x = nx
    raise NumericalFailure("Bessel zero iteration did not converge in 100 steps")


def bessel_zero(alpha: float, i: int, tol: float = 1e-14) -> float:
    """i-th positive zero of J_alpha (McMahon start, bracketed Newton)."""
    if not alpha > -1:
        raise InvalidParameter("alpha must be > -1")
    if i < 1:
        raise InvalidParameter("zero index starts at 1")
    g = max(mcmahon_guess(alpha, i), 1e-3)
    lo, hi = max(g - math.pi / 4, 1e-6), g + math.pi / 4
    if (bessel_j(alpha, lo) > 0) != (bessel_j(alpha, hi) > 0):
        root = _refine(alpha, lo, hi, g, tol)
        if _sign_changes_before(alpha, root - 1e-3) == i - 1:
            return root
    # fall back to scanning for the i-th sign change
    step = 0.05
    x = 1e-6
    f = bessel_j(alpha, x)
    seen = 0
    while seen < i:
        nx = x + step
        nf = bessel_j(alpha, nx)
        if (nf > 0) != (f > 0):
            seen += 1
            if seen == i:
                return _refine(alpha, x, nx, 0.5 * (x + nx), tol)
        x, f = nx, nf
        if x > 1e4:
            break
    raise NumericalFailure(f"could not locate zero {i} of J_{alpha}")


# -- limit laws -----------------------------------------------------------------


@dataclass(frozen=True)
class LimitLaw:
    kind: str  # "semicircle", "laguerre_mp", "arcsine"

    def __post_init__(self):
        if self.kind not in ("semicircle", "laguerre_mp", "arcsine"):
            raise InvalidParameter(f"unknown limit law {self.kind!r}")

    @property
    def support(self):
        return (0.0, 4.0) if self.kind == "laguerre_mp" else (-1.0, 1.0)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.support
        y = np.clip(x, lo, hi)
        if self.kind == "semicircle":
            out = (np.arcsin(y) + y * np.sqrt(1 - y * y)) / math.pi + 0.5
        elif self.kind == "arcsine":
            out = np.arcsin(y) / math.pi + 0.5
        else:
            th = np.arcsin(np.sqrt(y / 4.0))
            out = 2.0 / math.pi * (th + np.sin(th) * np.cos(th))
        return np.clip(out, 0.0, 1.0)


_SCALINGS = ("hermite", "laguerre", "identity")


def scale_zeros(zeros, scaling: str) -> np.ndarray:
    z = np.asarray(list(zeros), dtype=float)
    n = len(z)
    if scaling == "hermite":
        return z / math.sqrt(2.0 * n)
    if scaling == "laguerre":
        return z / n
    if scaling in ("identity", "jacobi"):
        return z
    raise InvalidParameter(f"unknown scaling {scaling!r}")


def counting_measure_distance(zeros, scaling: str, law: LimitLaw) -> float:
    """Kolmogorov distance between the scaled zero counting measure and the law."""
    y = np.sort(scale_zeros(zeros, scaling))
    n = len(y)
    if n == 0:
        raise InvalidParameter("no zeros")
    F = law.cdf(y)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - F), np.max(F - (i - 1) / n)))


# -- local limits -----------------------------------------------------------------


@dataclass
class LimitRow:
    n: int
    index: int
    observed: float
    target: float

    def __post_init__(self):
        self.observed = float(self.observed)
        self.target = float(self.target)

    @property
    def abs_error(self) -> float:
        return abs(self.observed - self.target)


def rows_to_csv(rows: Iterable[LimitRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "observed", "target", "abs_error"])
    for r in rows:
        w.writerow([r.n, format(r.observed, ".17g"), format(r.target, ".17g"), format(r.abs_error, ".17g")])
    return buf.getvalue()


def _coeffs(comb):
    # plain coefficient tuples are accepted so that (1,) means p_n itself
    return comb.gamma if isinstance(comb, Combination) else tuple(float(v) for v in comb)


def _zeros(family, rho, comb, n):
    rep = certify_coeffs(family, rho, _coeffs(comb), n)
    if not rep.certified:
        raise PreconditionFailed(f"q_{n} not certified real-rooted", [n])
    return np.array(rep.zeros.values)


@dataclass
class CentralResult:
    rows: list
    split_ok: dict


def hermite_central_limits(rho, comb: Combination, ms: Sequence[int], ks=(0,), parity="even") -> CentralResult:
    """Scaled central zeros ``2 sqrt(m) xi_{k+m+1}`` of ``q_{2m}`` / ``q_{2m+1}``.

    Targets are ``pi/2 + k pi`` (even degree) and ``k pi`` (odd degree).
    ``split_ok`` maps degree to whether the positive/negative zero split holds.
    """
    if parity not in ("even", "odd"):
        raise InvalidParameter("parity must be 'even' or 'odd'")
    fam = RecurrenceFamily.hermite()
    rows, split = [], {}
    for m in ms:
        deg = 2 * m if parity == "even" else 2 * m + 1
        z = _zeros(fam, rho, comb, deg)
        pos, neg = int(np.sum(z > 0)), int(np.sum(z < 0))
        if parity == "even":
            split[deg] = pos == m and neg == m
        else:
            split[deg] = pos >= m and neg >= m
        for k in ks:
            idx = k + m  # 0-based position of xi_{k+m+1}
            if not 0 <= idx < deg:
                continue
            target = math.pi / 2 + k * math.pi if parity == "even" else k * math.pi
            rows.append(LimitRow(deg, k, 2.0 * math.sqrt(m) * z[idx], target))
    return CentralResult(rows, split)


def edge_zero_limits(family, rho, comb: Combination, i: int, ns: Sequence[int]) -> list:
    """Laguerre ``n xi_i(n) -> j_{i,a}^2/4``; Jacobi ``n arccos xi_{n+1-i}(n) -> j_{i,a}``."""
    if family.kind not in ("laguerre", "jacobi"):
        raise InvalidFamily("edge limits are defined for Laguerre and Jacobi only")
    j = bessel_zero(family.alpha, i)
    rows = []
    for n in ns:
        z = _zeros(family, rho, comb, n)
        if family.kind == "laguerre":
            rows.append(LimitRow(n, i, n * z[i - 1], j * j / 4.0))
        else:
            rows.append(LimitRow(n, i, n * math.acos(min(1.0, z[n - i])), j))
    return rows


def hermite_chi(comb):
    """Sign functional on odd-index gammas; predicts the side of the odd-degree extra zero."""
    g = _coeffs(comb)
    for idx in range(1, len(g), 2):
        if g[idx] != 0.0:
            i = (idx - 1) // 2
            chi = (-1) ** (i + 1) * g[idx]
            return chi, ("positive" if chi > 0 else "negative")
    return 0.0, "zero"


def observed_extra_zero(comb: Combination, n: int, rho=None) -> str:
    """Side of the unpaired zero of an odd-degree Hermite combination."""
    if n % 2 == 0:
        raise InvalidParameter("n must be odd")
    rho = rho or NormalizationSeq.pow2()
    fam = RecurrenceFamily.hermite()
    m, _ = eval_combination_arrays(fam, rho, _coeffs(comb), n, [0.0])
    if m[0] == 0.0:
        return "zero"
    z = _zeros(fam, rho, comb, n)
    pos = int(np.sum(z > 0))
    half = (n - 1) // 2
    if pos == half + 1:
        return "positive"
    if pos == half:
        return "negative"
    raise NumericalFailure(f"unexpected zero split at n = {n}: {pos} positive")
