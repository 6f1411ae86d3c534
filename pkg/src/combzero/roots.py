"""Zeros, interlacing, and real-rootedness certification.

Certification evaluates ``q_n`` at the zeros of the monic ``p_{n-1}`` and
counts strict sign alternations; together with the sign of the leading
coefficient at both infinities this gives a rigorous lower bound on the
number of real zeros, which is exact (and proves simplicity) when it
reaches ``n``.
"""
from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from ._backend import kernels
from .combo import Combination, combination_weights, eval_combination_arrays
from .errors import (
    DegreeTooSmall,
    EmptyInput,
    InvalidParameter,
    NotARoot,
    NumericalFailure,
    OracleOutOfRange,
    PreconditionFailed,
)
from .scaled import ScaledReal
from .sturm import MAX_DEGREE, expand_combination_exact, sturm_real_root_count

log = logging.getLogger(__name__)

TIE_SHIFT = 2.0**-40
REL_TOL = 1e-12


@dataclass(frozen=True)
class ZeroSet:
    values: tuple
    degree: int

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise InvalidParameter("zero set must be strictly increasing")
        if len(vals) > self.degree:
            raise InvalidParameter("more zeros than the degree")

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def array(self) -> np.ndarray:
        return np.array(self.values)

    def to_dict(self):
        return {"degree": self.degree, "zeros": list(self.values)}


@lru_cache(maxsize=1024)
def monic_zeros(family, n: int) -> ZeroSet:
    """Zeros of monic ``p_n``: eigenvalues of the n-by-n Jacobi matrix."""
    if n < 1:
        raise InvalidParameter("monic_zeros needs n >= 1")
    b, chat = family.arrays(n)
    off = np.sqrt(chat[1:n])
    try:
        ev = kernels.tridiag_eigvalsh(b[:n], off)
    except ArithmeticError as exc:
        raise NumericalFailure(str(exc)) from exc
    return ZeroSet(tuple(ev), n)


@lru_cache(maxsize=4096)
def zeta_max(family, s: int) -> float:
    """Largest zero modulus of monic ``p_s`` (extreme eigenvalues by bisection)."""
    if s < 1:
        raise InvalidParameter("zeta_max needs s >= 1")
    b, chat = family.arrays(s)
    lo, hi = kernels.tridiag_extreme(b[:s], np.sqrt(chat[1:s]))
    return max(abs(lo), abs(hi))


def interlaces(U, V) -> bool:
    """True iff U interlaces V: ``min U < min V`` and the merged order alternates."""
    u = sorted(float(x) for x in U)
    v = sorted(float(x) for x in V)
    if not u or not v:
        raise EmptyInput("interlacing needs two nonempty sets")
    if len(u) not in (len(v), len(v) + 1):
        return False
    merged = []
    for a, b in zip(u, v):
        merged.extend((a, b))
    if len(u) > len(v):
        merged.append(u[-1])
    for a, b in zip(merged, merged[1:]):
        if a == b:
            log.info("interlacing tie at %r treated as not interlacing", a)
            return False
        if not a < b:
            return False
    return True


@dataclass
class CertReport:
    n: int
    real_zero_count: int
    sign_change_count: int
    certified: bool
    zeros: Optional[ZeroSet]
    interlaces_pn1: bool
    method: str
    pivot_sign_changes: int = 0
    ties: list = field(default_factory=list)
    max_residual: Optional[float] = None
    hypothesis_trace: Optional[object] = None

    def to_dict(self):
        return {
            "n": self.n,
            "real_zero_count": self.real_zero_count,
            "sign_change_count": self.sign_change_count,
            "pivot_sign_changes": self.pivot_sign_changes,
            "certified": self.certified,
            "interlaces_pn1": self.interlaces_pn1,
            "method": self.method,
            "ties": list(self.ties),
            "max_residual": self.max_residual,
            "zeros": None if self.zeros is None else list(self.zeros.values),
        }

    def csv_row(self):
        z = self.zeros.values if self.zeros is not None else ()
        return [
            self.n,
            self.real_zero_count,
            self.interlaces_pn1,
            z[0] if z else "",
            z[-1] if z else "",
        ]


# -- sign-alternation machinery ---------------------------------------------


def _grow(sign_fn, start, direction, target, h):
    for k in range(2100):
        x = start + direction * h * 2.0**k
        if not math.isfinite(x):
            break
        s = sign_fn(np.array([x]))[0]
        if s == target:
            return x
    raise NumericalFailure("outer bracket did not close")


def bisect_brackets(sign_fn, a, b, sa, scale=1.0, rel_tol=REL_TOL, splits=16):
    """Refine sign-change brackets ``[a_i, b_i]`` simultaneously; ``sa`` = sign at a.

    Each pass evaluates ``splits - 1`` interior points per bracket and keeps
    the first subinterval with a sign change (bisection generalized to 16-way
    sections; only signs are used, so the bracket is never lost).
    """
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    sa = np.array(sa)
    floor = 1e-15 * scale
    frac = np.arange(1, splits) / splits
    for _ in range(200):
        w = b - a
        done = (w <= rel_tol * np.maximum(np.abs(a), np.abs(b))) | (w <= floor)
        idx = np.flatnonzero(~done)
        if len(idx) == 0:
            break
        aa, ww = a[idx], w[idx]
        pts = aa[:, None] + ww[:, None] * frac[None, :]
        sg = sign_fn(pts.ravel()).reshape(pts.shape)
        # first interior point whose sign differs from sa
        flip = sg != sa[idx, None]
        has = flip.any(axis=1)
        j = np.where(has, flip.argmax(axis=1), splits - 1)
        rows = np.arange(len(idx))
        left = np.where(j > 0, pts[rows, np.maximum(j - 1, 0)], aa)
        right = np.where(has, pts[rows, np.minimum(j, splits - 2)], b[idx])
        exact = has & (sg[rows, np.minimum(j, splits - 2)] == 0)
        left = np.where(exact, right, left)
        progress = (left > a[idx]) | (right < b[idx])
        if not progress.any():
            break
        a[idx], b[idx] = left, right
    return 0.5 * (a + b)


@dataclass
class _Alternation:
    count: int
    brackets: list
    ties: list
    unresolved: bool


def alternation_count(sign_fn, n, nodes, lead_sign=1, scale=None) -> _Alternation:
    """Lower bound on the real zeros of a degree-n polynomial from its signs at nodes."""
    nodes = np.asarray(list(nodes), dtype=float)
    if scale is None:
        scale = max(1.0, float(np.max(np.abs(nodes)))) if len(nodes) else 1.0
    ties = []
    unresolved = False
    s_inf = lead_sign
    s_minf = lead_sign if n % 2 == 0 else -lead_sign
    brackets = []
    if len(nodes) == 0:
        lo = _grow(sign_fn, 0.0, -1, s_minf, 1e-3 * scale)
        hi = _grow(sign_fn, 0.0, +1, s_inf, 1e-3 * scale)
        if s_minf != s_inf:
            brackets.append((lo, hi, s_minf))
        return _Alternation(len(brackets), brackets, ties, unresolved)
    signs = np.asarray(sign_fn(nodes)).astype(int)
    for i in np.flatnonzero(signs == 0):
        z = nodes[i]
        delta = TIE_SHIFT * (abs(z) if z != 0 else scale)
        for cand in (z + delta, z - delta):
            s = int(sign_fn(np.array([cand]))[0])
            if s != 0:
                log.warning("tie at node %r; re-tested at %r", z, cand)
                ties.append(float(z))
                nodes[i] = cand
                signs[i] = s
                break
        else:
            unresolved = True
            ties.append(float(z))
    h = 1e-3 * scale
    if signs[0] != s_minf and signs[0] != 0:
        lo = _grow(sign_fn, nodes[0], -1, s_minf, h)
        brackets.append((lo, nodes[0], s_minf))
    for i in range(len(nodes) - 1):
        if signs[i] * signs[i + 1] < 0:
            brackets.append((nodes[i], nodes[i + 1], int(signs[i])))
    if signs[-1] != s_inf and signs[-1] != 0:
        hi = _grow(sign_fn, nodes[-1], +1, s_inf, h)
        brackets.append((nodes[-1], hi, int(signs[-1])))
    return _Alternation(len(brackets), brackets, ties, unresolved)


def _scaled_eval_fn(family, rho, coeffs, n):
    w = combination_weights(rho, coeffs, n)

    def f(xs):
        return eval_combination_arrays(family, rho, coeffs, n, xs, weights=w)

    return f


def _sign_fn(eval_fn):
    def s(xs):
        m, _ = eval_fn(np.atleast_1d(xs))
        return np.sign(m).astype(int)

    return s


def scaled_residuals(eval_fn, zeros) -> np.ndarray:
    """``|f(z)| / (|f'(z)| * max(1, |z|))`` with f' from a central difference."""
    z = np.asarray(list(zeros), dtype=float)
    if len(z) == 0:
        return np.zeros(0)
    gaps = np.full(len(z), np.inf)
    if len(z) > 1:
        dz = np.diff(z)
        gaps[:-1] = dz
        gaps[1:] = np.minimum(gaps[1:], dz)
    h = np.minimum(1e-7 * np.maximum(1.0, np.abs(z)), 1e-3 * gaps)
    m0, e0 = eval_fn(z)
    mp, ep = eval_fn(z + h)
    mm, em = eval_fn(z - h)
    out = np.empty(len(z))
    for i in range(len(z)):
        f0 = ScaledReal(float(m0[i]), int(e0[i]))
        df = ScaledReal(float(mp[i]), int(ep[i])) - ScaledReal(float(mm[i]), int(em[i]))
        if df.is_zero():
            out[i] = 0.0 if f0.is_zero() else math.inf
            continue
        out[i] = abs((f0 / df).to_float()) * 2.0 * h[i] / max(1.0, abs(z[i]))
    return out


def comrade_root_bound(family, rho, coeffs, n) -> float:
    """Upper bound on the modulus of every zero of ``sum_j coeffs[j] p_{n-j}``.

    The zeros are eigenvalues of the comrade matrix (Jacobi matrix with the
    combination folded into its last row); any induced norm bounds them.
    """
    coeffs = [float(c) for c in coeffs]
    K = len(coeffs) - 1
    b, chat = family.arrays(max(n, 1))
    g = [coeffs[j] * rho.back_ratio(n, j) / coeffs[0] for j in range(K + 1)]
    # orthonormal scaling: off-diagonals become sqrt(chat)
    M = np.zeros((n, n))
    idx = np.arange(n)
    M[idx, idx] = b[:n]
    off = np.sqrt(chat[1:n])
    M[idx[:-1], idx[:-1] + 1] = off
    M[idx[:-1] + 1, idx[:-1]] = off
    logc = np.concatenate([[0.0], np.cumsum(np.log(chat[1:n])) if n > 1 else []])
    for j in range(1, K + 1):
        col = n - j
        # sigma_{n-1} / sigma_{n-j} = (chat_{n-j+1} .. chat_{n-1})^(-1/2)
        fac = math.exp(-0.5 * (logc[n - 1] - logc[n - j]))
        M[n - 1, col] -= g[j] * fac
    return float(min(np.abs(M).sum(axis=1).max(), np.abs(M).sum(axis=0).max()))


def _refined_nodes(family, n, base, bound, density=16, per_octave=16):
    pts = list(base)
    for m in (n, n + 1):
        pts.extend(monic_zeros(family, m).values)
    pts = np.unique(np.array(pts, dtype=float))
    t = np.linspace(0.0, 1.0, density + 1)[:-1]
    inner = (pts[:-1, None] + (pts[1:] - pts[:-1])[:, None] * t[None, :]).ravel()
    # geometric offsets outward from the extreme nodes up to the root bound
    h = 1e-3 * max(1.0, float(np.max(np.abs(pts))))
    reach = max(bound - min(abs(pts[0]), abs(pts[-1])), h) + bound
    k = np.arange(int(per_octave * math.log2(reach / h)) + 2)
    off = h * 2.0 ** (k / per_octave)
    outer = np.concatenate([pts[0] - off, pts[-1] + off])
    outer = outer[np.abs(outer) <= 2 * bound + h]
    return np.unique(np.concatenate([inner, pts, outer]))


def certify_coeffs(family, rho, coeffs, n, nodes=None, pivot_label="monic_n-1") -> CertReport:
    """Certify ``sum_j coeffs[j] p_{n-j}`` by sign alternation at ``nodes``.

    ``nodes`` defaults to the zeros of monic ``p_{n-1}``.  If that falls short
    of n, alternation is retried on a dense grid spanning the comrade root
    bound (still a rigorous lower bound); below n the Sturm oracle gives the
    exact count when the degree allows.
    """
    coeffs = [float(c) for c in coeffs]
    K = len(coeffs) - 1
    if n < max(K, 1):
        raise DegreeTooSmall(f"certification needs n >= max(K, 1), got n = {n}, K = {K}")
    if coeffs[0] == 0:
        raise InvalidParameter("leading coefficient must be nonzero")
    eval_fn = _scaled_eval_fn(family, rho, coeffs, n)
    sign_fn = _sign_fn(eval_fn)
    if nodes is None:
        nodes = monic_zeros(family, n - 1).values if n >= 2 else ()
    nodes = tuple(nodes)
    lead = 1 if coeffs[0] > 0 else -1
    alt = alternation_count(sign_fn, n, nodes, lead_sign=lead)
    pivot_count = alt.count
    scale = max(1.0, max((abs(v) for v in nodes), default=1.0))
    if (alt.count < n or alt.unresolved) and n >= 2:
        bound = comrade_root_bound(family, rho, coeffs, n)
        fine = alternation_count(sign_fn, n, _refined_nodes(family, n, nodes, bound), lead_sign=lead, scale=scale)
        if fine.count > alt.count or (alt.unresolved and not fine.unresolved):
            alt = fine
    if alt.count == n and not alt.unresolved:
        a, b, sa = zip(*alt.brackets)
        roots = bisect_brackets(sign_fn, a, b, sa, scale=scale)
        zs = ZeroSet(tuple(np.sort(roots)), n)
        inter = interlaces(zs.values, nodes) if nodes else True
        res = scaled_residuals(eval_fn, zs.values)
        return CertReport(
            n=n,
            real_zero_count=n,
            sign_change_count=alt.count,
            pivot_sign_changes=pivot_count,
            certified=True,
            zeros=zs,
            interlaces_pn1=inter,
            method="sign_alternation",
            ties=alt.ties,
            max_residual=float(res.max()),
        )
    if n <= MAX_DEGREE:
        exact = expand_combination_exact(family, rho, coeffs, n)
        count = sturm_real_root_count(exact)
        return CertReport(
            n=n,
            real_zero_count=count,
            sign_change_count=alt.count,
            pivot_sign_changes=pivot_count,
            certified=False,
            zeros=None,
            interlaces_pn1=False,
            method="sturm_oracle",
            ties=alt.ties,
        )
    return CertReport(
        n=n,
        real_zero_count=alt.count,
        sign_change_count=alt.count,
        pivot_sign_changes=pivot_count,
        certified=False,
        zeros=None,
        interlaces_pn1=False,
        method="sign_alternation",
        ties=alt.ties,
    )


def certify_qn(family, rho, comb: Combination, n: int) -> CertReport:
    """Real-rootedness and interlacing certificate for ``q_n``."""
    return certify_coeffs(family, rho, comb.gamma, n)


def sturm_count_qn(family, rho, coeffs, n, interval=None) -> int:
    """Exact count of distinct real zeros of ``q_n`` (degree <= 40)."""
    if n > MAX_DEGREE:
        raise OracleOutOfRange(f"degree {n} exceeds oracle limit {MAX_DEGREE}")
    return sturm_real_root_count(expand_combination_exact(family, rho, coeffs, n), interval)


# -- deflation identities (descending coefficients: P(x) = sum_j A_j x^(K-j)) --


def compose_linear(B: Sequence[float], theta: float) -> list:
    """Coefficients of ``(x - theta) P_B(x)``."""
    B = [float(v) for v in B]
    K = len(B)
    A = [B[0]]
    for j in range(1, K):
        A.append(B[j] - theta * B[j - 1])
    A.append(-theta * B[K - 1])
    return A


def deflate_linear(A: Sequence[float], theta: float, tol: float = 1e-10) -> list:
    """Coefficients of ``P_A(x) / (x - theta)`` for a root theta of ``P_A``."""
    A = [float(v) for v in A]
    K = len(A) - 1
    if K < 1 or A[0] == 0 or A[-1] == 0:
        raise InvalidParameter("deflation needs K >= 1 and A_0, A_K nonzero")
    scale = math.fsum(abs(a) * abs(theta) ** (K - j) for j, a in enumerate(A))
    value = math.fsum(a * theta ** (K - j) for j, a in enumerate(A))
    if abs(value) > tol * scale:
        raise NotARoot(f"P_A({theta}) = {value} is not zero to tolerance")
    B = [math.fsum(theta**i * A[j - i] for i in range(j + 1)) for j in range(K)]
    back = compose_linear(B, theta)
    if max(abs(x - y) for x, y in zip(back, A)) > 1e3 * tol * max(1.0, max(abs(a) for a in A)):
        raise NotARoot("deflation round trip failed")
    return B


# -- equivalence between consecutive interlacing and one-parameter real-rootedness --


@dataclass
class EnzeRow:
    n: int
    interlacing: bool
    all_real: bool
    nonreal_thetas: list
    uncertified_thetas: list
    final_claim: Optional[bool]


@dataclass
class EnzeReport:
    B: tuple
    thetas: tuple
    rows: list

    @property
    def consistent(self) -> bool:
        """No row contradicts the equivalence (interlacing but a nonreal witness)."""
        return all(not (r.interlacing and r.nonreal_thetas) for r in self.rows)

    @property
    def all_real(self) -> bool:
        return all(r.all_real for r in self.rows)

    def to_dict(self):
        return {
            "B": list(self.B),
            "thetas": list(self.thetas),
            "consistent": self.consistent,
            "all_real": self.all_real,
            "rows": [r.__dict__ for r in self.rows],
        }


def _real_count(family, rho, coeffs, n, nodes):
    rep = certify_coeffs(family, rho, coeffs, n, nodes=nodes)
    return rep


def enze_equivalence_probe(family, rho, B, theta_grid, n_range) -> EnzeReport:
    """Probe: consecutive interlacing of ``q^B`` vs real zeros of ``q^B_{n+1} - theta q^B_n``.

    For each n, when the zeros of ``q^B_{n+1}`` interlace those of ``q^B_n``
    every ``q^{A;theta}_{n+1}`` is certified by alternation at the zeros of
    ``q^B_n``; otherwise the oracle looks for nonreal witnesses.
    """
    B = tuple(float(v) for v in (B.gamma if isinstance(B, Combination) else B))
    thetas = tuple(float(t) for t in theta_grid)
    n_range = list(n_range)
    base = {}
    bad = []
    for n in sorted(set(n_range) | {m + 1 for m in n_range}):
        rep = certify_coeffs(family, rho, B, n)
        if not rep.certified:
            bad.append(n)
        base[n] = rep
    if bad:
        raise PreconditionFailed(f"q^B not certified real and simple at n = {bad}", bad)
    rows = []
    for n in n_range:
        zb_n = base[n].zeros.values
        zb_n1 = base[n + 1].zeros.values
        inter = interlaces(zb_n1, zb_n)
        nonreal, uncert = [], []
        final = None if not inter else True
        for th in thetas:
            A = compose_linear(B, th)
            if inter:
                rep = certify_coeffs(family, rho, A, n + 1, nodes=zb_n, pivot_label="q^B_n")
                if not rep.certified:
                    uncert.append(th)
                    if rep.method == "sturm_oracle" and rep.real_zero_count < n + 1:
                        nonreal.append(th)
                elif th != 0.0:
                    za = rep.zeros.values
                    final = final and (interlaces(za, zb_n1) or interlaces(zb_n1, za))
            else:
                rep = certify_coeffs(family, rho, A, n + 1)
                if not rep.certified:
                    uncert.append(th)
                    if rep.method == "sturm_oracle" and rep.real_zero_count < n + 1:
                        nonreal.append(th)
        rows.append(EnzeRow(n, inter, not uncert, nonreal, uncert, final))
    return EnzeReport(B, thetas, rows)


def certify_two_root(family, rho, theta1: float, theta2: float, n: int) -> CertReport:
    """Certificate for ``p_n - (t1 + t2) p_{n-1} + t1 t2 p_{n-2}`` (orthonormal p).

    Alternation is taken at the zeros of ``p_{n-1} - t1 p_{n-2}``, which are
    certified first.
    """
    if n < 2:
        raise DegreeTooSmall("two-root combination needs n >= 2")
    inner = certify_coeffs(family, rho, (1.0, -theta1), n - 1)
    if not inner.certified:
        raise PreconditionFailed(f"p_{n-1} - theta1 p_{n-2} not certified", [n - 1])
    coeffs = (1.0, -(theta1 + theta2), theta1 * theta2)
    rep = certify_coeffs(family, rho, coeffs, n, nodes=inner.zeros.values)
    if rep.certified:
        rep.interlaces_pn1 = interlaces(rep.zeros.values, monic_zeros(family, n - 1).values) if n >= 2 else True
    return rep
