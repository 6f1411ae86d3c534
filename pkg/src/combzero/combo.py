"""The combination ``q_n = sum_j gamma_j p_{n-j}`` and its two-term decomposition."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegreeTooSmall, HypothesisViolated, InvalidParameter
from .normalize import NormalizationSeq, normalized_recurrence
from .recurrence import RecurrenceFamily, eval_monic_arrays
from .scaled import ScaledReal


@dataclass(frozen=True)
class Combination:
    gamma: tuple

    def __post_init__(self):
        g = tuple(float(v) for v in self.gamma)
        object.__setattr__(self, "gamma", g)
        if len(g) < 2:
            raise InvalidParameter("a combination needs K >= 1 (at least two coefficients)")
        if g[0] != 1.0:
            raise InvalidParameter(f"gamma_0 must be 1, got {g[0]}")
        if g[-1] == 0.0:
            raise InvalidParameter("gamma_K must be nonzero")
        if not all(math.isfinite(v) for v in g):
            raise InvalidParameter("gamma must be finite")

    @classmethod
    def parse(cls, text: str) -> "Combination":
        try:
            vals = [float(t) for t in text.split(",") if t.strip()]
        except ValueError as exc:
            raise InvalidParameter(f"cannot parse gamma list {text!r}") from exc
        return cls(tuple(vals))

    @property
    def K(self) -> int:
        return len(self.gamma) - 1

    def Gamma(self, i: int) -> float:
        return gamma_sup(self, i)


def gamma_sup(comb, i: int) -> float:
    """``max |gamma_j|`` over ``i <= j <= K``."""
    g = comb.gamma if isinstance(comb, Combination) else tuple(comb)
    K = len(g) - 1
    if not 0 <= i <= K:
        raise IndexError(f"Gamma index {i} outside 0..{K}")
    return max(abs(v) for v in g[i:])


def combination_weights(rho, coeffs, n):
    """Per-column weights ``gamma_j rho_{n-j} / rho_n``, ascending degree."""
    K = len(coeffs) - 1
    w = np.zeros(K + 1)
    for j, g in enumerate(coeffs):
        if g != 0.0:
            w[K - j] = float(g) * rho.back_ratio(n, j)
    return w


_MIN = np.iinfo(np.int64).min


def eval_combination_arrays(family, rho, coeffs, n, xs, weights=None):
    """``q_n(x) / rho_n`` for raw coefficients (trailing zeros allowed).

    Returns ``(mantissa, exponent)`` arrays over xs.  Dividing by ``rho_n``
    keeps the sign and zeros while avoiding absolute scale.
    """
    K = len(coeffs) - 1
    if n < K:
        raise DegreeTooSmall(f"q_n needs n >= K = {K}, got n = {n}")
    if weights is None:
        weights = combination_weights(rho, [float(c) for c in coeffs], n)
    xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    mant, expo = eval_monic_arrays(family, n, xs, K)
    terms_m = mant * weights
    nz = terms_m != 0.0
    big = np.where(nz, expo, _MIN).max(axis=1)
    big[big == _MIN] = 0
    shift = np.maximum(expo - big[:, None], -2000).astype(np.int32)
    total = np.ldexp(terms_m, shift).sum(axis=1)
    fm, fe = np.frexp(total)
    nzt = fm != 0.0
    out_m = np.where(nzt, 2.0 * fm, 0.0)
    out_e = np.where(nzt, big + fe - 1, 0)
    return out_m, out_e


def eval_qn(family, rho, comb: Combination, n: int, x: float) -> ScaledReal:
    """Value of ``q_n(x)`` (absolute, including ``rho_n``)."""
    mant, expo = eval_combination_arrays(family, rho, comb.gamma, n, [x])
    return ScaledReal(float(mant[0]), int(expo[0])) * ScaledReal.from_log2(rho.log2(n))


@dataclass(frozen=True)
class ABDecomposition:
    """``q_n = A p_n + B p_{n-1}``; coefficients ascending (``A[0]`` is the constant)."""

    n: int
    A: tuple
    B: tuple

    def eval_A(self, x):
        return np.polynomial.polynomial.polyval(x, self.A)

    def eval_B(self, x):
        return np.polynomial.polynomial.polyval(x, self.B)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "A": list(self.A), "B": list(self.B)})

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(int(d["n"]), tuple(d["A"]), tuple(d["B"]))


def _decompose(family, rho, g: tuple, n: int):
    if len(g) == 1:
        return np.array([g[0]]), np.array([0.0])
    if len(g) == 2:
        return np.array([g[0]]), np.array([g[1]])
    At, Bt = _decompose(family, rho, g[1:], n - 1)
    a_n, _, _ = normalized_recurrence(family, rho, n)
    _, b_nm1, c_nm1 = normalized_recurrence(family, rho, n - 1)
    A = -(a_n / c_nm1) * Bt
    A[0] += g[0]
    # (x - b_{n-1}) / c_{n-1} * Bt
    xB = np.concatenate([[0.0], Bt]) / c_nm1
    xB[:-1] -= (b_nm1 / c_nm1) * Bt
    B = xB.copy()
    B[: len(At)] += At
    return A, B


def decompose_AB(family, rho, comb, n: int) -> ABDecomposition:
    """Polynomials ``A`` (deg <= K-2) and ``B`` (deg <= K-1) with ``q_n = A p_n + B p_{n-1}``.

    For ``K = 1`` the convention ``A = gamma_0``, ``B = gamma_1`` is used.
    ``comb`` may be a Combination or a raw coefficient sequence with
    ``gamma_0 != 0``.
    """
    g = comb.gamma if isinstance(comb, Combination) else tuple(float(v) for v in comb)
    K = len(g) - 1
    if K < 1:
        raise InvalidParameter("decomposition needs K >= 1")
    if n < K or n < 2 and K >= 2:
        raise DegreeTooSmall(f"decomposition needs n >= K = {K}")
    A, B = _decompose(family, rho, g, n)
    A = tuple(float(v) for v in A[: max(K - 1, 1)])
    B = tuple(float(v) for v in B[:K])
    return ABDecomposition(n, A, B)


def bound_AB(comb, tau: float, x: float):
    """Explicit bounds on ``|A(x)|`` and ``|B(x)|`` given the window value of tau."""
    if tau > 0.5:
        raise HypothesisViolated(f"tau = {tau} exceeds 1/2")
    g = comb.gamma if isinstance(comb, Combination) else tuple(comb)
    K = len(g) - 1
    ax = abs(x)
    G0, G1 = gamma_sup(g, 0), gamma_sup(g, 1)
    bA = 2**K * G0 * (1.0 + math.fsum(tau ** (j + 1) * ax**j for j in range(1, K - 1)))
    bB = 2**K * G1 * math.fsum(tau**j * ax**j for j in range(0, K))
    return bA, bB
