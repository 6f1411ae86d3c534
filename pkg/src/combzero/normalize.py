"""Normalization sequences ``rho_n`` and the constructive sequence that forces real zeros."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import InvalidParameter, InvalidThetaSequence, NormalizationTooShort
from .recurrence import RecurrenceFamily

RULES = ("ones", "pow2", "factorial", "geometric", "constructed", "orthonormal")


@dataclass(frozen=True)
class NormalizationSeq:
    """Positive sequence with ``rho_0 = 1``.

    Only ratios and ``log2 rho_n`` are ever materialized, so ``n!`` and
    ``2**n`` stay representable at any degree.  ``geometric`` means
    ``rho_{n-1} / rho_n = ratio``; ``constructed`` stores the steps
    ``rho_n / rho_{n-1}`` for ``n = 1..N``.
    """

    rule: str
    ratio: float = 1.0
    family: Optional[RecurrenceFamily] = None
    steps: tuple = ()
    _log2: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if self.rule not in RULES:
            raise InvalidParameter(f"unknown normalization rule {self.rule!r}")
        if self.rule == "geometric" and not self.ratio > 0:
            raise InvalidParameter("geometric ratio must be positive")
        if self.rule == "orthonormal" and self.family is None:
            raise InvalidParameter("orthonormal rule needs a family")
        if self.rule == "constructed":
            if any(not s > 0 for s in self.steps):
                raise InvalidParameter("constructed steps must be positive")
            logs = [0.0]
            for s in self.steps:
                logs.append(logs[-1] + math.log2(s))
            object.__setattr__(self, "_log2", tuple(logs))

    @classmethod
    def ones(cls):
        return cls("ones")

    @classmethod
    def pow2(cls):
        return cls("pow2")

    @classmethod
    def factorial(cls):
        return cls("factorial")

    @classmethod
    def geometric(cls, ratio):
        return cls("geometric", ratio=float(ratio))

    @classmethod
    def orthonormal(cls, family):
        return cls("orthonormal", family=family)

    @classmethod
    def constructed(cls, steps: Sequence[float]):
        return cls("constructed", steps=tuple(float(s) for s in steps))

    @property
    def label(self) -> str:
        if self.rule == "geometric":
            return f"geometric:{self.ratio:g}"
        return self.rule

    @property
    def max_index(self) -> Optional[int]:
        return len(self.steps) if self.rule == "constructed" else None

    def _check(self, n):
        if n < 0:
            raise InvalidParameter("rho index must be nonnegative")
        if self.rule == "constructed" and n > len(self.steps):
            raise NormalizationTooShort(f"rho known up to {len(self.steps)}, need {n}")

    def step(self, n: int) -> float:
        """``rho_n / rho_{n-1}`` for ``n >= 1``."""
        if n < 1:
            raise InvalidParameter("step needs n >= 1")
        self._check(n)
        r = self.rule
        if r == "ones":
            return 1.0
        if r == "pow2":
            return 2.0
        if r == "factorial":
            return float(n)
        if r == "geometric":
            return 1.0 / self.ratio
        if r == "orthonormal":
            return 1.0 / math.sqrt(self.family.chat(n))
        return self.steps[n - 1]

    def log2(self, n: int) -> float:
        self._check(n)
        r = self.rule
        if r == "ones":
            return 0.0
        if r == "pow2":
            return float(n)
        if r == "factorial":
            return math.lgamma(n + 1) / math.log(2.0)
        if r == "geometric":
            return -n * math.log2(self.ratio)
        if r == "orthonormal":
            return -0.5 * math.fsum(math.log2(self.family.chat(k)) for k in range(1, n + 1))
        return self._log2[n]

    def back_ratio(self, n: int, j: int) -> float:
        """``rho_{n-j} / rho_n`` as a product of ``j`` steps."""
        self._check(n)
        out = 1.0
        for k in range(n - j + 1, n + 1):
            out /= self.step(k)
        return out

    def exact_back_ratio(self, n: int, j: int) -> Fraction:
        """Rational ``rho_{n-j} / rho_n``; exact for ones/pow2/factorial/geometric."""
        self._check(n)
        r = self.rule
        if r == "ones":
            return Fraction(1)
        if r == "pow2":
            return Fraction(1, 2**j)
        if r == "factorial":
            out = Fraction(1)
            for k in range(n - j + 1, n + 1):
                out /= k
            return out
        if r == "geometric":
            return Fraction(self.ratio) ** j
        return Fraction(self.back_ratio(n, j))

    def values(self, n: int) -> np.ndarray:
        """``rho_0 .. rho_n`` as floats (may overflow to inf for fast growth)."""
        return np.array([2.0 ** self.log2(k) if self.log2(k) < 1023 else math.inf for k in range(n + 1)])


def normalized_recurrence(family: RecurrenceFamily, rho: NormalizationSeq, n: int):
    """``(a_n, b_n, c_n)`` of ``x p_n = a_{n+1} p_{n+1} + b_n p_n + c_n p_{n-1}``."""
    if n < 1:
        raise InvalidParameter("normalized recurrence needs n >= 1")
    st = rho.step(n)
    return 1.0 / st, family.b(n), st * family.chat(n)


@dataclass
class CopTrace:
    """Per-index record of the constructive normalization.

    Arrays are indexed by ``n``; entries that the construction does not define
    (``d_0``, ``d_1``, ``e_0``, ``e_1``) are ``nan``.  ``rho_ratio[n]`` is
    ``rho_n / rho_{n-1}``.
    """

    theta: np.ndarray
    window_min: np.ndarray
    tau: np.ndarray
    e: np.ndarray
    d: np.ndarray
    rho_ratio: np.ndarray
    zeta_max: np.ndarray

    @property
    def N(self) -> int:
        return len(self.rho_ratio) - 1

    def to_csv(self, fh=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "theta", "tau", "e", "d", "rho_ratio"])
        for n in range(self.N + 1):
            w.writerow(
                [n]
                + [_fmt(v) for v in (self.theta[n], self.tau[n], self.e[n], self.d[n], self.rho_ratio[n])]
            )
        text = buf.getvalue()
        if fh is not None:
            fh.write(text)
        return text


def _fmt(v):
    return "" if v is None or (isinstance(v, float) and math.isnan(v)) else format(float(v), ".17g")


def default_theta(n: int) -> float:
    return min(0.5, 1.0 / (n + 1))


def _theta_values(theta, upto):
    if theta is None:
        theta = default_theta
    if callable(theta):
        vals = [float(theta(n)) for n in range(upto + 1)]
    else:
        vals = [float(v) for v in theta]
        if len(vals) < upto + 1:
            raise InvalidThetaSequence(f"theta needs {upto + 1} entries, got {len(vals)}")
        vals = vals[: upto + 1]
    for n, v in enumerate(vals):
        if not (0 < v <= 0.5):
            raise InvalidThetaSequence(f"theta_{n} = {v} outside (0, 1/2]")
        if n and v > vals[n - 1]:
            raise InvalidThetaSequence(f"theta not decreasing at n = {n}")
    return vals


def construct_rho_cop(family: RecurrenceFamily, theta: Callable | Sequence | None, N: int):
    """Normalization making every fixed combination real-rooted for large n.

    Runs ``tau_n = min(theta_n, tau_{n-1}, 1/varsigma_s, n-1 <= s <= 2n)``,
    ``d_n = min(chat_{n-1} tau_n, e_n, 9/10)`` and ``rho_n = rho_{n-1} / d_{n+1}``
    for ``n = 1..N``.  Returns ``(NormalizationSeq, CopTrace)``.
    """
    from .roots import zeta_max

    if N < 1:
        raise InvalidParameter("N must be >= 1")
    top = N + 1
    th = _theta_values(theta, top)
    zmax = np.full(2 * top + 1, np.nan)
    for s in range(1, 2 * top + 1):
        zmax[s] = zeta_max(family, s)
    tau = np.full(top + 1, np.nan)
    wmin = np.full(top + 1, np.nan)
    e = np.full(top + 1, np.nan)
    d = np.full(top + 1, np.nan)
    tau[0] = 0.5
    for n in range(1, top + 1):
        inv = [1.0 / zmax[s] if zmax[s] > 0 else math.inf for s in range(max(n - 1, 1), 2 * n + 1)]
        wmin[n] = min(inv)
        tau[n] = min(th[n], tau[n - 1], wmin[n])
        if n >= 2:
            bb = abs(family.b(n - 1))
            cc = abs(family.chat(n - 1))
            e[n] = cc * tau[n] / bb if bb != 0 else 1.0
            d[n] = min(cc * tau[n], e[n], 0.9)
    ratio = np.full(N + 1, np.nan)
    ratio[1:] = 1.0 / d[2 : N + 2]
    rho = NormalizationSeq.constructed(ratio[1:])
    trace = CopTrace(
        theta=np.array(th),
        window_min=wmin,
        tau=tau,
        e=e,
        d=d,
        rho_ratio=ratio,
        zeta_max=zmax,
    )
    return rho, trace


@dataclass
class HypothesisTrace:
    """Per-n outcome of the two threshold hypotheses."""

    n: list
    lhs: list
    tau: list
    zeta_window: list
    coef_ok: list
    zeros_ok: list

    def all_ok(self) -> bool:
        return all(self.coef_ok) and all(self.zeros_ok)

    def failures(self) -> list:
        return [n for n, a, b in zip(self.n, self.coef_ok, self.zeros_ok) if not (a and b)]


def hypothesis_lhs(family, rho, n):
    """Largest of the three coefficient ratios bounded by ``tau_n``."""
    r_nm2_n = rho.back_ratio(n, 2)  # rho_{n-2} / rho_n
    r_nm2_nm1 = rho.back_ratio(n - 1, 1)  # rho_{n-2} / rho_{n-1}
    cc = family.chat(n - 1)
    return max(
        abs(r_nm2_n / cc),
        abs(r_nm2_nm1 * family.b(n - 1) / cc),
        abs(r_nm2_nm1 / cc),
    )


def verify_c3t2_c3t3(family, rho, tau, c, n_range, rtol: float = 1e-12) -> HypothesisTrace:
    """Check the coefficient bound and the zero-window bound for each n.

    ``tau`` is a callable or an indexable sequence.  Failures are reported in
    the trace, never raised.  The constructed normalization meets both bounds
    with equality, so comparisons allow ``rtol`` of rounding slack.
    """
    from .roots import zeta_max

    tau_at = tau if callable(tau) else (lambda k: tau[k])
    out = HypothesisTrace([], [], [], [], [], [])
    for n in n_range:
        if n < 2:
            raise InvalidParameter("hypotheses are stated for n >= 2")
        t = float(tau_at(n))
        lhs = hypothesis_lhs(family, rho, n)
        window = max(zeta_max(family, s) for s in range(n - 1, 2 * n + 1) if s >= 1)
        out.n.append(n)
        out.lhs.append(lhs)
        out.tau.append(t)
        out.zeta_window.append(window)
        out.coef_ok.append(bool(lhs <= t * (1 + rtol)))
        out.zeros_ok.append(bool(window <= (c / t) * (1 + rtol)))
    return out
