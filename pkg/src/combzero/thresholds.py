"""Indices beyond which a combination is guaranteed real-rooted.

The general threshold scans a tau sequence; the family thresholds are
closed forms in K and the gamma's.  All of them are sufficient conditions
only: certification below them may well succeed.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .combo import Combination, gamma_sup
from .errors import HypothesisViolated, InvalidParameter, InvalidTau
from .normalize import NormalizationSeq
from .recurrence import RecurrenceFamily
from .roots import certify_qn
from .combo import eval_combination_arrays

log = logging.getLogger(__name__)


def _gamma2(comb: Combination) -> float:
    return gamma_sup(comb, 2) if comb.K >= 2 else 0.0


def _geom_sum(r: float, terms: int) -> float:
    return math.fsum(r**j for j in range(terms))


def _ceil(v: float) -> int:
    # threshold conditions are "n >= v"; integral v stays as is
    r = round(v)
    if abs(v - r) <= 1e-9 * max(1.0, abs(v)):
        return int(r)
    return int(math.ceil(v))


@dataclass
class ThresholdInput:
    family: RecurrenceFamily
    rho: NormalizationSeq
    comb: Combination
    tau: Union[Callable[[int], float], Sequence[float]]
    c: float
    n1: int

    def __post_init__(self):
        if not self.c > 0:
            raise InvalidParameter("c must be positive")
        if self.n1 < 1:
            raise InvalidParameter("n_1 must be a positive integer")


def ratio_bound(comb: Combination, c: float) -> float:
    """Right-hand side the tau sequence has to drop below."""
    K = comb.K
    g2 = _gamma2(comb)
    if K < 2 or g2 == 0.0:
        return 0.5
    return min(0.5, 1.0 / (2 ** (K - 1) * g2 * _geom_sum(c, K - 1)))


def n0_general(inp: ThresholdInput, n_max: int = 10**6) -> int:
    """First ``n >= max(2K, n_1)`` with ``tau_n`` below the combination bound."""
    K = inp.comb.K
    start = max(2 * K, inp.n1)
    if K < 2:
        return start
    bound = ratio_bound(inp.comb, inp.c)
    if callable(inp.tau):
        tau_at, first, last = inp.tau, inp.n1, n_max
    else:
        seq = inp.tau
        tau_at, first, last = (lambda k: seq[k]), 0, len(seq) - 1
    prev = None
    for n in range(first, last + 1):
        t = float(tau_at(n))
        if not t > 0:
            raise InvalidTau(f"tau_{n} = {t} is not positive")
        if prev is not None and t > prev:
            raise InvalidTau(f"tau not decreasing at n = {n}")
        prev = t
        if n >= start and t < bound:
            return n
    raise InvalidTau(f"tau never drops below {bound:.3g} up to n = {last}")


def n0_hermite(nu: float, comb: Combination) -> int:
    """Hermite threshold for normalizations with ``2 rho_{n-1} / rho_n <= n**nu``."""
    if not 0 <= nu <= 0.25:
        raise InvalidParameter(f"nu must lie in [0, 1/4], got {nu}")
    K = comb.K
    if K < 2:
        raise InvalidParameter("Hermite threshold is stated for K >= 2")
    c = 6.0**nu
    s = _geom_sum(c, K - 1)
    return _ceil(max(c**2 * s**2 * 4.0 ** (K - 2) * _gamma2(comb) ** 2, 2 * K))


def n0_prob_hermite(comb: Combination) -> int:
    K = comb.K
    if K < 2:
        raise InvalidParameter("threshold is stated for K >= 2")
    return _ceil(max(0.5 * (K - 1) ** 2 * 4.0 ** (K - 2) * _gamma2(comb) ** 2, 2 * K, 11))


def n0_laguerre(alpha: float, nu: float, comb: Combination) -> int:
    """Laguerre threshold for normalizations with ``rho_{n-1} / rho_n <= nu``."""
    if not alpha > -1:
        raise InvalidParameter("alpha must be > -1")
    if not nu > 0:
        raise InvalidParameter("nu must be positive")
    K = comb.K
    c = 23.0 * nu
    first = (c * 2.0 ** (K - 1) * _geom_sum(c, K - 1) * _gamma2(comb) - 2 * abs(alpha)) / 8.0
    return _ceil(max(first, (nu - alpha + 1) / 2.0, alpha + 9, 2 * K))


def n0_laguerre_monic(alpha: float, comb: Combination) -> int:
    """Simplified closed form for the monic family (``rho_n = 1``)."""
    K = comb.K
    first = ((23.0 / 22.0) * 46.0 ** (K - 1) * _gamma2(comb) - 2 * abs(alpha)) / 8.0
    return _ceil(max(first, alpha + 9, 2 * K))


def jacobi_level(alpha: float, beta: float, comb: Combination) -> float:
    K = comb.K
    return max(18.0 * (K - 1) * 2.0 ** (K - 1) * _gamma2(comb), alpha + beta + 8, 18.0, 2.0 * K)


def n0_jacobi(alpha, beta, comb: Combination, rho: NormalizationSeq, n_max: int = 5000) -> int:
    """First n0 with ``rho_{n-1} / rho_{n-2} >= level`` for every n >= n0.

    The hypothesis ``rho_{n-1} / rho_n <= 1/18`` for ``n >= 18`` is checked up
    to ``n_max`` (the tail to infinity is taken on trust for non-factorial rules).
    """
    if not (alpha > -1 and beta > -1):
        raise InvalidParameter("alpha, beta must be > -1")
    level = jacobi_level(alpha, beta, comb)
    if rho.rule == "factorial":
        # rho_{n-1} / rho_{n-2} = n - 1
        return _ceil(level) + 1
    top = n_max if rho.max_index is None else rho.max_index
    for n in range(18, top + 1):
        if rho.step(n) < 18.0 * (1 - 1e-12):
            raise HypothesisViolated(f"rho_{n-1} / rho_{n} > 1/18")
    ratios = np.array([rho.step(n - 1) for n in range(2, top + 1)])
    if np.any(np.diff(ratios) < 0):
        log.info("rho ratios are not monotone; requiring the level for all n >= n0")
    ok = ratios >= level
    if not ok[-1]:
        raise HypothesisViolated(f"ratio never reaches {level} up to n = {top}")
    bad = np.flatnonzero(~ok)
    first = 0 if len(bad) == 0 else bad[-1] + 1
    return int(first + 2)


@dataclass
class E2ESummary:
    family: str
    rho_rule: str
    gamma: tuple
    n0: int
    span: int
    all_pass: bool
    failures: list = field(default_factory=list)
    reports: list = field(default_factory=list, repr=False)

    def to_dict(self):
        return {
            "family": self.family,
            "rho_rule": self.rho_rule,
            "gamma": list(self.gamma),
            "n0": self.n0,
            "span": self.span,
            "all_pass": self.all_pass,
            "failures": self.failures,
        }


def end_to_end_certify(family, rho, comb: Combination, n0: int, span: int) -> E2ESummary:
    """Certify every n in ``[n0, n0 + span]`` and collect failures with their reasons."""
    failures = []
    reports = []
    for n in range(n0, n0 + span + 1):
        rep = certify_qn(family, rho, comb, n)
        reports.append(rep)
        why = []
        if not rep.certified:
            why.append(f"only {rep.real_zero_count} real zeros")
        elif not rep.interlaces_pn1:
            why.append("zeros do not interlace p_{n-1}")
        if rep.certified and family.kind == "laguerre":
            m, _ = eval_combination_arrays(family, rho, comb.gamma, n, [0.0])
            if np.sign(m[0]) != (-1) ** n:
                why.append("sign q_n(0) != (-1)^n")
            if rep.zeros[0] <= 0:
                why.append("nonpositive zero")
        if rep.certified and family.kind == "jacobi":
            if not (-1 < rep.zeros[0] and rep.zeros[-1] < 1):
                why.append("zero outside (-1, 1)")
        if why:
            failures.append({"n": n, "reasons": why, "report": rep.to_dict()})
    return E2ESummary(
        family=family.label,
        rho_rule=rho.label,
        gamma=comb.gamma,
        n0=n0,
        span=span,
        all_pass=not failures,
        failures=failures,
        reports=reports,
    )
