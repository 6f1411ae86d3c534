"""Two small examples showing the hypotheses of the main results are needed."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combo import Combination
from .errors import InvalidParameter
from .normalize import NormalizationSeq
from .recurrence import RecurrenceFamily
from .roots import certify_qn, interlaces
from .sturm import MAX_DEGREE, nonreal_root_count


@dataclass
class LaguerreInterlacing:
    q1_zeros: list
    q2_zeros: list
    interlaces: bool

    def to_dict(self):
        return {"q1_zeros": self.q1_zeros, "q2_zeros": self.q2_zeros, "interlaces": self.interlaces}


def laguerre_interlacing(gamma=(1.0, 4.0)) -> LaguerreInterlacing:
    """Monic Laguerre(0) with ``q = p_n + 4 p_{n-1}``: q_2 zeros fail to interlace q_1 zeros."""
    fam = RecurrenceFamily.laguerre(0.0)
    rho = NormalizationSeq.ones()
    comb = Combination(tuple(gamma))
    z1 = certify_qn(fam, rho, comb, 1).zeros.values
    z2 = certify_qn(fam, rho, comb, 2).zeros.values
    return LaguerreInterlacing(list(z1), list(z2), interlaces(z2, z1))


def xn_combination_coeffs(gamma, n: int, rho: NormalizationSeq) -> list:
    """Exact ascending coefficients of ``sum_j gamma_j p_{n-j} / rho_n`` for ``p_k = rho_k x^k``."""
    g = [Fraction(v) for v in gamma]
    if n < len(g) - 1:
        raise InvalidParameter(f"n must be >= K = {len(g) - 1}")
    out = [Fraction(0)] * (n + 1)
    for j, gj in enumerate(g):
        out[n - j] += gj * rho.exact_back_ratio(n, j)
    return out


@dataclass
class XnRow:
    n: int
    nonreal: int
    predicted_nonreal: bool

    def to_dict(self):
        return dict(self.__dict__)


def nonorthogonal_xn(gamma=(1.0, 0.0, 1.0), ns=range(2, 21), rho=None) -> list:
    """Nonreal root counts of the monomial combination, exact via Sturm.

    For ``gamma = (1, 0, g2)`` the combination is ``x^{n-2}(rho_n x^2 + g2 rho_{n-2})``,
    which has two nonreal roots exactly when ``g2 rho_n rho_{n-2} > 0``.
    """
    rho = rho or NormalizationSeq.ones()
    rows = []
    for n in ns:
        if n > MAX_DEGREE:
            raise InvalidParameter(f"degree {n} exceeds oracle limit {MAX_DEGREE}")
        c = xn_combination_coeffs(gamma, n, rho)
        pred = len(gamma) == 3 and gamma[1] == 0 and gamma[2] * float(rho.exact_back_ratio(n, 2)) > 0
        rows.append(XnRow(n, nonreal_root_count(c), bool(pred)))
    return rows
