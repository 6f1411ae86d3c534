import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from combzero.combo import (
    ABDecomposition,
    Combination,
    bound_AB,
    decompose_AB,
    eval_combination_arrays,
    eval_qn,
    gamma_sup,
)
from combzero.errors import DegreeTooSmall, HypothesisViolated, InvalidParameter
from combzero.normalize import NormalizationSeq
from combzero.recurrence import RecurrenceFamily, eval_normalized_tail


def _direct_qn(fam, rho, gamma, n, x):
    tail = [float(v) for v in eval_normalized_tail(fam, rho, n, x, len(gamma) - 1)]
    return sum(g * tail[-1 - j] for j, g in enumerate(gamma))


def test_validation():
    with pytest.raises(InvalidParameter):
        Combination((2.0, 1.0))
    with pytest.raises(InvalidParameter):
        Combination((1.0, 0.0))
    with pytest.raises(InvalidParameter):
        Combination((1.0,))
    assert Combination.parse("1, -2,3").gamma == (1.0, -2.0, 3.0)
    with pytest.raises(InvalidParameter):
        Combination.parse("1,x")


def test_gamma_sup():
    c = Combination((1, -4, 2, -0.5))
    assert gamma_sup(c, 0) == 4 and gamma_sup(c, 2) == 2 and c.Gamma(3) == 0.5
    with pytest.raises(IndexError):
        gamma_sup(c, 4)


def test_eval_matches_direct_sum():
    fam = RecurrenceFamily.jacobi(0.5, 0.25)
    rho = NormalizationSeq.factorial()
    comb = Combination((1, 2, -3))
    for x in (-0.8, 0.0, 0.6):
        got = float(eval_qn(fam, rho, comb, 9, x))
        assert got == pytest.approx(_direct_qn(fam, rho, comb.gamma, 9, x), rel=1e-12)
    with pytest.raises(DegreeTooSmall):
        eval_combination_arrays(fam, rho, comb.gamma, 1, [0.0])


def test_laguerre_small_case():
    fam = RecurrenceFamily.laguerre(0.0)
    comb = Combination((1, 4))
    assert float(eval_qn(fam, NormalizationSeq.ones(), comb, 1, -3.0)) == 0.0
    assert float(eval_qn(fam, NormalizationSeq.ones(), comb, 2, 2**0.5)) == pytest.approx(0.0, abs=1e-12)


families = st.sampled_from(
    [RecurrenceFamily.hermite(), RecurrenceFamily.laguerre(0.5), RecurrenceFamily.jacobi(0.3, -0.4)]
)
rhos = st.sampled_from([NormalizationSeq.ones(), NormalizationSeq.pow2(), NormalizationSeq.factorial()])
gammas = st.lists(st.integers(-5, 5), min_size=1, max_size=4).filter(lambda g: g[-1] != 0).map(
    lambda g: (1.0,) + tuple(float(v) for v in g)
)


@settings(max_examples=60, deadline=None)
@given(families, rhos, gammas, st.integers(0, 8), st.floats(-0.9, 0.9))
def test_decomposition_identity(fam, rho, gamma, extra, x):
    K = len(gamma) - 1
    n = max(K, 2) + extra
    d = decompose_AB(fam, rho, gamma, n)
    assert len(d.A) <= max(K - 1, 1) and len(d.B) <= K
    p_nm1, p_n = (float(v) for v in eval_normalized_tail(fam, rho, n, x, 1))
    lhs = _direct_qn(fam, rho, gamma, n, x)
    rhs = d.eval_A(x) * p_n + d.eval_B(x) * p_nm1
    scale = sum(abs(g) * abs(v) for g, v in zip(gamma, reversed([float(t) for t in eval_normalized_tail(fam, rho, n, x, K)])))
    assert abs(lhs - rhs) <= 1e-9 * max(scale, 1e-300)


def test_k1_convention_and_json():
    d = decompose_AB(RecurrenceFamily.hermite(), NormalizationSeq.ones(), Combination((1, 3)), 5)
    assert d.A == (1.0,) and d.B == (3.0,)
    back = ABDecomposition.from_json(d.to_json())
    assert back == d


def test_bound_AB():
    bA, bB = bound_AB(Combination((1, 2, 1)), 0.1, 3.0)
    assert bA == pytest.approx(4 * 2 * 1.0)
    assert bB == pytest.approx(4 * 2 * (1 + 0.3))
    with pytest.raises(HypothesisViolated):
        bound_AB(Combination((1, 1)), 0.6, 0.0)
