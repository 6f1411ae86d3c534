import math

from combzero.counterexamples import laguerre_interlacing, nonorthogonal_xn, xn_combination_coeffs
from combzero.normalize import NormalizationSeq


def test_laguerre_interlacing():
    r = laguerre_interlacing()
    assert abs(r.q1_zeros[0] + 3) < 1e-10
    assert all(abs(abs(z) - math.sqrt(2)) < 1e-10 for z in r.q2_zeros)
    assert r.interlaces is False


def test_xn_coefficients():
    c = xn_combination_coeffs((1, 0, 1), 4, NormalizationSeq.pow2())
    assert c == [0, 0, 0.25, 0, 1]


def test_xn_signs():
    assert all(r.nonreal == 2 and r.predicted_nonreal for r in nonorthogonal_xn((1, 0, 1)))
    assert all(r.nonreal == 0 and not r.predicted_nonreal for r in nonorthogonal_xn((1, 0, -1)))
    assert all(r.nonreal == 2 for r in nonorthogonal_xn((1, 0, 3), range(2, 12), NormalizationSeq.factorial()))
