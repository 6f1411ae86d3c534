import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from combzero.scaled import ONE, ZERO, ScaledReal, normalize_arrays, scaled_sum, to_scaled_list

finite = st.floats(min_value=-1e300, max_value=1e300, allow_nan=False).filter(lambda v: abs(v) > 1e-300 or v == 0)


def test_normal_form():
    s = ScaledReal(12.0, 3)
    assert s.mantissa == 1.5 and s.exponent == 6
    assert ScaledReal(0.0, 17) == ZERO
    assert float(ScaledReal.from_float(-0.375)) == -0.375


def test_far_outside_double_range():
    big = ScaledReal.from_log2(5000.0)
    assert float(big) == math.inf
    assert big.log2abs() == pytest.approx(5000.0)
    prod = big * ScaledReal.from_log2(-4999.0)
    assert float(prod) == pytest.approx(2.0)


def test_exact_against_integers():
    # 3**2000 is far beyond double range; compare its log2 against exact integers
    v = ONE
    for _ in range(2000):
        v = v * 3
    assert v.log2abs() == pytest.approx(math.log2(Fraction(3**2000).numerator), rel=1e-12)


@given(finite, finite)
def test_arith_matches_float(a, b):
    sa, sb = ScaledReal.from_float(a), ScaledReal.from_float(b)
    assert float(sa + sb) == pytest.approx(a + b, rel=1e-15, abs=1e-300)
    assert float(sa * ScaledReal.from_float(1.0 / 3)) == pytest.approx(a / 3, rel=1e-15, abs=1e-300)
    assert (sa - sa).is_zero()
    if b != 0:
        assert sa.ratio(sb) == pytest.approx(a / b, rel=1e-15, abs=1e-300)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_sum_and_arrays():
    terms = [ScaledReal.from_log2(1000.0), ScaledReal.from_log2(1000.0, -1.0), ScaledReal.from_float(2.0)]
    assert float(scaled_sum(terms)) == 2.0
    m, e = normalize_arrays(np.array([3.0, 0.0, -0.25]), np.array([0, 5, 2]))
    assert list(m) == [1.5, 0.0, -1.0] and list(e) == [1, 0, 0]
    assert [float(s) for s in to_scaled_list(m, e)] == [3.0, 0.0, -1.0]


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        ScaledReal.from_float(math.inf)
