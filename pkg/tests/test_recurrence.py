import json
import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import special

from combzero.errors import InvalidParameter, NonOrthogonalFamily
from combzero.recurrence import (
    RecurrenceFamily,
    eval_monic,
    eval_monic_arrays,
    eval_normalized_tail,
    monic_coeffs,
)
from combzero.normalize import NormalizationSeq


def _monic_scipy(fam, n, x):
    if fam.kind == "hermite":
        return special.eval_hermite(n, x) / 2.0**n
    if fam.kind == "prob_hermite":
        return special.eval_hermitenorm(n, x)
    if fam.kind == "laguerre":
        return special.eval_genlaguerre(n, fam.alpha, x) * (-1) ** n * math.factorial(n)
    if n == 0:
        return 1.0
    a, b = fam.alpha, fam.beta
    lead = math.exp(math.lgamma(2 * n + a + b + 1) - n * math.log(2) - math.lgamma(n + 1) - math.lgamma(n + a + b + 1))
    return special.eval_jacobi(n, a, b, x) / lead


@pytest.mark.parametrize("n", [0, 1, 2, 5, 12])
def test_monic_values_match_scipy(family, n):
    xs = [-0.7, 0.1, 0.9] if family.kind == "jacobi" else [-1.3, 0.4, 2.5]
    for x in xs:
        assert float(eval_monic(family, n, x)) == pytest.approx(_monic_scipy(family, n, x), rel=1e-10, abs=1e-13)


def test_known_coefficients():
    assert monic_coeffs(RecurrenceFamily.hermite(), 4) == (0.0, 2.0)
    assert monic_coeffs(RecurrenceFamily.laguerre(0.5), 3) == (7.5, 10.5)
    assert RecurrenceFamily.jacobi(0, 0).chat(1) == pytest.approx(1 / 3)
    assert RecurrenceFamily.jacobi(0.3, -0.4).b(0) == pytest.approx(-0.7 / 1.9)
    # exact values agree with floating ones
    j = RecurrenceFamily.jacobi(0.25, 0.5)
    for n in range(1, 6):
        assert float(j.chat(n, exact=True)) == pytest.approx(j.chat(n))
        assert isinstance(j.chat(n, exact=True), Fraction)


def test_jacobi_sum_minus_one_stays_finite():
    j = RecurrenceFamily.jacobi(-0.5, -0.5)
    assert j.chat(1) == pytest.approx(0.5)
    assert j.b(0) == 0.0


def test_high_degree_does_not_overflow():
    h = RecurrenceFamily.hermite()
    v = eval_monic(h, 600, 40.0)  # beyond the largest zero, about 34.6
    assert v.sign == 1 and v.log2abs() > 1024
    mant, expo = eval_monic_arrays(h, 600, [30.0, -30.0], 2)
    assert mant.shape == (2, 3)
    assert np.all(np.abs(mant[mant != 0]) >= 1.0)


def test_normalized_tail_scales_by_rho():
    h = RecurrenceFamily.hermite()
    tail = eval_normalized_tail(h, NormalizationSeq.pow2(), 5, 0.3, 2)
    for k, v in zip(range(3, 6), tail):
        assert float(v) == pytest.approx(special.eval_hermite(k, 0.3))


def test_invalid_parameters():
    with pytest.raises(InvalidParameter):
        RecurrenceFamily.laguerre(-1.0)
    with pytest.raises(InvalidParameter):
        RecurrenceFamily.jacobi(0.0, -2.0)
    with pytest.raises(InvalidParameter):
        RecurrenceFamily.hermite().chat(0)


def test_custom_family(tmp_path):
    fam = RecurrenceFamily.custom([0.0, 0.0, 0.0], [0.5, 1.0], support=(-5, 5))
    assert fam.chat(2) == 1.0
    with pytest.raises(InvalidParameter):
        fam.chat(3)
    bad = RecurrenceFamily.custom([0.0, 0.0], [0.5, -1.0])
    with pytest.raises(NonOrthogonalFamily):
        bad.chat(2)
    p = tmp_path / "fam.json"
    p.write_text(json.dumps({"b": [0, 0, 0], "chat": [0.5, 1.0]}))
    assert RecurrenceFamily.from_json(str(p)).chat(1) == 0.5
    assert RecurrenceFamily.from_json({"b": [1], "chat": []}).b(0) == 1.0
