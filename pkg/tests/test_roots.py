import logging
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from combzero.combo import Combination
from combzero.errors import DegreeTooSmall, EmptyInput, NotARoot, PreconditionFailed
from combzero.normalize import NormalizationSeq
from combzero.recurrence import RecurrenceFamily, eval_monic_arrays
from combzero.roots import (
    ZeroSet,
    alternation_count,
    certify_coeffs,
    certify_qn,
    certify_two_root,
    compose_linear,
    deflate_linear,
    enze_equivalence_probe,
    interlaces,
    monic_zeros,
    sturm_count_qn,
    zeta_max,
)


def _scipy_zeros(fam, n):
    if fam.kind == "hermite":
        return special.roots_hermite(n)[0]
    if fam.kind == "prob_hermite":
        return special.roots_hermitenorm(n)[0]
    if fam.kind == "laguerre":
        return special.roots_genlaguerre(n, fam.alpha)[0]
    return special.roots_jacobi(n, fam.alpha, fam.beta)[0]


@pytest.mark.parametrize("n", [1, 2, 7, 30, 90])
def test_monic_zeros_match_scipy(family, n):
    z = monic_zeros(family, n).values
    ref = np.sort(_scipy_zeros(family, n))
    assert np.allclose(z, ref, rtol=1e-11, atol=1e-12)
    assert zeta_max(family, n) == pytest.approx(np.max(np.abs(ref)), rel=1e-11)


def test_classical_interlacing_and_residuals(family):
    for n in range(2, 201):
        z = monic_zeros(family, n).values
        assert interlaces(z, monic_zeros(family, n - 1).values), n
        if n % 20 == 0:
            m, e = eval_monic_arrays(family, n, z, 1)
            # |p_n(z)| relative to the local derivative scale n |p_{n-1}(z)|
            rel = np.abs(np.ldexp(m[:, 1], (e[:, 1] - e[:, 0]).astype(int))) / (n * np.abs(m[:, 0]))
            assert np.max(rel) <= 1e-8


def test_zeroset_and_interlacing_rules(caplog):
    with pytest.raises(Exception):
        ZeroSet((1.0, 0.5), 2)
    assert interlaces([0, 2], [1])
    assert not interlaces([1], [0, 2])
    assert interlaces([-1, 1], [0, 3]) is True
    assert not interlaces([0, 2], [0.5, 1.5])
    with caplog.at_level(logging.INFO):
        assert not interlaces([0, 1], [0, 2])
    with pytest.raises(EmptyInput):
        interlaces([], [1])


def test_alternation_tie_is_perturbed(caplog):
    # p(x) = x^2 - 1 evaluated at its own zero: tie at x=1 must be resolved
    sign = lambda xs: np.sign(np.asarray(xs) ** 2 - 1.0)
    with caplog.at_level(logging.WARNING):
        alt = alternation_count(sign, 2, (1.0,), lead_sign=1)
    assert alt.ties


def test_certify_and_sturm_agree_small():
    rng = random.Random(3)
    fams = [RecurrenceFamily.hermite(), RecurrenceFamily.laguerre(0.5), RecurrenceFamily.jacobi(0.25, -0.5)]
    for _ in range(40):
        fam = rng.choice(fams)
        K = rng.randint(1, 4)
        g = (1.0,) + tuple(float(rng.randint(-8, 8)) / 2 for _ in range(K - 1)) + (float(rng.choice([-3, -1, 2, 5])),)
        n = rng.randint(max(K, 2), 18)
        rho = rng.choice([NormalizationSeq.ones(), NormalizationSeq.pow2()])
        rep = certify_coeffs(fam, rho, g, n)
        exact = sturm_count_qn(fam, rho, g, n)
        if rep.certified:
            assert exact == n
        else:
            assert rep.real_zero_count == exact


def test_report_serialization():
    rep = certify_qn(RecurrenceFamily.hermite(), NormalizationSeq.pow2(), Combination((1, 1, 1)), 12)
    d = rep.to_dict()
    assert d["certified"] and len(d["zeros"]) == 12
    row = rep.csv_row()
    assert row[:3] == [12, 12, True]


def test_degree_too_small():
    with pytest.raises(DegreeTooSmall):
        certify_qn(RecurrenceFamily.hermite(), NormalizationSeq.ones(), Combination((1, 1, 1)), 1)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.floats(-5, 5, allow_nan=False), min_size=1, max_size=5).filter(lambda b: abs(b[0]) > 1e-3),
    st.floats(-4, 4, allow_nan=False),
)
def test_deflation_round_trip(B, theta):
    A = compose_linear(B, theta)
    if A[-1] == 0:
        return
    back = deflate_linear(A, theta)
    scale = max(1.0, max(abs(v) for v in B))
    assert max(abs(x - y) for x, y in zip(back, B)) <= 1e-10 * scale * max(1.0, abs(theta)) ** len(B)


def test_deflation_rejects_non_root():
    with pytest.raises(NotARoot):
        deflate_linear([1.0, 0.0, -1.0], 0.5)


@pytest.mark.parametrize("fam", [RecurrenceFamily.hermite(), RecurrenceFamily.laguerre(0.0)], ids=lambda f: f.label)
def test_two_root_combination_small(fam):
    rho = NormalizationSeq.orthonormal(fam)
    for t1, t2 in [(-2.5, 2.9), (0.3, 0.31), (-3.0, -3.0)]:
        for n in (2, 3, 10, 25):
            assert certify_two_root(fam, rho, t1, t2, n).certified


def test_enze_probe_orthonormal_hermite():
    fam = RecurrenceFamily.hermite()
    rep = enze_equivalence_probe(fam, NormalizationSeq.orthonormal(fam), (1.0, -0.7), np.arange(-3, 3.01, 0.5), range(2, 15))
    assert rep.consistent and rep.all_real
    assert all(r.interlacing for r in rep.rows)
    assert all(r.final_claim for r in rep.rows)


def test_enze_probe_needs_real_B():
    fam = RecurrenceFamily.hermite()
    with pytest.raises(PreconditionFailed):
        # q^B = p_n + 5 p_{n-1} + 40 p_{n-2} with monic rho has nonreal zeros at small n
        enze_equivalence_probe(fam, NormalizationSeq.ones(), (1.0, 0.0, 40.0), [0.0], range(2, 5))
