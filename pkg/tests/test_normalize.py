import math

import numpy as np
import pytest
from scipy import special

from combzero.errors import InvalidParameter, InvalidThetaSequence, NormalizationTooShort
from combzero.normalize import (
    NormalizationSeq,
    construct_rho_cop,
    default_theta,
    normalized_recurrence,
    verify_c3t2_c3t3,
)
from combzero.recurrence import RecurrenceFamily, eval_normalized_tail


def test_rules():
    assert NormalizationSeq.pow2().log2(10) == 10.0
    f = NormalizationSeq.factorial()
    assert 2.0 ** f.log2(6) == pytest.approx(720.0)
    assert f.back_ratio(6, 2) == pytest.approx(1 / 30)
    assert float(f.exact_back_ratio(6, 2)) == pytest.approx(1 / 30)
    g = NormalizationSeq.geometric(0.25)
    assert g.step(3) == 4.0 and g.back_ratio(5, 2) == pytest.approx(1 / 16)
    with pytest.raises(InvalidParameter):
        NormalizationSeq.geometric(0.0)
    with pytest.raises(InvalidParameter):
        NormalizationSeq("nope")


def test_constructed_length():
    r = NormalizationSeq.constructed([2.0, 3.0])
    assert 2.0 ** r.log2(2) == pytest.approx(6.0)
    with pytest.raises(NormalizationTooShort):
        r.log2(3)
    with pytest.raises(InvalidParameter):
        NormalizationSeq.constructed([1.0, -1.0])


def test_orthonormal_hermite_by_quadrature():
    h = RecurrenceFamily.hermite()
    rho = NormalizationSeq.orthonormal(h)
    x, w = special.roots_hermite(40)
    w = w / math.sqrt(math.pi)
    vals = np.array([[float(v) for v in eval_normalized_tail(h, rho, 8, xi, 8)] for xi in x])
    gram = (vals * w[:, None]).T @ vals
    assert np.allclose(gram, np.eye(9), atol=1e-10)


def test_normalized_recurrence_relation():
    # x p_n = a_{n+1} p_{n+1} + b_n p_n + c_n p_{n-1}
    fam = RecurrenceFamily.laguerre(0.5)
    rho = NormalizationSeq.factorial()
    x, n = 1.7, 6
    pm1, p0, p1 = (float(v) for v in eval_normalized_tail(fam, rho, n + 1, x, 2))
    a1, _, _ = normalized_recurrence(fam, rho, n + 1)
    _, b, c = normalized_recurrence(fam, rho, n)
    assert x * p0 == pytest.approx(a1 * p1 + b * p0 + c * pm1, rel=1e-12)


def _tau_oracle(family, theta, N):
    # window minimum recomputed with dense eigenvalues
    def zmax(s):
        b, chat = family.arrays(s)
        J = np.diag(b[:s]) + np.diag(np.sqrt(chat[1:s]), 1) + np.diag(np.sqrt(chat[1:s]), -1)
        return np.max(np.abs(np.linalg.eigvalsh(J)))

    tau = [0.5]
    for n in range(1, N + 2):
        zs = [zmax(s) for s in range(max(n - 1, 1), 2 * n + 1)]
        w = min(1.0 / z if z > 0 else math.inf for z in zs)
        tau.append(min(theta(n), tau[-1], w))
    return np.array(tau)


@pytest.mark.parametrize(
    "fam", [RecurrenceFamily.hermite(), RecurrenceFamily.laguerre(0.5), RecurrenceFamily.jacobi(0.3, -0.4)],
    ids=lambda f: f.label,
)
def test_construct_rho_matches_oracle_and_meets_hypotheses(fam):
    theta = lambda n: 1.0 / (n + 2)
    rho, trace = construct_rho_cop(fam, theta, 30)
    oracle = _tau_oracle(fam, theta, 30)
    assert np.allclose(trace.tau, oracle, rtol=1e-12)
    for n in range(2, 31):
        cc = fam.chat(n - 1)
        bb = abs(fam.b(n - 1))
        e = cc * oracle[n] / bb if bb else 1.0
        assert trace.d[n] == pytest.approx(min(cc * oracle[n], e, 0.9), rel=1e-12)
    assert rho.step(5) == pytest.approx(1.0 / trace.d[6])
    hyp = verify_c3t2_c3t3(fam, rho, trace.tau, 1.0, range(2, 30))
    assert hyp.all_ok(), hyp.failures()


def test_cop_trace_csv():
    _, trace = construct_rho_cop(RecurrenceFamily.hermite(), None, 4)
    lines = trace.to_csv().splitlines()
    assert lines[0] == "n,theta,tau,e,d,rho_ratio"
    assert len(lines) == 6
    assert lines[1].startswith("0,0.5,0.5,,,")


def test_hypothesis_failure_is_reported_not_raised():
    fam = RecurrenceFamily.hermite()
    hyp = verify_c3t2_c3t3(fam, NormalizationSeq.ones(), lambda n: 1e-3, 1.0, range(2, 6))
    assert not hyp.all_ok() and hyp.failures() == [2, 3, 4, 5]


def test_theta_validation():
    assert default_theta(0) == 0.5 and default_theta(3) == 0.25
    with pytest.raises(InvalidThetaSequence):
        construct_rho_cop(RecurrenceFamily.hermite(), [0.5, 0.4], 5)
    with pytest.raises(InvalidThetaSequence):
        construct_rho_cop(RecurrenceFamily.hermite(), lambda n: 0.1 * (n + 1), 5)
