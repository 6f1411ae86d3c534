import pytest

from combzero.normalize import NormalizationSeq
from combzero.recurrence import RecurrenceFamily

CLASSICAL = [
    RecurrenceFamily.hermite(),
    RecurrenceFamily.prob_hermite(),
    RecurrenceFamily.laguerre(0.0),
    RecurrenceFamily.laguerre(1.5),
    RecurrenceFamily.jacobi(0.0, 0.0),
    RecurrenceFamily.jacobi(0.3, -0.4),
    RecurrenceFamily.jacobi(-0.5, -0.5),
]


@pytest.fixture(params=CLASSICAL, ids=lambda f: f.label)
def family(request):
    return request.param


@pytest.fixture
def ones():
    return NormalizationSeq.ones()
