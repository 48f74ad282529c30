import numpy as np
import pytest

from nltrace.errors import DomainError, HypothesisError
from nltrace.sugeno import SugenoTrace, sugeno_extend, sugeno_metric, sugeno_trace
from nltrace.weights import DiscreteWeight

from conftest import psd

ID = SugenoTrace(DiscreteWeight.power(1.0))
SQRT = SugenoTrace(DiscreteWeight.power(0.5))


def _brute(lam, w):
    return max([min(l, w.table(i + 1)[i + 1]) for i, l in enumerate(lam)] + [0.0])


def test_diag_example():
    assert sugeno_trace(np.diag([3.0, 2.0, 1.0]), ID) == 2.0


def test_zero():
    assert sugeno_trace(np.zeros((3, 3)), SQRT) == 0.0


@pytest.mark.parametrize("c, r", [(0.5, 2), (2.0, 3), (1.0, 1), (7.0, 4)])
def test_projection_formula(c, r):
    p = np.diag([c] * r + [0.0] * (5 - r))
    assert sugeno_trace(p, SQRT) == min(c, np.sqrt(r))


def test_against_brute_force(np_rng):
    for _ in range(30):
        a = psd(np_rng, 5)
        lam = np.clip(np.sort(np.linalg.eigvalsh(a))[::-1], 0, None)
        assert sugeno_trace(a, SQRT) == pytest.approx(_brute(lam, SQRT.weight), abs=1e-10)


def test_rejects_indefinite():
    with pytest.raises(DomainError):
        sugeno_trace(np.diag([1.0, -0.5]), ID)


def test_metric_basic(np_rng):
    a = np_rng.standard_normal((4, 4)) + 1j * np_rng.standard_normal((4, 4))
    b = np_rng.standard_normal((4, 4))
    assert sugeno_metric(a, a, SQRT) == 0.0
    assert sugeno_metric(a, b, SQRT) == sugeno_metric(b, a, SQRT)
    assert sugeno_metric(a, b, SQRT) > 0


def test_metric_definiteness(np_rng):
    a = np_rng.standard_normal((3, 3))
    b = a.copy()
    b[0, 0] += 1e-6
    assert sugeno_metric(a, b, SQRT) > 0


def test_metric_requires_concave():
    w = SugenoTrace(DiscreteWeight.power(2.0))
    with pytest.raises(HypothesisError):
        sugeno_metric(np.eye(2), np.zeros((2, 2)), w)
    assert sugeno_metric(np.eye(2), np.zeros((2, 2)), w, allow_nonconcave=True) == 1.0


def test_extend_cases(np_rng):
    b = psd(np_rng, 4)
    val = sugeno_trace(b, SQRT)
    assert sugeno_extend(b, SQRT) == pytest.approx(complex(val, 0), abs=1e-12)
    assert sugeno_extend(-b, SQRT) == pytest.approx(complex(-val, 0), abs=1e-12)
    assert sugeno_extend(1j * b, SQRT) == pytest.approx(complex(0, val), abs=1e-12)


def test_extend_hand_decomposition():
    # real part diag(2, -1), imaginary part diag(0, 3)
    a = np.diag([2.0, -1.0 + 3.0j])
    want = complex(min(2, 1) - min(1, 1), min(3, 1))
    assert sugeno_extend(a, ID) == want
    assert sugeno_extend(np.zeros((2, 2)), ID) == 0


def test_unitary_invariance_and_monotone(np_rng):
    a = psd(np_rng, 5)
    q, _ = np.linalg.qr(np_rng.standard_normal((5, 5)) + 1j * np_rng.standard_normal((5, 5)))
    assert abs(sugeno_trace(q @ a @ q.conj().T, SQRT) - sugeno_trace(a, SQRT)) <= 1e-9
    assert sugeno_trace(a, SQRT) <= sugeno_trace(a + psd(np_rng, 5), SQRT) + 1e-9


def test_f_homogeneity_on_spectrum():
    lam = np.array([3.0, 2.5, 1.0, 0.2])
    for k in (0.0, 0.5, 1.5, 10.0):
        assert SQRT.of_spectrum(np.minimum(k, lam)) == min(k, SQRT.of_spectrum(lam))
