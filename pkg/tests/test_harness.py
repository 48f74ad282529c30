import numpy as np
import pytest

from nltrace.choquet import WeightedPNorm, triangle_ratio
from nltrace.fuzzy import MonotoneMeasure
from nltrace.harness import (
    Xoshiro256,
    falsify_triangle,
    random_hermitian,
    random_monotone_measure,
    random_psd,
    random_step_operator,
    random_unitary,
    replay_triangle,
    run_suite,
    structured_candidates,
    suite_ids,
)
from nltrace.harness.generators import random_comonotone_pair
from nltrace.harness.runner import run_trials
from nltrace.fuzzy import is_comonotone
from nltrace.spectral import hermitian_eigenvalues, matrix_from_json
from nltrace.weights import DiscreteWeight

KH = DiscreteWeight.explicit([0, 1, 1], 3.0)


def test_generators_deterministic():
    a = random_hermitian(5, Xoshiro256(3))
    b = random_hermitian(5, Xoshiro256(3))
    assert a.tobytes() == b.tobytes()
    assert np.array_equal(a, a.conj().T)


def test_random_psd_is_psd():
    rng = Xoshiro256(4)
    for n in (1, 4, 10):
        lam = hermitian_eigenvalues(random_psd(n, rng))
        assert lam[-1] >= -1e-9


def test_random_unitary():
    u = random_unitary(6, Xoshiro256(5))
    np.testing.assert_allclose(u.conj().T @ u, np.eye(6), atol=1e-13)


def test_step_modes():
    rng = Xoshiro256(6)
    r = random_step_operator(7, rng, "rational")
    assert np.all(r.values * 8 == np.round(r.values * 8))
    assert np.all(r.masses * 8 == np.round(r.masses * 8))
    d = random_step_operator(7, rng, "dyadic")
    assert d.cap == 1.0 and d.total_mass <= 1.0
    assert np.all(d.masses * 64 == np.round(d.masses * 64))
    with pytest.raises(ValueError):
        random_step_operator(3, rng, "weird")


def test_random_measure_monotone():
    rng = Xoshiro256(8)
    for n in (1, 5, 10):
        mu = random_monotone_measure(n, rng)
        MonotoneMeasure(n, mu.mu)  # revalidates


def test_comonotone_pairs():
    rng = Xoshiro256(9)
    for ties in (False, True):
        f, g = random_comonotone_pair(8, rng, ties=ties)
        assert is_comonotone(f, g)


def test_structured_library_contains_complementary_pair():
    pairs = {label: (a, b) for label, a, b in structured_candidates(4)}
    a, b = pairs["projections n=4 k=2 m=2"]
    assert np.array_equal(a + b, np.eye(4))
    assert triangle_ratio(a, b, WeightedPNorm(KH, 1.0)) == 1.5


def test_falsify_kh_weight():
    rep = falsify_triangle(KH, 1.0, [2, 3, 4], trials=50, seed=1)
    assert not rep.passed
    assert rep.worst >= 1.5
    assert rep.witness is not None
    assert replay_triangle(rep.witness) == rep.worst


def test_falsify_structured_only():
    rep = falsify_triangle(KH, 1.0, [4], trials=0, seed=0)
    assert rep.worst == 1.5
    assert rep.witness["source"].startswith("projections n=4")
    a, b = matrix_from_json(rep.witness["a"]), matrix_from_json(rep.witness["b"])
    # disjoint diagonal projections
    assert np.array_equal(a @ b, np.zeros((4, 4)))


def test_falsify_concave_weight_passes():
    rep = falsify_triangle(DiscreteWeight.power(0.5), 1.0, range(1, 9), trials=200, seed=2)
    assert rep.passed and rep.worst <= 1 + 1e-9


def test_falsify_sharded_equals_serial():
    serial = falsify_triangle(KH, 2.0, [3, 5], trials=40, seed=11, bound=3.0)
    sharded = falsify_triangle(KH, 2.0, [3, 5], trials=40, seed=11, bound=3.0, workers=3)
    assert serial.worst == sharded.worst
    assert serial.witness == sharded.witness
    assert serial.passed == sharded.passed


def _toy_trial(i, rng, cfg):
    x = rng.random()
    return x, x < cfg["cut"], {"x": x}


def test_runner_reduction_and_sharding():
    serial = run_trials(_toy_trial, 60, 5, {"cut": 0.9})
    sharded = run_trials(_toy_trial, 60, 5, {"cut": 0.9}, workers=4)
    assert serial.trials == sharded.trials == 60
    assert serial.worst == sharded.worst
    assert serial.first_failure == sharded.first_failure
    assert serial.failures == sharded.failures
    low = run_trials(_toy_trial, 60, 5, {"cut": 0.9}, direction="min")
    assert low.worst.value < serial.worst.value


@pytest.mark.parametrize("sid", ["prop-stieltjes", "weyl", "sugeno-maxtype", "fuzzy", "lem-series",
                                 "min-witness", "additivity", "lorentz-triangle", "ii-quasinorm",
                                 "sugeno-matrix", "sugeno-metric", "thm-norm", "thm-qnorm", "eigen-sanity"])
def test_suites_pass_small(sid):
    rep = run_suite(sid, trials=40, seed=123)
    assert rep.passed, rep.witness
    assert rep.trials == 40 and rep.seed == 123


def test_exact_suites_zero_gap():
    assert run_suite("sugeno-maxtype", trials=100, seed=3).worst == 0.0


def test_fixed_suites():
    ii = run_suite("ii-example")
    assert ii.passed and ii.worst == 2.0
    assert ii.details == {"phi_p": 1.0, "phi_q": 1.0, "phi_pq": 4.0}
    kh = run_suite("kh-example", trials=30, seed=1, dims=[2, 4])
    assert kh.passed and 1.5 <= kh.worst <= 3.0


def test_suite_sharding_identical():
    a = run_suite("weyl", trials=30, seed=9)
    b = run_suite("weyl", trials=30, seed=9, workers=3)
    assert a.to_json() == b.to_json()


def test_failing_suite_embeds_replayable_witness():
    # a strongly convex weight breaks the triangle inequality on random pairs
    w4 = DiscreteWeight.power(4.0)
    rep = run_suite("thm-norm", trials=20, seed=0, dims=[4], family=[(w4, 1.0)])
    assert not rep.passed
    w = rep.witness
    a, b = matrix_from_json(w["a"]), matrix_from_json(w["b"])
    assert triangle_ratio(a, b, WeightedPNorm(w4, 1.0)) == w["value"] > 1.0


def test_unknown_suite():
    assert "weyl" in suite_ids()
    with pytest.raises(KeyError):
        run_suite("nope")
