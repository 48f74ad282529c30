"""Named property suites.

Each random suite is a per-trial function ``(i, rng, cfg) -> (value, ok,
witness)`` run through :func:`run_trials`; ``value`` is the suite metric and
the report keeps its extreme. Composite suites reproducing fixed examples
build their report directly.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from ..choquet import WeightedPNorm, choquet_trace, triangle_ratio
from ..fuzzy import choquet_integral, is_comonotone, sugeno_integral
from ..report import Report
from ..spectral import hermitian_eigenvalues, matrix_to_json, singular_values, weyl_check
from ..stepops import (
    StepOperator,
    add,
    choquet_spectral,
    choquet_stieltjes,
    lambda_t,
    lorentz_norm,
    max_type_value,
    min_witness,
    partition_approx,
    sugeno_trace_step,
)
from ..sugeno import SugenoTrace, sugeno_metric, sugeno_trace
from ..weights import ContinuousWeight, DiscreteWeight, doubling_sup
from .falsify import falsify_triangle
from .generators import (
    random_comonotone_pair,
    random_complex,
    random_concave_pwl,
    random_hermitian,
    random_increasing_pwl,
    random_monotone_measure,
    random_psd,
    random_step_operator,
    random_unitary,
)
from .runner import run_trials

__all__ = ["SUITES", "run_suite", "suite_ids", "II_STEP_WEIGHT", "KH_WEIGHT"]

TOL_SPECTRAL = 1e-12
TOL_EIGEN = 1e-9

# weight from the type II counterexample: 0 at 0, 1 on (0, 2], 4 beyond
II_STEP_WEIGHT = ContinuousWeight.step([2.0], [1.0, 4.0])
# alpha = (0, 1, 1, 3, 3, ...), giving phi(a) = l_1 + 2 l_3
KH_WEIGHT = DiscreteWeight.explicit([0, 1, 1], 3.0)


def _rel(x: float, y: float) -> float:
    scale = max(abs(x), abs(y))
    return abs(x - y) / scale if scale > 0 else 0.0


def _discrete_cap(k: int) -> DiscreteWeight:
    return DiscreteWeight.explicit(range(k + 1), float(k))


# ---------------------------------------------------------------------------
# matrix suites
# ---------------------------------------------------------------------------

def _weyl_trial(i, rng, cfg):
    n = rng.choice(cfg["dims"])
    a, b = random_psd(n, rng), random_psd(n, rng)
    rep = weyl_check(a, b)
    return rep.worst, rep.passed, {"a": matrix_to_json(a), "b": matrix_to_json(b)}


def _hermitian_2x2_eigs(a: float, d: float, b: complex) -> np.ndarray:
    m, r = 0.5 * (a + d), math.hypot(0.5 * (a - d), abs(b))
    return np.array([m + r, m - r])


def _eigen_trial(i, rng, cfg):
    # analytic 2x2, a known 3x3 spectrum hidden by a unitary, and invariance
    a, d = rng.normal(), rng.normal()
    b = complex(rng.normal(), rng.normal())
    h2 = np.array([[a, b], [b.conjugate(), d]])
    err2 = np.max(np.abs(hermitian_eigenvalues(h2, snap=False) - _hermitian_2x2_eigs(a, d, b)))
    c = abs(rng.normal()) + 0.5
    # tridiagonal (2, -1) matrix: eigenvalues 2 - sqrt 2, 2, 2 + sqrt 2
    t3 = c * np.array([[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]])
    want3 = c * np.array([2 + math.sqrt(2), 2.0, 2 - math.sqrt(2)])
    err3 = np.max(np.abs(hermitian_eigenvalues(t3, snap=False) - want3))
    spec = np.sort([rng.normal() for _ in range(3)])[::-1]
    u = random_unitary(3, rng)
    err3u = np.max(np.abs(hermitian_eigenvalues(u @ np.diag(spec) @ u.conj().T, snap=False) - spec))
    n = rng.choice(cfg["dims"])
    h = random_hermitian(n, rng)
    v = random_unitary(n, rng)
    drift = np.max(np.abs(hermitian_eigenvalues(v @ h @ v.conj().T, snap=False)
                          - hermitian_eigenvalues(h, snap=False)))
    analytic = max(err2, err3, err3u)
    ok = analytic <= 1e-10 and drift <= TOL_EIGEN
    return max(analytic, drift), ok, {"h": matrix_to_json(h), "u": matrix_to_json(v)}


def _norm_family():
    ws = [DiscreteWeight.power(1.0), DiscreteWeight.power(0.5), _discrete_cap(3)]
    return [(w, p) for w in ws for p in (1.0, 2.0)]


def _thm_norm_trial(i, rng, cfg):
    n = rng.choice(cfg["dims"])
    a, b = random_hermitian(n, rng), random_hermitian(n, rng)
    worst, arg = -math.inf, None
    for w, p in cfg["family"]:
        r = triangle_ratio(a, b, WeightedPNorm(w, p))
        if r > worst:
            worst, arg = r, (w, p)
    ok = worst <= 1.0 + TOL_EIGEN
    return worst, ok, {"a": matrix_to_json(a), "b": matrix_to_json(b),
                       "weight": arg[0].to_json(), "p": arg[1]}


def qnorm_bound(doubling: float, p: float) -> float:
    """Quasi-triangle constant ``max(1, 2**(1/p - 1)) * L**(1/p)``."""
    return max(1.0, 2.0 ** (1.0 / p - 1.0)) * doubling ** (1.0 / p)


def _thm_qnorm_trial(i, rng, cfg):
    n = rng.choice(cfg["dims"])
    kind = rng.choice(("hermitian", "psd", "general"))
    gen = {"hermitian": random_hermitian, "psd": random_psd, "general": random_complex}[kind]
    a, b = gen(n, rng), gen(n, rng)
    w = cfg["weight"]
    L = doubling_sup(w)
    worst, arg = -math.inf, None
    for p in cfg["ps"]:
        excess = triangle_ratio(a, b, WeightedPNorm(w, p)) - qnorm_bound(L, p)
        if excess > worst:
            worst, arg = excess, p
    return worst, worst <= TOL_EIGEN, {"a": matrix_to_json(a), "b": matrix_to_json(b),
                                       "weight": w.to_json(), "p": arg}


def _sugeno_metric_trial(i, rng, cfg):
    n = rng.choice(cfg["dims"])
    st = SugenoTrace(cfg["weight"])
    a, b, c = (random_complex(n, rng) for _ in range(3))
    dab = sugeno_metric(a, b, st)
    dba = sugeno_metric(b, a, st)
    dbc = sugeno_metric(b, c, st)
    dac = sugeno_metric(a, c, st)
    daa = sugeno_metric(a, a, st)
    excess = dac - dab - dbc
    ok = daa == 0.0 and dab == dba and excess <= TOL_EIGEN
    return excess, ok, {"a": matrix_to_json(a), "b": matrix_to_json(b), "c": matrix_to_json(c)}


def _sugeno_matrix_trial(i, rng, cfg):
    # unitary invariance, monotonicity, projection formula
    n = rng.choice(cfg["dims"])
    st = SugenoTrace(cfg["weight"])
    a = random_psd(n, rng)
    u = random_unitary(n, rng)
    drift = abs(sugeno_trace(u @ a @ u.conj().T, st) - sugeno_trace(a, st))
    b = a + random_psd(n, rng)
    mono = sugeno_trace(a, st) - sugeno_trace(b, st)
    r = rng.integers(1, n)
    c = rng.uniform(0.0, 4.0)
    proj = c * (u[:, :r] @ u[:, :r].conj().T)
    want = min(c, float(st.weight(r)))
    proj_err = abs(sugeno_trace(proj, st) - want)
    value = max(drift, mono, proj_err)
    return value, value <= TOL_EIGEN, {"a": matrix_to_json(a), "u": matrix_to_json(u)}


# ---------------------------------------------------------------------------
# step-operator suites
# ---------------------------------------------------------------------------

# dyadic-valued on dyadic arguments, so every sum below is exact
EXACT_WEIGHTS = (
    ContinuousWeight.power(1.0),
    ContinuousWeight.power(2.0),
    ContinuousWeight.cap(1.5),
    ContinuousWeight.pwl([0, 1, 2, 4], [0, 2, 3, 3.5], final_slope=0.125),
    II_STEP_WEIGHT,
)
FLOAT_WEIGHTS = (
    ContinuousWeight.power(0.5),
    ContinuousWeight.power(0.7),
    ContinuousWeight.power(2.5),
    ContinuousWeight.cap(math.pi / 3),
)


def _stieltjes_trial(i, rng, cfg):
    k = rng.integers(1, cfg["max_segments"])
    a = random_step_operator(k, rng, "rational")
    w = rng.choice(EXACT_WEIGHTS)
    exact_gap = abs(choquet_spectral(a, w) - choquet_stieltjes(a, w))
    b = random_step_operator(k, rng, "float")
    v = rng.choice(FLOAT_WEIGHTS)
    rel = _rel(choquet_spectral(b, v), choquet_stieltjes(b, v))
    ok = exact_gap == 0.0 and rel <= TOL_SPECTRAL
    return max(exact_gap, rel), ok, {"rational": a.to_json(), "weight": w.to_json(),
                                     "float": b.to_json(), "float_weight": v.to_json()}


def _unit_weights(rng):
    return rng.choice([
        ContinuousWeight.power(0.5, "unit"),
        ContinuousWeight.power(1.0, "unit"),
        ContinuousWeight.power(2.0, "unit"),
        ContinuousWeight.cap(0.5, "unit"),
        random_concave_pwl(rng, 3, "unit"),
    ])


LEM_SERIES_MS = tuple([1, 3] + [2 ** j for j in range(1, 11)])


def _lem_series_trial(i, rng, cfg):
    a = random_step_operator(rng.integers(1, cfg["max_segments"]), rng, "dyadic")
    w = _unit_weights(rng)
    phi = choquet_stieltjes(a, w)
    approx = {M: partition_approx(a, w, M) for M in LEM_SERIES_MS}
    below = min(approx[M] - phi for M in LEM_SERIES_MS)
    dyadic = [approx[2 ** j] for j in range(1, 11)]
    decreasing = all(y <= x + TOL_SPECTRAL for x, y in zip(dyadic, dyadic[1:]))
    gap = approx[1024] - phi
    ok = below >= -TOL_SPECTRAL and gap <= 1e-6 and decreasing
    return gap, ok, {"stepop": a.to_json(), "weight": w.to_json(), "below": below}


def _ii_quasinorm_trial(i, rng, cfg):
    w = rng.choice(cfg["weights"])
    beta = doubling_sup(w)
    k = rng.integers(1, cfg["max_segments"])
    a = random_step_operator(k, rng, "float")
    b = random_step_operator(rng.integers(1, cfg["max_segments"]), rng, "float")
    den = choquet_stieltjes(a, w) + choquet_stieltjes(b, w)
    ratio = choquet_stieltjes(add(a, b), w) / den if den > 0 else 0.0
    excess = ratio - beta
    return excess, excess <= TOL_EIGEN, {"a": a.to_json(), "b": b.to_json(), "weight": w.to_json()}


def _signed_step(k, rng):
    vals = [rng.normal() for _ in range(k)]
    masses = [abs(rng.normal()) + 2.0 ** -20 for _ in range(k)]
    return StepOperator(np.array(vals), np.array(masses), signed=True)


def _lorentz_trial(i, rng, cfg):
    w = cfg["weight"]
    a = _signed_step(rng.integers(1, cfg["max_segments"]), rng)
    b = _signed_step(rng.integers(1, cfg["max_segments"]), rng)
    den = lorentz_norm(a, w) + lorentz_norm(b, w)
    ratio = lorentz_norm(add(a, b), w) / den
    return ratio, ratio <= 1.0 + TOL_EIGEN, {"a": a.to_json(), "b": b.to_json()}


def _continuous_weights(rng):
    return rng.choice([
        ContinuousWeight.power(0.5),
        ContinuousWeight.power(1.0),
        ContinuousWeight.power(2.0),
        ContinuousWeight.cap(1.25),
        random_concave_pwl(rng, 3),
    ])


def _maxtype_trial(i, rng, cfg):
    mode = rng.choice(("float", "rational"))
    a = random_step_operator(rng.integers(1, cfg["max_segments"]), rng, mode)
    w = _continuous_weights(rng)
    psi = sugeno_trace_step(a, w)
    gap = abs(psi - max_type_value(a, w))
    c = rng.uniform(0.0, 3.0)
    m = rng.uniform(0.01, 3.0)
    proj = sugeno_trace_step(StepOperator.projection(m, c), w)
    proj_gap = abs(proj - min(c, float(w.evaluate_array(m))))
    ok = gap == 0.0 and proj_gap == 0.0 and psi <= a.norm
    return max(gap, proj_gap), ok, {"stepop": a.to_json(), "weight": w.to_json(), "c": c, "m": m}


def _min_witness_trial(i, rng, cfg):
    a = random_step_operator(rng.integers(1, cfg["max_segments"]), rng, "float")
    w = _continuous_weights(rng)
    eps = 1e-3 if i % 2 == 0 else rng.uniform(1e-6, 1.0)
    _, rep = min_witness(a, w, eps)
    return rep.worst, rep.passed, {"stepop": a.to_json(), "weight": w.to_json(), "eps": eps}


def _additivity_trial(i, rng, cfg):
    # functional calculus with increasing f, g fixing 0; plus monotonicity
    a = random_step_operator(rng.integers(1, cfg["max_segments"]), rng, "float")
    w = _continuous_weights(rng)
    f, g = random_increasing_pwl(rng), random_increasing_pwl(rng)
    lhs = choquet_stieltjes(a.apply(lambda v: f(v) + g(v)), w)
    rhs = choquet_stieltjes(a.apply(f), w) + choquet_stieltjes(a.apply(g), w)
    add_err = _rel(lhs, rhs)
    fg = a.apply(lambda v: np.maximum(f(v), g(v)))
    f_add = sugeno_trace_step(fg, w) == max(sugeno_trace_step(a.apply(f), w),
                                            sugeno_trace_step(a.apply(g), w))
    k = rng.uniform(0.0, 2.0)
    f_hom = sugeno_trace_step(a.apply(lambda v: np.minimum(k, v)), w) == min(k, sugeno_trace_step(a, w))
    # b >= a on the same partition, so masses (hence traces of level sets) agree
    bump = np.array([abs(rng.normal()) for _ in range(a.values.size)])
    b = StepOperator(a.values + bump, a.masses)
    phi_a, phi_b = choquet_stieltjes(a, w), choquet_stieltjes(b, w)
    mono = (phi_a <= phi_b * (1 + TOL_SPECTRAL)
            and sugeno_trace_step(a, w) <= sugeno_trace_step(b, w))
    ok = add_err <= TOL_SPECTRAL and f_add and f_hom and mono
    return add_err, ok, {"stepop": a.to_json(), "weight": w.to_json(), "k": k}


# ---------------------------------------------------------------------------
# fuzzy suite
# ---------------------------------------------------------------------------

def _fuzzy_trial(i, rng, cfg):
    n = rng.integers(1, cfg["max_ground"])
    mu = random_monotone_measure(n, rng)
    f, g = random_comonotone_pair(n, rng, ties=bool(i % 3 == 0))
    como = is_comonotone(f, g)
    c_add = _rel(choquet_integral(f + g, mu), choquet_integral(f, mu) + choquet_integral(g, mu))
    s_add = sugeno_integral(np.maximum(f, g), mu) == max(sugeno_integral(f, mu), sugeno_integral(g, mu))
    k = rng.uniform(0.0, 3.0)
    c_hom = _rel(choquet_integral(k * f, mu), k * choquet_integral(f, mu))
    s_hom = sugeno_integral(np.minimum(k, f), mu) == min(k, sugeno_integral(f, mu))
    value = max(c_add, c_hom)
    ok = como and value <= TOL_SPECTRAL and s_add and s_hom
    return value, ok, {"measure": mu.to_json(), "f": f.tolist(), "g": g.tolist(), "k": k}


# ---------------------------------------------------------------------------
# fixed examples
# ---------------------------------------------------------------------------

def ii_example() -> Report:
    """Projections of trace 4/3 with the step weight: phi(p) = phi(q) = 1 and
    phi(p + q) = 4, so the ratio is 2."""
    start = time.perf_counter()
    m = 4.0 / 3.0
    p = StepOperator.projection(m)
    q = StepOperator.from_segments([(0.0, m), (1.0, m)])
    pq = add(p, q)
    w = II_STEP_WEIGHT
    phi_p, phi_q, phi_pq = (choquet_stieltjes(x, w) for x in (p, q, pq))
    spectral_pq = choquet_spectral(pq, w)
    ratio = phi_pq / (phi_p + phi_q)
    passed = (phi_p == 1.0 and phi_q == 1.0 and phi_pq == 4.0 and spectral_pq == 4.0
              and lambda_t(pq, 2.0) == 1.0 and lambda_t(p, 2.0) == 0.0)
    return Report("ii-example", passed, metric="triangle_ratio", worst=ratio,
                  elapsed=time.perf_counter() - start,
                  witness=None if passed else {"p": p.to_json(), "q": q.to_json(), "weight": w.to_json()},
                  details={"phi_p": phi_p, "phi_q": phi_q, "phi_pq": phi_pq})


def kh_example(trials: int, seed: int, dims, workers: int = 1) -> Report:
    """alpha = (0, 1, 1, 3, 3, ...): closed form on diag(5, 4, 3, 2), doubling
    constant 3, and a worst triangle ratio between 3/2 and 3 at p = 1."""
    start = time.perf_counter()
    w = KH_WEIGHT
    phi = choquet_trace(hermitian_eigenvalues(np.diag([5.0, 4.0, 3.0, 2.0])), w)
    L = doubling_sup(w)
    rep = falsify_triangle(w, 1.0, dims, trials, seed, workers=workers, bound=L)
    in_range = 1.5 <= rep.worst <= 3.0
    passed = phi == 11.0 and L == 3.0 and in_range
    return Report("kh-example", passed, trials=trials, metric="triangle_ratio", worst=rep.worst,
                  witness=rep.witness, seed=seed, elapsed=time.perf_counter() - start,
                  details={"phi_diag_5432": phi, "doubling_sup": L, "ratio_range": [1.5, 3.0]})


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Suite:
    trial: Callable
    metric: str
    direction: str = "max"
    trials: int = 1000
    config: Callable[[], dict[str, Any]] = dict


def _cfg(**kw):
    return lambda: dict(kw)


SUITES: dict[str, Suite] = {
    "weyl": Suite(_weyl_trial, "min_slack", "min", config=_cfg(dims=list(range(1, 11)))),
    "eigen-sanity": Suite(_eigen_trial, "max_abs_error", trials=100, config=_cfg(dims=list(range(2, 9)))),
    "thm-norm": Suite(_thm_norm_trial, "triangle_ratio",
                      config=lambda: {"dims": list(range(1, 9)), "family": _norm_family()}),
    "thm-qnorm": Suite(_thm_qnorm_trial, "ratio_minus_bound",
                       config=lambda: {"dims": list(range(1, 9)), "weight": DiscreteWeight.power(2.0),
                                       "ps": (0.5, 1.0, 2.0)}),
    "sugeno-metric": Suite(_sugeno_metric_trial, "triangle_excess",
                           config=lambda: {"dims": list(range(1, 9)), "weight": DiscreteWeight.power(0.5)}),
    "sugeno-matrix": Suite(_sugeno_matrix_trial, "max_deviation",
                           config=lambda: {"dims": list(range(1, 9)), "weight": DiscreteWeight.power(0.5)}),
    "prop-stieltjes": Suite(_stieltjes_trial, "max_gap", trials=10000, config=_cfg(max_segments=8)),
    "lem-series": Suite(_lem_series_trial, "approx_gap_at_1024", config=_cfg(max_segments=8)),
    "ii-quasinorm": Suite(_ii_quasinorm_trial, "ratio_minus_doubling", trials=10000,
                          config=lambda: {"max_segments": 6, "weights": [
                              ContinuousWeight.power(0.5), ContinuousWeight.power(2.0),
                              ContinuousWeight.power(3.0), ContinuousWeight.cap(1.0),
                              ContinuousWeight.pwl([0, 1, 2], [0, 0.25, 2], final_slope=1.0)]}),
    "lorentz-triangle": Suite(_lorentz_trial, "triangle_ratio",
                              config=lambda: {"max_segments": 6, "weight": ContinuousWeight.power(0.5)}),
    "sugeno-maxtype": Suite(_maxtype_trial, "max_gap", config=_cfg(max_segments=8)),
    "min-witness": Suite(_min_witness_trial, "alpha_q_minus_level", config=_cfg(max_segments=8)),
    "additivity": Suite(_additivity_trial, "additivity_rel_error", config=_cfg(max_segments=6)),
    "fuzzy": Suite(_fuzzy_trial, "max_rel_error", config=_cfg(max_ground=10)),
}

FIXED = ("ii-example", "kh-example")


def suite_ids() -> list[str]:
    return sorted(list(SUITES) + list(FIXED))


def run_suite(suite_id: str, trials: int | None = None, seed: int = 0, workers: int = 1,
              dims=None, **overrides) -> Report:
    """Run a named suite and return its report.

    Raises
    ------
    KeyError
        Unknown suite id.
    """
    if suite_id == "ii-example":
        rep = ii_example()
        rep.seed = seed
        return rep
    if suite_id == "kh-example":
        return kh_example(1000 if trials is None else trials, seed,
                          dims or list(range(1, 9)), workers)
    if suite_id not in SUITES:
        raise KeyError(f"unknown suite {suite_id!r}; known: {', '.join(suite_ids())}")
    s = SUITES[suite_id]
    cfg = s.config()
    if dims is not None and "dims" in cfg:
        cfg["dims"] = sorted({int(n) for n in dims})
    cfg.update(overrides)
    n = s.trials if trials is None else int(trials)
    start = time.perf_counter()
    agg = run_trials(s.trial, n, seed, cfg, workers=workers, direction=s.direction)
    passed = agg.failures == 0
    worst = agg.worst.value if agg.worst is not None else 0.0
    witness = None
    if not passed:
        f = agg.first_failure
        witness = {"trial": f.index, "value": f.value, **(f.witness or {})}
    details: dict[str, Any] = {"failures": agg.failures}
    if agg.worst is not None:
        details["worst_trial"] = agg.worst.index
    return Report(suite_id, passed, trials=agg.trials, metric=s.metric, worst=worst,
                  witness=witness, seed=seed, elapsed=time.perf_counter() - start, details=details)
