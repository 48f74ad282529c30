"""Counterexample search for the triangle inequality of weighted p-norms."""

from __future__ import annotations

import time
from typing import Any, Iterable

import numpy as np

from ..choquet import WeightedPNorm, triangle_ratio
from ..report import Report
from ..spectral import matrix_from_json, matrix_to_json
from ..weights import DiscreteWeight, weight_from_json
from .generators import random_complex, random_hermitian, random_psd
from .runner import TrialOutcome, better, run_trials

__all__ = ["structured_candidates", "falsify_triangle", "replay_triangle", "PAIR_KINDS"]

PAIR_KINDS = ("hermitian", "psd", "general")
RATIO_TOL = 1e-9


def structured_candidates(n: int) -> Iterable[tuple[str, np.ndarray, np.ndarray]]:
    """Deterministic pairs in dimension ``n``.

    * disjoint diagonal projections of ranks ``k`` and ``m`` (``k + m <= n``);
    * diagonals with one repeated eigenvalue, placed on complementary blocks;
    * a rank-k projection against a rank-1 projection tilted out of its range.
    """
    eye = np.eye(n, dtype=np.complex128)
    for k in range(1, n):
        for m in range(1, n - k + 1):
            p = np.diag([1.0] * k + [0.0] * (n - k)).astype(np.complex128)
            q = np.diag([0.0] * k + [1.0] * m + [0.0] * (n - k - m)).astype(np.complex128)
            yield f"projections n={n} k={k} m={m}", p, q
    for k in range(1, n):
        a = np.diag([2.0] * k + [1.0] * (n - k)).astype(np.complex128)
        b = np.diag([1.0] * (n - k) + [2.0] * k).astype(np.complex128)
        yield f"repeated n={n} k={k}", a, b
    for k in range(1, n):
        p = np.diag([1.0] * k + [0.0] * (n - k)).astype(np.complex128)
        v = (eye[:, 0] + eye[:, k]) / np.sqrt(2.0)
        yield f"rank-one n={n} k={k}", p, np.outer(v, v.conj())


def _random_pair(kind: str, n: int, rng):
    if kind == "hermitian":
        return random_hermitian(n, rng), random_hermitian(n, rng)
    if kind == "psd":
        return random_psd(n, rng), random_psd(n, rng)
    return random_complex(n, rng), random_complex(n, rng)


def _pair_witness(source: str, a, b, w: DiscreteWeight, p: float) -> dict[str, Any]:
    return {"source": source, "a": matrix_to_json(a), "b": matrix_to_json(b),
            "weight": w.to_json(), "p": p}


def _random_trial(i, rng, cfg):
    n = rng.choice(cfg["dims"])
    kind = rng.choice(cfg["kinds"])
    a, b = _random_pair(kind, n, rng)
    norm = WeightedPNorm(cfg["weight"], cfg["p"])
    r = triangle_ratio(a, b, norm)
    ok = r <= cfg["bound"] + RATIO_TOL
    return r, ok, _pair_witness(f"random trial={i} kind={kind} n={n}", a, b, cfg["weight"], cfg["p"])


def replay_triangle(witness: dict[str, Any]) -> float:
    """Recompute the ratio stored in a witness from its serialized inputs."""
    w = weight_from_json(witness["weight"], model="discrete")
    norm = WeightedPNorm(w, float(witness["p"]))
    return triangle_ratio(matrix_from_json(witness["a"]), matrix_from_json(witness["b"]), norm)


def falsify_triangle(w: DiscreteWeight, p: float, dims, trials: int, seed: int,
                     workers: int = 1, bound: float = 1.0,
                     kinds=PAIR_KINDS) -> Report:
    """Maximise ``|||a+b||| / (|||a||| + |||b|||)`` over the structured library
    for every dimension in ``dims`` and ``trials`` random pairs.

    The report passes when the worst ratio stays within ``bound + 1e-9``; its
    witness is always the maximising pair.
    """
    start = time.perf_counter()
    dims = sorted({int(n) for n in dims})
    if not dims or dims[0] < 1:
        raise ValueError("dims must be a nonempty list of positive sizes")
    norm = WeightedPNorm(w, p)
    structured = [c for n in dims for c in structured_candidates(n)]
    worst = None
    for j, (label, a, b) in enumerate(structured):
        out = TrialOutcome(j - len(structured), triangle_ratio(a, b, norm), True, None)
        if better(out, worst, "max"):
            out.witness = _pair_witness(label, a, b, w, p)
            worst = out
    cfg = {"weight": w, "p": float(p), "dims": dims, "kinds": tuple(kinds), "bound": float(bound)}
    agg = run_trials(_random_trial, trials, seed, cfg, workers=workers, direction="max")
    if agg.worst is not None and better(agg.worst, worst, "max"):
        worst = agg.worst
    passed = worst.value <= bound + RATIO_TOL
    return Report(
        suite="falsify",
        passed=bool(passed),
        trials=trials,
        metric="triangle_ratio",
        worst=worst.value,
        witness=worst.witness,
        seed=seed,
        elapsed=time.perf_counter() - start,
        details={"bound": bound, "structured": len(structured), "dims": dims,
                 "weight": w.to_json(), "p": p},
    )
