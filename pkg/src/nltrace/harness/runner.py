"""Seeded trial loop with optional process sharding.

Trial ``i`` draws from its own generator seeded by ``trial_seed(seed, i)``,
so the set of trial results does not depend on how trials are split across
workers. The reduction keeps the extreme value (lowest index on ties) and
the lowest-index failure, which makes it order independent.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable

from .rng import Xoshiro256

__all__ = ["TrialOutcome", "Aggregate", "run_trials", "better"]

# trial(i, rng, cfg) -> (value, ok, witness)
TrialFn = Callable[[int, Xoshiro256, dict], tuple[float, bool, "dict[str, Any] | None"]]


@dataclass
class TrialOutcome:
    index: int
    value: float
    ok: bool
    witness: dict[str, Any] | None


@dataclass
class Aggregate:
    trials: int = 0
    failures: int = 0
    worst: TrialOutcome | None = None
    first_failure: TrialOutcome | None = None


def better(a: TrialOutcome, b: TrialOutcome | None, direction: str) -> bool:
    """Whether ``a`` should replace ``b`` as the extreme outcome."""
    if b is None:
        return True
    if a.value != b.value:
        # NaN never wins so a bad trial cannot hide the real extreme
        return a.value > b.value if direction == "max" else a.value < b.value
    return a.index < b.index


def merge(acc: Aggregate, other: Aggregate, direction: str) -> Aggregate:
    acc.trials += other.trials
    acc.failures += other.failures
    if other.worst is not None and better(other.worst, acc.worst, direction):
        acc.worst = other.worst
    f = other.first_failure
    if f is not None and (acc.first_failure is None or f.index < acc.first_failure.index):
        acc.first_failure = f
    return acc


def _chunk(fn: TrialFn, seed: int, cfg: dict, start: int, stop: int, direction: str) -> Aggregate:
    agg = Aggregate()
    for i in range(start, stop):
        value, ok, witness = fn(i, Xoshiro256.for_trial(seed, i), cfg)
        out = TrialOutcome(i, float(value), bool(ok), witness)
        agg.trials += 1
        if better(out, agg.worst, direction):
            agg.worst = out
        if not out.ok:
            agg.failures += 1
            if agg.first_failure is None:
                agg.first_failure = out
    return agg


def run_trials(fn: TrialFn, trials: int, seed: int, cfg: dict | None = None,
               workers: int = 1, direction: str = "max") -> Aggregate:
    """Run trials ``0..trials-1`` and reduce them.

    ``fn`` and ``cfg`` must be picklable when ``workers > 1``.
    """
    cfg = {} if cfg is None else cfg
    if direction not in ("max", "min"):
        raise ValueError(f"direction must be 'max' or 'min', got {direction!r}")
    if workers <= 1 or trials < 2:
        return _chunk(fn, seed, cfg, 0, trials, direction)
    workers = min(workers, trials)
    bounds = [trials * k // workers for k in range(workers + 1)]
    acc = Aggregate()
    with ProcessPoolExecutor(max_workers=workers) as ex:
        futs = [ex.submit(_chunk, fn, seed, cfg, lo, hi, direction)
                for lo, hi in zip(bounds, bounds[1:])]
        for fut in futs:
            merge(acc, fut.result(), direction)
    return acc
