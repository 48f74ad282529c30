"""Abelian model of tau-finite-rank positive elements of a type II factor.

A :class:`StepOperator` is a simple function on ``[0, T)`` given by consecutive
segments ``(value, mass)``; the trace of a spectral projection is the total
mass of the segments it covers. Its decreasing rearrangement is the
generalized t-th eigenvalue function ``t -> lambda_t(a)``.

Cumulative masses are always formed with :func:`math.fsum` over the raw
segment masses, so any two code paths that sum the same set of segments get
bit-identical results regardless of order.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from . import _kernels
from .errors import DomainError, HypothesisError, InputError
from .report import Report
from .weights import ContinuousWeight, is_concave

__all__ = [
    "StepOperator",
    "RearrangedSpectrum",
    "rearrange",
    "lambda_t",
    "add",
    "choquet_spectral",
    "choquet_stieltjes",
    "lorentz_norm",
    "partition_approx",
    "sugeno_trace_step",
    "max_type_value",
    "min_witness",
    "stepop_from_json",
]

# subsets of up to this many segments are enumerated by max_type_value
BRUTE_FORCE_MAX_SEGMENTS = 10
_MASS_RTOL = 1e-12
# breakpoints closer than this (relative to the span) are merged by add()
_BREAK_RTOL = 1e-14


@dataclass(frozen=True, eq=False)
class StepOperator:
    """Simple function with segments ``(values[i], masses[i])`` laid out left
    to right on ``[0, sum(masses))``.

    ``cap`` bounds the total mass (1 for the II_1 model). ``signed``
    operators may carry negative values; they are only accepted by
    :func:`lorentz_norm` and :meth:`abs`.
    """

    values: np.ndarray
    masses: np.ndarray
    cap: float | None = None
    signed: bool = False

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64).ravel()
        m = np.array(self.masses, dtype=np.float64).ravel()
        if v.shape != m.shape:
            raise DomainError("values and masses must have the same length")
        if not (np.all(np.isfinite(v)) and np.all(np.isfinite(m))):
            raise DomainError("step operator data must be finite")
        if np.any(m <= 0):
            raise DomainError("segment masses must be > 0")
        if not self.signed and np.any(v < 0):
            raise DomainError("segment values must be >= 0 (use signed=True)")
        total = math.fsum(m)
        if self.cap is not None:
            if not self.cap > 0:
                raise DomainError("mass cap must be > 0")
            if total > self.cap * (1 + _MASS_RTOL):
                raise DomainError(f"total mass {total} exceeds cap {self.cap}")
        v.setflags(write=False)
        m.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "masses", m)

    @classmethod
    def from_segments(cls, segments, cap=None, signed=False) -> "StepOperator":
        segs = list(segments)
        vals = [float(v) for v, _ in segs]
        ms = [float(m) for _, m in segs]
        return cls(np.array(vals), np.array(ms), cap=cap, signed=signed)

    @classmethod
    def projection(cls, mass: float, value: float = 1.0, cap=None) -> "StepOperator":
        """``value`` times a projection of trace ``mass``."""
        return cls(np.array([value]), np.array([mass]), cap=cap)

    @property
    def segments(self) -> list[tuple[float, float]]:
        return list(zip(self.values.tolist(), self.masses.tolist()))

    @property
    def total_mass(self) -> float:
        return math.fsum(self.masses)

    @property
    def norm(self) -> float:
        """lambda_0, the largest absolute value."""
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    def abs(self) -> "StepOperator":
        return StepOperator(np.abs(self.values), self.masses, cap=self.cap)

    def apply(self, f: Callable[[np.ndarray], np.ndarray]) -> "StepOperator":
        """Functional calculus: ``f`` applied to every value."""
        return StepOperator(np.asarray(f(self.values), dtype=np.float64), self.masses,
                            cap=self.cap, signed=self.signed)

    def scale(self, k: float) -> "StepOperator":
        return StepOperator(k * self.values, self.masses, cap=self.cap, signed=self.signed)

    def to_json(self) -> dict[str, Any]:
        return {
            "segments": [{"value": v, "mass": m} for v, m in self.segments],
            "cap": self.cap,
        }

    def __repr__(self):
        return f"StepOperator({self.segments!r}, cap={self.cap!r})"


def stepop_from_json(obj) -> StepOperator:
    """Parse ``{"segments": [{"value": v, "mass": m}, ...], "cap": c}``."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        segs = [(s["value"], s["mass"]) for s in obj["segments"]]
        cap = obj.get("cap")
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed step operator JSON: {exc}") from None
    signed = any(v < 0 for v, _ in segs)
    return StepOperator.from_segments(segs, cap=cap, signed=signed)


def _require_positive(a: StepOperator):
    if a.signed and np.any(a.values < 0):
        raise DomainError("operation needs a positive step operator")


# ---------------------------------------------------------------------------
# rearrangement and generalized eigenvalues
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RearrangedSpectrum:
    """Plateaus of the decreasing rearrangement.

    ``values`` is strictly decreasing and positive; plateau ``k`` covers
    ``[ends[k-1], ends[k])`` with ``ends[-1]`` the trace of the support.
    """

    values: np.ndarray
    widths: np.ndarray
    ends: np.ndarray

    @property
    def plateaus(self) -> list[tuple[float, float]]:
        return list(zip(self.values.tolist(), self.widths.tolist()))

    def __len__(self):
        return self.values.size


def rearrange(a: StepOperator) -> RearrangedSpectrum:
    """Sort by value, merge equal values, accumulate masses.

    Zero-valued segments lie outside the support and are dropped.
    """
    _require_positive(a)
    v, m = a.values, a.masses
    order = np.argsort(-v, kind="stable")
    vs, ms = v[order], m[order]
    pos = vs > 0
    vs, ms = vs[pos], ms[pos]
    if vs.size == 0:
        return RearrangedSpectrum(np.zeros(0), np.zeros(0), np.zeros(0))
    # one group per distinct value; fsum makes sums independent of order
    stops = np.flatnonzero(np.append(vs[1:] != vs[:-1], True)) + 1
    starts = np.concatenate(([0], stops[:-1]))
    ml = ms.tolist()
    widths = np.array([math.fsum(ml[s:e]) for s, e in zip(starts, stops)])
    ends = np.array([math.fsum(ml[:e]) for e in stops])
    return RearrangedSpectrum(vs[stops - 1], widths, ends)


def _lambda_many(r: RearrangedSpectrum, t: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(r.ends, t, side="right")
    padded = np.append(r.values, 0.0)
    return padded[idx]


def lambda_t(a: StepOperator, t: float) -> float:
    """Generalized t-th eigenvalue: the right-continuous decreasing
    rearrangement evaluated at ``t``."""
    if not t >= 0:
        raise DomainError(f"t must be >= 0, got {t}")
    return float(_lambda_many(rearrange(a), np.array([float(t)]))[0])


# ---------------------------------------------------------------------------
# commuting sum
# ---------------------------------------------------------------------------

def _values_at(a: StepOperator, ends: np.ndarray, x: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(ends, x, side="right")
    return np.append(a.values, 0.0)[idx]


def add(a: StepOperator, b: StepOperator) -> StepOperator:
    """Pointwise sum on the common refinement of the two partitions; the
    shorter operator is extended by zero."""
    ea = np.cumsum(a.masses)
    eb = np.cumsum(b.masses)
    pts = np.union1d(ea, eb)
    if pts.size == 0:
        return StepOperator(np.zeros(0), np.zeros(0), cap=_cap(a, b))
    keep = np.append(np.diff(pts) > _BREAK_RTOL * pts[-1], True)
    pts = pts[keep]
    starts = np.concatenate(([0.0], pts[:-1]))
    mids = 0.5 * (starts + pts)
    vals = _values_at(a, ea, mids) + _values_at(b, eb, mids)
    return StepOperator(vals, np.diff(np.concatenate(([0.0], pts))),
                        cap=_cap(a, b), signed=a.signed or b.signed)


def _cap(a: StepOperator, b: StepOperator):
    caps = [c for c in (a.cap, b.cap) if c is not None]
    return min(caps) if caps else None


# ---------------------------------------------------------------------------
# Choquet-type traces
# ---------------------------------------------------------------------------

def _alpha_at_ends(r: RearrangedSpectrum, w: ContinuousWeight) -> np.ndarray:
    return np.concatenate(([0.0], w.evaluate_array(r.ends)))


def choquet_spectral(a: StepOperator, w: ContinuousWeight) -> float:
    """``sum_k (v_k - v_{k+1}) alpha(T_k)`` over the rearranged plateaus
    (``v_{n+1} = 0``), i.e. the layer-cake integral of
    ``s -> alpha(tau(e_(s, inf)(a)))``."""
    r = rearrange(a)
    abel, _ = _kernels.choquet_sums(r.values, _alpha_at_ends(r, w))
    return float(abel)


def choquet_stieltjes(a: StepOperator, w: ContinuousWeight) -> float:
    """``int lambda_t(a) d nu_alpha(t) = sum_k v_k (alpha(T_k) - alpha(T_{k-1}))``."""
    r = rearrange(a)
    _, stieltjes = _kernels.choquet_sums(r.values, _alpha_at_ends(r, w))
    return float(stieltjes)


def lorentz_norm(a: StepOperator, w: ContinuousWeight) -> float:
    """Lorentz norm ``int mu_t(a) d nu_alpha(t)`` for a concave weight;
    ``a`` may be signed."""
    if not is_concave(w):
        raise HypothesisError("Lorentz norm needs a concave weight")
    return choquet_stieltjes(a.abs(), w)


def _require_continuous(w: ContinuousWeight, what: str):
    if not w.continuous:
        raise HypothesisError(f"{what} needs a continuous weight, got {w.kind!r}")


def partition_approx(a: StepOperator, w: ContinuousWeight, M: int) -> float:
    """Upper sum ``sum_{i=1}^M lambda_{(i-1)/M}(a) (alpha(i/M) - alpha((i-1)/M))``
    over the uniform partition of [0, 1]. Never below the Choquet trace."""
    if M != int(M) or M < 1:
        raise DomainError(f"M must be a positive integer, got {M}")
    if a.total_mass > 1.0 + _MASS_RTOL:
        raise DomainError("partition approximation needs total mass <= 1")
    _require_continuous(w, "partition approximation")
    M = int(M)
    grid = np.arange(M + 1, dtype=np.float64) / M
    alpha = w.evaluate_array(grid)
    lam = _lambda_many(rearrange(a), grid[:-1])
    return float(np.sum(lam * np.diff(alpha)))


# ---------------------------------------------------------------------------
# Sugeno-type trace
# ---------------------------------------------------------------------------

def sugeno_trace_step(a: StepOperator, w: ContinuousWeight) -> float:
    """``sup_t lambda_t(a) ^ alpha(t)``.

    On plateau ``k`` the supremum of ``min(v_k, alpha(t))`` over
    ``[T_{k-1}, T_k)`` is ``min(v_k, alpha(T_k))`` by continuity of alpha, so
    the sup reduces to a max over plateaus.
    """
    _require_continuous(w, "Sugeno trace")
    r = rearrange(a)
    if len(r) == 0:
        return 0.0
    return float(np.max(np.minimum(r.values, w.evaluate_array(r.ends))))


def max_type_value(a: StepOperator, w: ContinuousWeight) -> float:
    """``sup{lam : lam <= alpha(tau(p)), p a p >= lam p}`` over projections
    that are unions of segments.

    For a union ``S`` of segments the best ``lam`` is
    ``min(min value on S, alpha(mass of S))``. Every subset is enumerated when
    there are at most ``BRUTE_FORCE_MAX_SEGMENTS`` positive segments;
    otherwise only upper level sets are scanned (they dominate all subsets).
    """
    _require_continuous(w, "max-type value")
    _require_positive(a)
    pos = a.values > 0
    v = a.values[pos]
    m = a.masses[pos]
    k = v.size
    if k == 0:
        return 0.0
    best = 0.0
    if k <= BRUTE_FORCE_MAX_SEGMENTS:
        for r in range(1, k + 1):
            for idx in itertools.combinations(range(k), r):
                sel = list(idx)
                lam = min(float(v[sel].min()), float(w.evaluate_array(math.fsum(m[sel]))))
                best = max(best, lam)
    else:
        for u in np.unique(v):
            sel = v >= u
            best = max(best, min(float(u), float(w.evaluate_array(math.fsum(m[sel])))))
    return best


def min_witness(a: StepOperator, w: ContinuousWeight, eps: float) -> tuple[float, Report]:
    """Projection ``q = e_(psi + eps, inf)(a)`` cutting ``a`` down below
    ``psi + eps``.

    Returns the trace of ``q`` and a report asserting
    ``alpha(tau(q)) < psi + eps`` and that every value outside ``q`` is at
    most ``psi + eps``.
    """
    if not eps > 0:
        raise DomainError(f"eps must be > 0, got {eps}")
    start = time.perf_counter()
    psi = sugeno_trace_step(a, w)
    level = psi + eps
    inside = a.values > level
    q_mass = math.fsum(a.masses[inside])
    alpha_q = float(w.evaluate_array(q_mass))
    rest = a.values[~inside]
    rest_max = float(rest.max()) if rest.size else 0.0
    small_weight = alpha_q < level
    cut_below = rest_max <= level
    passed = bool(small_weight and cut_below)
    return q_mass, Report(
        suite="min-witness",
        passed=passed,
        metric="alpha_q_minus_level",
        worst=alpha_q - level,
        witness=None if passed else {"stepop": a.to_json(), "weight": w.to_json(), "eps": eps},
        elapsed=time.perf_counter() - start,
        details={"psi": psi, "q_mass": q_mass, "alpha_q": alpha_q, "rest_max": rest_max},
    )
