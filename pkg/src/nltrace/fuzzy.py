"""Choquet and Sugeno integrals of simple functions against monotone measures
on a finite ground set ``{0, ..., n-1}``.

Subsets are bitmasks: point ``i`` is bit ``i``, so ``0b01`` is ``{0}``.
A measure stores one value per mask; entries that were never supplied are
NaN and raise :class:`InputError` if an integral needs them.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .errors import DomainError, InputError

__all__ = [
    "MonotoneMeasure",
    "monotone_closure",
    "as_function",
    "function_from_json",
    "choquet_integral",
    "sugeno_integral",
    "layer_cake",
    "is_comonotone",
    "MAX_GROUND",
    "EXHAUSTIVE_MAX",
]

MAX_GROUND = 20
EXHAUSTIVE_MAX = 12
_CHAINS = 256


def monotone_closure(values: np.ndarray, n: int) -> np.ndarray:
    """Smallest monotone set function above ``values``: running max over the
    subset lattice, one coordinate at a time."""
    mu = np.array(values, dtype=np.float64)
    idx = np.arange(1 << n)
    for i in range(n):
        lo = idx[(idx >> i) & 1 == 0]
        mu[lo | (1 << i)] = np.maximum(mu[lo | (1 << i)], mu[lo])
    return mu


class MonotoneMeasure:
    """Monotone set function on ``n <= 20`` points.

    Monotonicity is checked on every covering pair ``A, A + {i}`` for
    ``n <= 12`` and along 256 random maximal chains above that.
    """

    def __init__(self, n: int, mu, validate: bool = True):
        n = int(n)
        if not 0 <= n <= MAX_GROUND:
            raise DomainError(f"ground set size must be in [0, {MAX_GROUND}], got {n}")
        mu = np.array(mu, dtype=np.float64).ravel()
        if mu.size != 1 << n:
            raise DomainError(f"expected {1 << n} subset values, got {mu.size}")
        if np.isnan(mu[0]):
            mu[0] = 0.0
        self.n = n
        self.mu = mu
        self.mu.setflags(write=False)
        if validate:
            self.validate()

    @classmethod
    def additive(cls, weights) -> "MonotoneMeasure":
        """``mu(A) = sum_{i in A} w_i``."""
        w = np.asarray(weights, dtype=np.float64)
        n = w.size
        idx = np.arange(1 << n)
        bits = (idx[:, None] >> np.arange(n)) & 1
        return cls(n, bits @ w)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def __getitem__(self, mask: int) -> float:
        return float(self.mu[mask])

    def validate(self) -> None:
        mu = self.mu
        if mu[0] != 0:
            raise DomainError("measure of the empty set must be 0")
        known = mu[~np.isnan(mu)]
        if np.any(known < 0):
            raise DomainError("measure values must be >= 0")
        if self.n <= EXHAUSTIVE_MAX:
            idx = np.arange(1 << self.n)
            for i in range(self.n):
                lo = idx[(idx >> i) & 1 == 0]
                if np.any(mu[lo] > mu[lo | (1 << i)]):
                    raise DomainError(f"measure is not monotone (adding point {i})")
        else:
            rng = np.random.default_rng(0)
            for _ in range(_CHAINS):
                masks = np.cumsum(1 << rng.permutation(self.n))
                chain = np.concatenate(([0.0], mu[masks]))
                chain = chain[~np.isnan(chain)]
                if np.any(np.diff(chain) < 0):
                    raise DomainError("measure is not monotone along a sampled chain")

    def to_json(self) -> dict[str, Any]:
        width = max(self.n, 1)
        out = {}
        for mask in range(1, 1 << self.n):
            if not np.isnan(self.mu[mask]):
                out[f"0b{mask:0{width}b}"] = float(self.mu[mask])
        return {"n": self.n, "mu": out}

    @classmethod
    def from_json(cls, obj) -> "MonotoneMeasure":
        """Parse ``{"n": 2, "mu": {"0b01": 0.5, "0b10": 0.25, "0b11": 1.0}}``."""
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            n = int(obj["n"])
            entries = obj["mu"]
            if not 0 <= n <= MAX_GROUND:
                raise DomainError(f"ground set size must be in [0, {MAX_GROUND}]")
            mu = np.full(1 << n, np.nan)
            mu[0] = 0.0
            for key, val in entries.items():
                mask = int(key, 2) if isinstance(key, str) else int(key)
                if not 0 <= mask < 1 << n:
                    raise InputError(f"subset {key!r} outside a ground set of size {n}")
                mu[mask] = float(val)
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            if isinstance(exc, (DomainError, InputError)):
                raise
            raise InputError(f"malformed measure JSON: {exc}") from None
        return cls(n, mu)

    def __repr__(self):
        return f"MonotoneMeasure(n={self.n})"


def as_function(f, n: int | None = None) -> np.ndarray:
    """Validate a simple function: finite, nonnegative, length ``n``."""
    f = np.asarray(f, dtype=np.float64).ravel()
    if n is not None and f.size != n:
        raise DomainError(f"function has {f.size} values, ground set has {n}")
    if not np.all(np.isfinite(f)) or np.any(f < 0):
        raise DomainError("function values must be finite and >= 0")
    return f


def function_from_json(obj) -> np.ndarray:
    """Parse ``{"f": [3, 1]}``."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        return as_function(obj["f"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed function JSON: {exc}") from None


def _chain(f: np.ndarray, mu: MonotoneMeasure) -> tuple[np.ndarray, np.ndarray]:
    # values sorted descending and the measures of the upper sets along the chain
    order = np.argsort(-f, kind="stable")
    masks = np.cumsum(1 << order)
    m = mu.mu[masks]
    if np.any(np.isnan(m)):
        bad = int(masks[np.isnan(m)][0])
        raise InputError(f"measure has no value for subset 0b{bad:b}")
    return f[order], m


def choquet_integral(f, mu: MonotoneMeasure) -> float:
    """``sum_i (f_(i) - f_(i+1)) mu({(1), ..., (i)})`` over the decreasing
    arrangement, with ``f_(n+1) = 0``."""
    f = as_function(f, mu.n)
    if f.size == 0:
        return 0.0
    fs, m = _chain(f, mu)
    gaps = fs - np.append(fs[1:], 0.0)
    use = gaps > 0
    return float(np.sum(gaps[use] * m[use]))


def sugeno_integral(f, mu: MonotoneMeasure) -> float:
    """``max_i min(f_(i), mu({(1), ..., (i)}))``."""
    f = as_function(f, mu.n)
    if f.size == 0:
        return 0.0
    fs, m = _chain(f, mu)
    return float(np.max(np.minimum(fs, m)))


def layer_cake(f, mu: MonotoneMeasure) -> float:
    """``int_0^inf mu({f >= s}) ds`` summed over the breakpoints of ``f``;
    independent of the sorted-permutation formula."""
    f = as_function(f, mu.n)
    levels = np.unique(np.append(f, 0.0))
    total = 0.0
    bits = 1 << np.arange(mu.n)
    for lo, hi in zip(levels[:-1], levels[1:]):
        mask = int(np.sum(bits[f >= hi]))
        val = mu.mu[mask]
        if np.isnan(val):
            raise InputError(f"measure has no value for subset 0b{mask:b}")
        total += (hi - lo) * val
    return float(total)


def is_comonotone(f, g) -> bool:
    """``(f(s) - f(t)) (g(s) - g(t)) >= 0`` for all pairs, decided on signs so
    no product can underflow."""
    f = np.asarray(f, dtype=np.float64).ravel()
    g = np.asarray(g, dtype=np.float64).ravel()
    if f.shape != g.shape:
        raise DomainError(f"length mismatch {f.size} vs {g.size}")
    sf = np.sign(f[:, None] - f[None, :])
    sg = np.sign(g[:, None] - g[None, :])
    return bool(np.all(sf * sg >= 0))
