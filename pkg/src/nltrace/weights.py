"""Weight functions: monotone maps with value 0 at 0 that turn projection
traces into weighted dimensions.

Two families are provided. ``DiscreteWeight`` lives on the non-negative
integers and drives the matrix traces (its argument is a rank).
``ContinuousWeight`` lives on ``[0, inf)`` or ``[0, 1]`` and drives the
step-operator model (its argument is a trace value / mass). Continuous weights
are restricted to closed-form families plus piecewise-linear and left
continuous step functions so that Stieltjes integrals against step functions
are exact sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import DomainError, InputError, UndefinedRatioError

__all__ = [
    "DiscreteWeight",
    "ContinuousWeight",
    "evaluate",
    "increments",
    "is_concave",
    "doubling_sup",
    "stieltjes_mass",
    "weight_from_json",
    "DEFAULT_HORIZON",
]

DEFAULT_HORIZON = 10**6

# relative slack used when comparing float increments/slopes
_CONCAVITY_RTOL = 1e-12
# tolerated overshoot of the unit domain coming from summing float masses
_UNIT_SLACK = 1e-12


# ---------------------------------------------------------------------------
# discrete weights
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscreteWeight:
    """Weight on the non-negative integers.

    Use the constructors :meth:`power` and :meth:`explicit` rather than
    building instances directly.

    ``explicit`` weights list ``alpha(0), ..., alpha(L-1)`` and continue with
    either a constant tail (``alpha(n) = tail`` for ``n >= L``) or an
    arithmetic tail (``alpha(n) = alpha(L-1) + (n - L + 1) * tail``).
    """

    kind: str
    theta: float = 1.0
    values: tuple[float, ...] = ()
    tail_mode: str = "constant"
    tail: float = 0.0

    def __post_init__(self):
        if self.kind == "power":
            if not (self.theta > 0 and math.isfinite(self.theta)):
                raise DomainError(f"power weight needs theta > 0, got {self.theta}")
        elif self.kind == "explicit":
            v = self.values
            if len(v) == 0 or v[0] != 0:
                raise DomainError("explicit weight must start with alpha(0) = 0")
            if any(not math.isfinite(x) or x < 0 for x in v):
                raise DomainError("explicit weight values must be finite and >= 0")
            if any(b < a for a, b in zip(v, v[1:])):
                raise DomainError("explicit weight values must be non-decreasing")
            if self.tail_mode == "constant":
                if not self.tail >= v[-1]:
                    raise DomainError("constant tail must be >= last listed value")
            elif self.tail_mode == "arithmetic":
                if not self.tail >= 0:
                    raise DomainError("arithmetic tail increment must be >= 0")
            else:
                raise DomainError(f"unknown tail mode {self.tail_mode!r}")
            if not math.isfinite(self.tail):
                raise DomainError("tail must be finite")
        else:
            raise DomainError(f"unknown discrete weight kind {self.kind!r}")

    @classmethod
    def power(cls, theta: float) -> "DiscreteWeight":
        return cls("power", theta=float(theta))

    @classmethod
    def explicit(cls, values, tail: float, mode: str = "constant") -> "DiscreteWeight":
        return cls(
            "explicit",
            values=tuple(float(x) for x in values),
            tail_mode=mode,
            tail=float(tail),
        )

    @property
    def limit(self) -> float:
        """alpha(inf), the limit at infinity."""
        if self.kind == "power":
            return math.inf
        if self.tail_mode == "constant":
            return self.tail
        return math.inf if self.tail > 0 else self.values[-1]

    def table(self, n_max: int) -> np.ndarray:
        """Array ``[alpha(0), alpha(1), ..., alpha(n_max)]``."""
        n = np.arange(n_max + 1, dtype=np.float64)
        return self._eval_array(n)

    def _eval_array(self, n: np.ndarray) -> np.ndarray:
        if self.kind == "power":
            return n ** self.theta
        v = np.asarray(self.values)
        L = len(v)
        idx = n.astype(np.int64)
        out = np.empty(n.shape, dtype=np.float64)
        head = idx < L
        out[head] = v[idx[head]]
        if self.tail_mode == "constant":
            out[~head] = self.tail
        else:
            out[~head] = v[-1] + (idx[~head] - L + 1) * self.tail
        return out

    def __call__(self, n):
        return evaluate(self, n)

    def to_json(self) -> dict[str, Any]:
        if self.kind == "power":
            return {"kind": "power", "theta": self.theta}
        return {
            "kind": "explicit",
            "values": list(self.values),
            "tail": {"mode": self.tail_mode, "value": self.tail},
        }


# ---------------------------------------------------------------------------
# continuous weights
# ---------------------------------------------------------------------------

_DOMAINS = {"half-line": math.inf, "unit": 1.0}


@dataclass(frozen=True)
class ContinuousWeight:
    """Weight on ``[0, inf)`` (``domain="half-line"``) or ``[0, 1]``
    (``domain="unit"``).

    Kinds
    -----
    power
        ``x ** theta``.
    cap
        ``min(x, t)``; the Ky Fan weight.
    indicator
        0 at 0 and 1 elsewhere; recovers the operator norm.
    pwl
        continuous piecewise-linear through ``(x[k], y[k])`` with
        ``x[0] = y[0] = 0``, extended with ``final_slope`` past ``x[-1]``.
    step
        left-continuous step function: ``y[0]`` on ``(0, x[0]]``, ``y[k]`` on
        ``(x[k-1], x[k]]`` and ``y[-1]`` past ``x[-1]``; ``len(y) == len(x) + 1``.

    ``indicator`` and ``step`` are only left continuous; operations that need a
    continuous weight reject them (see :attr:`continuous`).
    """

    kind: str
    domain: str = "half-line"
    theta: float = 1.0
    t: float = 1.0
    x: tuple[float, ...] = ()
    y: tuple[float, ...] = ()
    final_slope: float = 0.0
    _xs: np.ndarray = field(init=False, repr=False, compare=False)
    _ys: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.domain not in _DOMAINS:
            raise DomainError(f"unknown domain {self.domain!r}")
        k = self.kind
        if k == "power":
            if not (self.theta > 0 and math.isfinite(self.theta)):
                raise DomainError(f"power weight needs theta > 0, got {self.theta}")
        elif k == "cap":
            if not (self.t > 0 and math.isfinite(self.t)):
                raise DomainError(f"cap weight needs t > 0, got {self.t}")
        elif k == "indicator":
            pass
        elif k == "pwl":
            xs, ys = self.x, self.y
            if len(xs) < 2 or len(xs) != len(ys):
                raise DomainError("pwl needs matching x, y with at least two points")
            if xs[0] != 0 or ys[0] != 0:
                raise DomainError("pwl must start at (0, 0)")
            if any(b <= a for a, b in zip(xs, xs[1:])):
                raise DomainError("pwl breakpoints must be strictly increasing")
            if any(b < a for a, b in zip(ys, ys[1:])):
                raise DomainError("pwl values must be non-decreasing")
            if not (self.final_slope >= 0 and math.isfinite(self.final_slope)):
                raise DomainError("pwl final slope must be finite and >= 0")
            if not all(math.isfinite(v) for v in xs + ys):
                raise DomainError("pwl data must be finite")
        elif k == "step":
            xs, ys = self.x, self.y
            if len(ys) != len(xs) + 1:
                raise DomainError("step weight needs len(y) == len(x) + 1")
            if any(v <= 0 for v in xs[:1]) or any(b <= a for a, b in zip(xs, xs[1:])):
                raise DomainError("step jump points must be positive and increasing")
            if ys[0] < 0 or any(b < a for a, b in zip(ys, ys[1:])):
                raise DomainError("step levels must be >= 0 and non-decreasing")
            if not all(math.isfinite(v) for v in xs + ys):
                raise DomainError("step data must be finite")
        else:
            raise DomainError(f"unknown continuous weight kind {k!r}")
        object.__setattr__(self, "_xs", np.asarray(self.x, dtype=np.float64))
        object.__setattr__(self, "_ys", np.asarray(self.y, dtype=np.float64))

    # constructors -----------------------------------------------------------

    @classmethod
    def power(cls, theta: float, domain: str = "half-line") -> "ContinuousWeight":
        return cls("power", domain=domain, theta=float(theta))

    @classmethod
    def cap(cls, t: float, domain: str = "half-line") -> "ContinuousWeight":
        return cls("cap", domain=domain, t=float(t))

    @classmethod
    def indicator(cls, domain: str = "half-line") -> "ContinuousWeight":
        return cls("indicator", domain=domain)

    @classmethod
    def pwl(cls, x, y, final_slope: float = 0.0, domain: str = "half-line") -> "ContinuousWeight":
        return cls(
            "pwl",
            domain=domain,
            x=tuple(float(v) for v in x),
            y=tuple(float(v) for v in y),
            final_slope=float(final_slope),
        )

    @classmethod
    def step(cls, x, y, domain: str = "half-line") -> "ContinuousWeight":
        return cls(
            "step",
            domain=domain,
            x=tuple(float(v) for v in x),
            y=tuple(float(v) for v in y),
        )

    # properties -------------------------------------------------------------

    @property
    def sup_domain(self) -> float:
        return _DOMAINS[self.domain]

    @property
    def continuous(self) -> bool:
        return self.kind not in ("indicator", "step")

    @property
    def left_continuous_only(self) -> bool:
        return not self.continuous

    @property
    def limit(self) -> float:
        """alpha(inf); for the unit domain this is alpha(1)."""
        if self.domain == "unit":
            return float(self._eval_array(np.array([1.0]))[0])
        if self.kind == "power":
            return math.inf
        if self.kind == "cap":
            return self.t
        if self.kind == "indicator":
            return 1.0
        if self.kind == "pwl":
            return math.inf if self.final_slope > 0 else self.y[-1]
        return self.y[-1]

    # evaluation -------------------------------------------------------------

    def _eval_array(self, s: np.ndarray) -> np.ndarray:
        k = self.kind
        if k == "power":
            return s ** self.theta
        if k == "cap":
            return np.minimum(s, self.t)
        if k == "indicator":
            return (s > 0).astype(np.float64)
        if k == "pwl":
            xs, ys = self._xs, self._ys
            out = np.interp(s, xs, ys)
            beyond = s > xs[-1]
            out[beyond] = ys[-1] + self.final_slope * (s[beyond] - xs[-1])
            return out
        # step: level index = number of jump points strictly below s
        idx = np.searchsorted(self._xs, s, side="left")
        out = self._ys[idx]
        return np.where(s > 0, out, 0.0)

    def evaluate_array(self, s) -> np.ndarray:
        """Vectorised evaluation on finite points of the domain."""
        s = np.asarray(s, dtype=np.float64)
        if np.any(s < 0) or np.any(np.isnan(s)):
            raise DomainError("weight argument must be >= 0")
        if self.domain == "unit":
            if np.any(s > 1.0 + _UNIT_SLACK):
                raise DomainError("argument outside the unit domain [0, 1]")
            s = np.minimum(s, 1.0)
        return self._eval_array(np.atleast_1d(s)).reshape(s.shape)

    def _eval_clamped(self, s: np.ndarray) -> np.ndarray:
        # alpha(s) = alpha(1) for s > 1 on the unit domain
        if self.domain == "unit":
            s = np.minimum(s, 1.0)
        return self._eval_array(s)

    def __call__(self, s):
        return evaluate(self, s)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind}
        if self.kind == "power":
            out["theta"] = self.theta
        elif self.kind == "cap":
            out["t"] = self.t
        elif self.kind == "pwl":
            out.update(x=list(self.x), y=list(self.y), final_slope=self.final_slope)
        elif self.kind == "step":
            out.update(x=list(self.x), y=list(self.y))
        out["domain"] = self.domain
        return out


Weight = DiscreteWeight | ContinuousWeight


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def evaluate(w: Weight, x) -> float:
    """alpha(x). ``x = inf`` returns the limit at infinity."""
    x = float(x)
    if math.isnan(x) or x < 0:
        raise DomainError(f"weight argument must be >= 0, got {x}")
    if math.isinf(x):
        return w.limit
    if isinstance(w, DiscreteWeight):
        if x != int(x):
            raise DomainError(f"discrete weight needs an integer argument, got {x}")
        return float(w._eval_array(np.array([x]))[0])
    return float(w.evaluate_array(np.array([x]))[0])


def increments(w: DiscreteWeight, n: int) -> float:
    """c_n = alpha(n) - alpha(n - 1) for n >= 1."""
    if n < 1 or n != int(n):
        raise DomainError(f"increment index must be a positive integer, got {n}")
    a = w._eval_array(np.array([n - 1, n], dtype=np.float64))
    return float(a[1] - a[0])


def is_concave(w: Weight, horizon: int = DEFAULT_HORIZON) -> bool:
    """Whether the increments (discrete) or slopes (continuous) never increase.

    Closed-form kinds are decided symbolically; explicit discrete weights are
    checked on ``1..horizon`` (only the listed part and the first tail steps
    can break concavity, so the scan is short).
    """
    if isinstance(w, DiscreteWeight):
        if horizon < 2:
            raise DomainError("concavity horizon must be >= 2")
        if w.kind == "power":
            return w.theta <= 1.0
        n_max = min(horizon, len(w.values) + 2)
        c = np.diff(w.table(n_max))
        tol = _CONCAVITY_RTOL * max(1.0, float(np.max(np.abs(c))))
        return bool(np.all(np.diff(c) <= tol))
    k = w.kind
    if k == "power":
        return w.theta <= 1.0
    if k in ("cap", "indicator"):
        return True
    if k == "step":
        # a jump away from 0 is never concave
        levels = np.asarray(w.y)
        return bool(np.all(levels[1:] == levels[0]))
    slopes = list(np.diff(w._ys) / np.diff(w._xs))
    slopes.append(w.final_slope)
    if w.domain == "unit":
        # only pieces starting inside [0, 1) matter
        slopes = slopes[: int(np.searchsorted(w._xs, 1.0, side="left"))]
    slopes = np.asarray(slopes)
    tol = _CONCAVITY_RTOL * max(1.0, float(np.max(np.abs(slopes))))
    return bool(np.all(np.diff(slopes) <= tol))


def doubling_sup(w: Weight, horizon: float = DEFAULT_HORIZON) -> float:
    """sup of alpha(2s) / alpha(s) over s in (0, horizon] with alpha(s) > 0.

    On the unit domain the range is (0, 1] with alpha(s) = alpha(1) for s > 1.
    Returns ``inf`` when the ratio is unbounded (a zero of alpha followed by a
    positive value of alpha(2s)). Raises :class:`UndefinedRatioError` when
    alpha vanishes on the whole range.
    """
    if not horizon > 0:
        raise DomainError("doubling horizon must be > 0")
    if isinstance(w, DiscreteWeight):
        return _doubling_discrete(w, int(horizon))
    H = min(float(horizon), w.sup_domain)
    k = w.kind
    if k == "power":
        return 2.0 ** w.theta
    if k == "cap":
        return 2.0
    if k == "indicator":
        return 1.0
    if k == "step":
        return _doubling_step(w, H)
    return _doubling_pwl(w, H)


def _doubling_discrete(w: DiscreteWeight, horizon: int) -> float:
    if horizon < 1:
        raise DomainError("discrete doubling horizon must be >= 1")
    if w.kind == "power":
        return 2.0 ** w.theta
    if w.tail_mode == "constant":
        # ratio is 1 once n passes the listed part (or 0/0)
        horizon = min(horizon, len(w.values) + 1)
    table = w.table(2 * horizon)
    n = np.arange(1, horizon + 1)
    den = table[n]
    num = table[2 * n]
    pos = den > 0
    if not np.any(pos):
        raise UndefinedRatioError("alpha vanishes on the whole doubling range")
    return float(np.max(num[pos] / den[pos]))


def _candidate_knots(w: ContinuousWeight, H: float) -> np.ndarray:
    pts = [H]
    for xj in w.x:
        if xj > 0:
            pts.extend([xj, xj / 2.0])
    if w.domain == "unit":
        pts.extend([1.0, 0.5])
    pts = np.unique(np.asarray(pts))
    return pts[(pts > 0) & (pts <= H)]


def _doubling_step(w: ContinuousWeight, H: float) -> float:
    # the ratio is constant between consecutive knots, and left continuity
    # puts each knot in the piece to its left
    s = _candidate_knots(w, H)
    den = w._eval_clamped(s)
    num = w._eval_clamped(2.0 * s)
    pos = den > 0
    if not np.any(pos):
        raise UndefinedRatioError("alpha vanishes on the whole doubling range")
    return float(np.max(num[pos] / den[pos]))


def _doubling_pwl(w: ContinuousWeight, H: float) -> float:
    knots = _candidate_knots(w, H)
    ends = np.concatenate(([0.0], knots))
    D = w._eval_clamped(ends)
    N = w._eval_clamped(2.0 * ends)
    best = -math.inf
    for i in range(1, len(ends)):
        dl, dr, nl, nr = D[i - 1], D[i], N[i - 1], N[i]
        if dr <= 0:
            continue
        # both sides affine on [l, r]: the ratio is monotone there
        if dl > 0:
            cand = max(nl / dl, nr / dr)
        elif nl > 0:
            return math.inf
        else:
            cand = nr / dr
        best = max(best, cand)
    if best == -math.inf:
        raise UndefinedRatioError("alpha vanishes on the whole doubling range")
    return float(best)


def stieltjes_mass(w: ContinuousWeight, a: float, b: float) -> float:
    """Mass of [a, b) under the Lebesgue-Stieltjes measure of alpha."""
    if a < 0 or b < 0:
        raise DomainError("interval endpoints must be >= 0")
    if a > b:
        raise DomainError(f"empty-or-reversed interval [{a}, {b})")
    if a == b:
        return 0.0
    return evaluate(w, b) - evaluate(w, a)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

_DOMAIN_ALIASES = {
    "half-line": "half-line",
    "[0,inf)": "half-line",
    "infinite": "half-line",
    "unit": "unit",
    "[0,1]": "unit",
}


def weight_from_json(obj: dict[str, Any], model: str | None = None) -> Weight:
    """Build a weight from its JSON description.

    ``model`` is ``"discrete"``, ``"continuous"`` or ``None``. With ``None``
    the kind decides (``explicit`` is discrete; ``cap``, ``indicator``,
    ``pwl``, ``step`` are continuous) and ``power`` is discrete unless a
    ``domain`` key is present.
    """
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("weight JSON must be an object with a 'kind' field")
    kind = obj["kind"]
    if model is None:
        if kind == "explicit":
            model = "discrete"
        elif kind == "power":
            model = "continuous" if "domain" in obj else "discrete"
        else:
            model = "continuous"
    try:
        if model == "discrete":
            if kind == "power":
                return DiscreteWeight.power(obj["theta"])
            if kind == "explicit":
                tail = obj.get("tail", {})
                mode = tail.get("mode", "constant")
                if mode == "constant":
                    value = tail.get("value", obj["values"][-1])
                else:
                    value = tail.get("increment", tail.get("value", 0.0))
                return DiscreteWeight.explicit(obj["values"], value, mode)
            raise InputError(f"kind {kind!r} is not a discrete weight")
        domain = _DOMAIN_ALIASES.get(obj.get("domain", "half-line"))
        if domain is None:
            raise InputError(f"unknown domain {obj.get('domain')!r}")
        if kind == "power":
            return ContinuousWeight.power(obj["theta"], domain)
        if kind == "cap":
            return ContinuousWeight.cap(obj["t"], domain)
        if kind == "indicator":
            return ContinuousWeight.indicator(domain)
        if kind == "pwl":
            return ContinuousWeight.pwl(obj["x"], obj["y"], obj.get("final_slope", 0.0), domain)
        if kind == "step":
            return ContinuousWeight.step(obj["x"], obj["y"], domain)
        raise InputError(f"kind {kind!r} is not a continuous weight")
    except KeyError as exc:
        raise InputError(f"weight JSON missing field {exc}") from None
    except TypeError as exc:
        raise InputError(f"malformed weight JSON: {exc}") from None
