"""Random inputs for the property suites, all driven by :class:`Xoshiro256`."""

from __future__ import annotations

import numpy as np

from ..fuzzy import MonotoneMeasure, monotone_closure
from ..stepops import StepOperator
from ..weights import ContinuousWeight
from .rng import Xoshiro256

__all__ = [
    "random_complex",
    "random_hermitian",
    "random_psd",
    "random_unitary",
    "random_step_operator",
    "random_monotone_measure",
    "random_comonotone_pair",
    "random_increasing_pwl",
    "random_concave_pwl",
    "STEP_MODES",
]

STEP_MODES = ("float", "rational", "dyadic")
# rational mode draws small integers over this denominator
RATIONAL_DEN = 8
# dyadic mode lays breakpoints on this grid inside [0, 1]
DYADIC_BITS = 6


def random_complex(n: int, rng: Xoshiro256) -> np.ndarray:
    """Matrix with independent standard complex normal entries."""
    return rng.normals(n, n) + 1j * rng.normals(n, n)


def random_hermitian(n: int, rng: Xoshiro256) -> np.ndarray:
    """``(G + G*) / 2`` with ``G`` complex Gaussian."""
    g = random_complex(n, rng)
    return 0.5 * (g + g.conj().T)


def random_psd(n: int, rng: Xoshiro256) -> np.ndarray:
    """``G* G`` with ``G`` complex Gaussian."""
    g = random_complex(n, rng)
    return g.conj().T @ g


def random_unitary(n: int, rng: Xoshiro256) -> np.ndarray:
    """Haar unitary from the QR factorisation of a complex Gaussian matrix,
    with the phases of ``R``'s diagonal folded back into ``Q``."""
    q, r = np.linalg.qr(random_complex(n, rng))
    d = np.diag(r)
    ph = np.where(np.abs(d) > 0, d / np.abs(d), 1.0)
    return q * ph[None, :]


def random_step_operator(k: int, rng: Xoshiro256, mode: str = "float",
                         cap: float | None = None) -> StepOperator:
    """Step operator with ``k`` segments.

    Modes
    -----
    float
        values and masses ``|N(0, 1)|``.
    rational
        values in ``{0, 1/8, ..., 2}`` and masses in ``{1/8, ..., 2}``; all
        downstream sums and products are exact.
    dyadic
        ``|N(0, 1)|`` values on a partition of ``[0, 1)`` (or a prefix of it)
        with breakpoints on the ``2**-6`` grid; total mass at most 1.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if mode == "float":
        vals = [abs(rng.normal()) for _ in range(k)]
        masses = [max(abs(rng.normal()), 2.0 ** -20) for _ in range(k)]
    elif mode == "rational":
        vals = [rng.integers(0, 2 * RATIONAL_DEN) / RATIONAL_DEN for _ in range(k)]
        masses = [rng.integers(1, 2 * RATIONAL_DEN) / RATIONAL_DEN for _ in range(k)]
    elif mode == "dyadic":
        grid = 1 << DYADIC_BITS
        k = min(k, grid)
        # k distinct cut points in 1..grid, the last one fixes the support
        cuts = sorted(int(c) + 1 for c in rng.permutation(grid)[:k])
        edges = [0] + cuts
        masses = [(b - a) / grid for a, b in zip(edges, edges[1:])]
        vals = [abs(rng.normal()) for _ in range(k)]
        cap = 1.0 if cap is None else cap
    else:
        raise ValueError(f"unknown step mode {mode!r}")
    return StepOperator(np.array(vals), np.array(masses), cap=cap)


def random_monotone_measure(n: int, rng: Xoshiro256) -> MonotoneMeasure:
    """Monotone closure of i.i.d. uniform draws on every nonempty subset."""
    raw = rng.uniforms(1 << n)
    raw[0] = 0.0
    return MonotoneMeasure(n, monotone_closure(raw, n))


def random_comonotone_pair(n: int, rng: Xoshiro256, ties: bool = False):
    """Two functions sorted along one common random permutation.

    With ``ties`` the values are rounded to eighths so equal values occur.
    """
    perm = rng.permutation(n)
    f = np.sort(rng.uniforms(n) * 4)[::-1]
    g = np.sort(rng.uniforms(n) * 4)[::-1]
    if ties:
        f = np.round(f * 2) / 8
        g = np.round(g * 2) / 8
    ff = np.empty(n)
    gg = np.empty(n)
    ff[perm] = f
    gg[perm] = g
    return ff, gg


def random_increasing_pwl(rng: Xoshiro256, pieces: int = 3):
    """Strictly increasing piecewise-linear ``h`` with ``h(0) = 0``, linear
    past its last knot. Returns a vectorised callable."""
    xs = np.concatenate(([0.0], np.cumsum([rng.uniform(0.2, 1.0) for _ in range(pieces)])))
    slopes = np.array([rng.uniform(0.1, 3.0) for _ in range(pieces)])
    ys = np.concatenate(([0.0], np.cumsum(slopes * np.diff(xs))))
    last = slopes[-1]

    def h(v):
        v = np.asarray(v, dtype=np.float64)
        out = np.interp(v, xs, ys)
        return np.where(v > xs[-1], ys[-1] + last * (v - xs[-1]), out)

    return h


def random_concave_pwl(rng: Xoshiro256, pieces: int = 3, domain: str = "half-line") -> ContinuousWeight:
    """Concave increasing piecewise-linear weight (decreasing slopes)."""
    span = 1.0 if domain == "unit" else 4.0
    cuts = np.sort(rng.uniforms(pieces - 1)) * span
    xs = np.concatenate(([0.0], cuts, [span]))
    xs = np.unique(xs)
    slopes = np.sort([rng.uniform(0.05, 2.0) for _ in range(xs.size)])[::-1]
    ys = np.concatenate(([0.0], np.cumsum(slopes[:-1] * np.diff(xs))))
    final = slopes[-1] if domain == "half-line" else 0.0
    return ContinuousWeight.pwl(xs, ys, final_slope=final, domain=domain)
