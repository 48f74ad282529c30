"""Choquet-type traces on matrices and the weighted Schatten (quasi-)norms
they induce.

For a positive matrix with eigenvalues ``l_1 >= l_2 >= ...`` (zero padded),
the trace is ``sum_i (l_i - l_{i+1}) alpha(i)``, equivalently
``sum_i l_i c_i`` with increments ``c_i = alpha(i) - alpha(i-1)``. Both forms
are evaluated and cross-checked on every call.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConsistencyError, DomainError, UndefinedRatioError
from .spectral import singular_values
from .weights import DiscreteWeight

__all__ = [
    "WeightedPNorm",
    "choquet_trace",
    "weighted_p_norm",
    "triangle_ratio",
    "ABEL_RTOL",
]

ABEL_RTOL = 1e-12


def _spectrum(spec) -> np.ndarray:
    lam = np.asarray(spec, dtype=np.float64).ravel()
    if not np.all(np.isfinite(lam)):
        raise DomainError("spectrum must be finite")
    if lam.size and lam[-1] < 0:
        raise DomainError("spectrum must be nonnegative")
    if np.any(np.diff(lam) > 0):
        raise DomainError("spectrum must be in decreasing order")
    return lam


def choquet_trace(spec, w: DiscreteWeight) -> float:
    """Choquet-type trace of a descending nonnegative spectrum.

    Raises
    ------
    ConsistencyError
        If the Abel-summation form and the increment form differ by more than
        ``1e-12`` relative.
    """
    lam = _spectrum(spec)
    alpha = w.table(lam.size)
    abel, incr = _kernels.choquet_sums(lam, alpha)
    scale = max(abs(abel), abs(incr))
    if abs(abel - incr) > ABEL_RTOL * scale:
        raise ConsistencyError(
            f"Abel form {abel!r} and increment form {incr!r} disagree"
        )
    return float(abel)


@dataclass(frozen=True)
class WeightedPNorm:
    """``|||a||| = phi_alpha(|a|^p)^(1/p)``; a norm for concave alpha and
    ``p >= 1``, a quasi-norm exactly when alpha is doubling."""

    weight: DiscreteWeight
    p: float = 1.0

    def __post_init__(self):
        if not self.p > 0:
            raise DomainError(f"p must be > 0, got {self.p}")

    def __call__(self, a) -> float:
        return weighted_p_norm(a, self)

    def of_singular_values(self, s) -> float:
        s = np.asarray(s, dtype=np.float64)
        return choquet_trace(s ** self.p, self.weight) ** (1.0 / self.p)


def weighted_p_norm(a, norm: WeightedPNorm) -> float:
    """Weighted Schatten p-(quasi-)norm of a square matrix; ``|a|^p`` is
    realised on the singular values, never as a matrix power."""
    return norm.of_singular_values(singular_values(a))


def triangle_ratio(a, b, norm: WeightedPNorm) -> float:
    """``|||a + b||| / (|||a||| + |||b|||)``."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise DomainError(f"dimension mismatch {a.shape} vs {b.shape}")
    den = norm(a) + norm(b)
    if den == 0:
        raise UndefinedRatioError("both norms vanish")
    return norm(a + b) / den
