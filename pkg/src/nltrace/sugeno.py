"""Sugeno-type traces on matrices, the metric they induce, and the extension
to arbitrary (non-positive) matrices.

With ``tau`` the rank, the trace of a positive matrix with eigenvalues
``l_1 >= l_2 >= ...`` is ``max_i min(l_i, alpha(i))``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, HypothesisError
from .spectral import as_matrix, hermitian_eigenvalues, singular_values
from .weights import DiscreteWeight, is_concave

__all__ = ["SugenoTrace", "sugeno_trace", "sugeno_metric", "sugeno_extend", "PSD_RTOL"]

PSD_RTOL = 1e-9
SPLIT_RTOL = 1e-12


@dataclass(frozen=True)
class SugenoTrace:
    weight: DiscreteWeight

    def of_spectrum(self, lam) -> float:
        """``max_i min(lam_i, alpha(i))`` for a descending nonnegative sequence."""
        lam = np.asarray(lam, dtype=np.float64).ravel()
        if lam.size == 0:
            return 0.0
        if np.any(np.diff(lam) > 0):
            raise DomainError("spectrum must be in decreasing order")
        alpha = self.weight.table(lam.size)[1:]
        return float(max(0.0, np.max(np.minimum(lam, alpha))))

    def __call__(self, a) -> float:
        return sugeno_trace(a, self)


def sugeno_trace(a, st: SugenoTrace) -> float:
    """Sugeno-type trace of a positive semidefinite matrix.

    Raises
    ------
    DomainError
        If some eigenvalue is below ``-1e-9 * ||a||_F``.
    """
    a = as_matrix(a)
    lam = hermitian_eigenvalues(a)
    fro = float(np.linalg.norm(a))
    if lam.size and lam[-1] < -PSD_RTOL * fro:
        raise DomainError(f"matrix is not positive semidefinite (min eigenvalue {lam[-1]:.3e})")
    return st.of_spectrum(np.clip(lam, 0.0, None))


def sugeno_metric(a, b, st: SugenoTrace, allow_nonconcave: bool = False) -> float:
    """``d(a, b) = psi(|a - b|)``, evaluated on the singular values of ``a - b``.

    The triangle inequality is only guaranteed for concave weights; pass
    ``allow_nonconcave=True`` to evaluate anyway (falsification runs).
    """
    if not allow_nonconcave and not is_concave(st.weight):
        raise HypothesisError("Sugeno metric needs a concave weight")
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DomainError(f"dimension mismatch {a.shape} vs {b.shape}")
    return st.of_spectrum(singular_values(a - b))


def _split(h: np.ndarray, thr: float) -> tuple[np.ndarray, np.ndarray]:
    # spectra of the positive and negative parts of a Hermitian matrix
    lam = hermitian_eigenvalues(h, snap=False)
    pos = lam[lam >= thr]
    neg = -lam[lam <= -thr][::-1]
    return pos, neg


def sugeno_extend(a, st: SugenoTrace) -> complex:
    """``psi(a1) - psi(a2) + i (psi(a3) - psi(a4))`` where
    ``a = a1 - a2 + i (a3 - a4)`` splits the Hermitian real and imaginary
    parts into orthogonal positive and negative parts.

    Eigenvalues within ``1e-12 * ||a||_F`` of zero are dropped from both parts.
    """
    a = as_matrix(a)
    thr = SPLIT_RTOL * float(np.linalg.norm(a))
    thr = thr if thr > 0 else np.finfo(float).tiny
    re = 0.5 * (a + a.conj().T)
    im = -0.5j * (a - a.conj().T)
    p1, p2 = _split(re, thr)
    p3, p4 = _split(im, thr)
    real = st.of_spectrum(p1) - st.of_spectrum(p2)
    imag = st.of_spectrum(p3) - st.of_spectrum(p4)
    return complex(real, imag)
