"""Eigenvalues and singular values of small dense complex matrices.

Eigenvalues come from a cyclic complex Jacobi iteration applied directly to
the Hermitian matrix (see :mod:`nltrace._kernels`). All spectra are returned
as descending float arrays; the implicit tail of zeros (rank padding) is left
to the consumers.
"""

from __future__ import annotations

import json
import time
from typing import Any

import numpy as np

from . import _kernels
from .errors import ConvergenceError, DomainError, InputError, SymmetryError
from .report import Report

__all__ = [
    "as_matrix",
    "hermitian_eigenvalues",
    "singular_values",
    "weyl_check",
    "matrix_from_json",
    "matrix_to_json",
    "spectral_norm",
    "JACOBI_RTOL",
    "MAX_SWEEPS",
]

JACOBI_RTOL = 1e-12
MAX_SWEEPS = 100
HERMITIAN_RTOL = 1e-10
# eigenvalues this close to 0 (relative to the Frobenius norm) become 0
ZERO_SNAP_RTOL = 1e-12
WEYL_TOL = 1e-9


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite square complex128 array."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise SymmetryError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix has non-finite entries")
    return a


def _frob(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def check_hermitian(a: np.ndarray) -> float:
    """Raise unless ``a`` is Hermitian to tolerance; return its Frobenius norm."""
    fro = _frob(a)
    dev = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if dev > HERMITIAN_RTOL * max(1.0, fro):
        raise SymmetryError(f"matrix is not Hermitian (max |A - A*| = {dev:.3e})")
    return fro


def hermitian_eigenvalues(a, snap: bool = True) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix in decreasing order, with multiplicity.

    Parameters
    ----------
    a : array_like
        Hermitian matrix; deviation ``max|A - A*|`` must not exceed
        ``1e-10 * max(1, ||A||_F)``.
    snap : bool
        Replace eigenvalues within ``1e-12 * ||A||_F`` of zero by exact zeros.

    Raises
    ------
    SymmetryError
        Non-square or non-Hermitian input.
    ConvergenceError
        The off-diagonal norm did not reach ``1e-12 * max(1, ||A||_F)`` within
        100 sweeps.
    """
    a = as_matrix(a)
    fro = check_hermitian(a)
    n = a.shape[0]
    if n == 0:
        return np.zeros(0)
    # exact Hermitian copy so rotations preserve symmetry bit for bit
    h = np.triu(a) + np.triu(a, 1).conj().T
    h[np.diag_indices(n)] = h.diagonal().real
    tol = JACOBI_RTOL * max(1.0, fro)
    diag, sweeps, off = _kernels.jacobi_eigvals(h, tol, MAX_SWEEPS)
    if off > tol:
        raise ConvergenceError(
            f"Jacobi did not converge in {sweeps} sweeps (off-diagonal {off:.3e})",
            residual=float(off),
        )
    lam = -np.sort(-diag, kind="stable")
    if snap:
        lam[np.abs(lam) <= ZERO_SNAP_RTOL * fro] = 0.0
    return lam


def singular_values(a) -> np.ndarray:
    """Singular values in decreasing order: square roots of the eigenvalues of
    ``a* a``, clamped at zero."""
    a = as_matrix(a)
    g = a.conj().T @ a
    g = 0.5 * (g + g.conj().T)
    lam = hermitian_eigenvalues(g)
    return np.sqrt(np.clip(lam, 0.0, None))


def weyl_check(a, b, tol: float = WEYL_TOL) -> Report:
    """Check ``lambda_{i+j-1}(a+b) <= lambda_i(a) + lambda_j(b)`` for every
    valid pair of 1-based indices. ``worst`` is the minimal slack."""
    start = time.perf_counter()
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DomainError(f"dimension mismatch {a.shape} vs {b.shape}")
    la = hermitian_eigenvalues(a)
    lb = hermitian_eigenvalues(b)
    for lam, name in ((la, "a"), (lb, "b")):
        if lam.size and lam[-1] < -1e-9 * max(1.0, float(np.abs(lam).max())):
            raise DomainError(f"{name} is not positive semidefinite")
    lab = hermitian_eigenvalues(a + b)
    slack, i, j = _kernels.weyl_min_slack(la, lb, lab)
    slack = float(slack)
    passed = slack >= -tol
    return Report(
        suite="weyl",
        passed=passed,
        metric="min_slack",
        worst=slack,
        witness=None if passed else {"a": matrix_to_json(a), "b": matrix_to_json(b)},
        elapsed=time.perf_counter() - start,
        details={"i": int(i), "j": int(j)},
    )


def matrix_to_json(a) -> dict[str, Any]:
    a = np.asarray(a, dtype=np.complex128)
    return {"n": int(a.shape[0]), "re": a.real.tolist(), "im": a.imag.tolist()}


def matrix_from_json(obj) -> np.ndarray:
    """Parse ``{"n": 2, "re": [[...]], "im": [[...]]}`` (``im`` optional)."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        n = int(obj["n"])
        re = np.asarray(obj["re"], dtype=np.float64)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed matrix JSON: {exc}") from None
    if re.shape != (n, n) or im.shape != (n, n):
        raise InputError(f"matrix JSON arrays must be {n}x{n}")
    out = re + 1j * im
    if not np.all(np.isfinite(out)):
        raise InputError("matrix JSON has non-finite entries")
    return out


def spectral_norm(a) -> float:
    """Largest singular value."""
    s = singular_values(a)
    return float(s[0]) if s.size else 0.0

