"""Hot numeric kernels, each in two interchangeable implementations.

Every kernel exists as a plain-loop function compiled with numba's
``@njit`` and as a vectorised pure-numpy function. The module-level names
(``jacobi_eigvals``, ``weyl_min_slack``, ``choquet_sums``) are bound to the
numba versions unless numba is missing or the environment variable
``NLTRACE_DISABLE_JIT`` is set to a truthy value, in which case the numpy
versions are used. Both variants stay importable through ``KERNELS`` so they
can be cross-checked and benchmarked against each other.
"""

import math
import os

import numpy as np

__all__ = [
    "JIT_ENABLED",
    "KERNELS",
    "jacobi_eigvals",
    "weyl_min_slack",
    "choquet_sums",
]


def _env_disabled():
    flag = os.environ.get("NLTRACE_DISABLE_JIT", "")
    return flag.strip().lower() not in ("", "0", "false", "no")


try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


# ---------------------------------------------------------------------------
# cyclic complex Jacobi
# ---------------------------------------------------------------------------

def _jacobi_loop(a, tol, max_sweeps):
    n = a.shape[0]
    A = a.copy()
    diag = np.empty(n)
    off = 0.0
    sweep = 0
    while True:
        off2 = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                z = A[i, j]
                off2 += z.real * z.real + z.imag * z.imag
        off = math.sqrt(2.0 * off2)
        if off <= tol or sweep >= max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                b = abs(apq)
                if b == 0.0:
                    continue
                # phase that makes the (p, q) entry real and positive
                ph = (apq / b).conjugate()
                app = A[p, p].real
                aqq = A[q, q].real
                tau = (aqq - app) / (2.0 * b)
                sgn = 1.0 if tau >= 0.0 else -1.0
                t = sgn / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    if k == p or k == q:
                        continue
                    akp = A[k, p]
                    akq = A[k, q] * ph
                    nkp = c * akp - s * akq
                    nkq = s * akp + c * akq
                    A[k, p] = nkp
                    A[p, k] = nkp.conjugate()
                    A[k, q] = nkq
                    A[q, k] = nkq.conjugate()
                A[p, p] = app - t * b
                A[q, q] = aqq + t * b
                A[p, q] = 0.0
                A[q, p] = 0.0
        sweep += 1
    for i in range(n):
        diag[i] = A[i, i].real
    return diag, sweep, off


def _jacobi_numpy(a, tol, max_sweeps):
    A = np.array(a, dtype=np.complex128, copy=True)
    n = A.shape[0]
    iu = np.triu_indices(n, 1)
    sweep = 0
    while True:
        off = math.sqrt(2.0) * float(np.linalg.norm(A[iu]))
        if off <= tol or sweep >= max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                b = abs(apq)
                if b == 0.0:
                    continue
                ph = np.conj(apq / b)
                app = A[p, p].real
                aqq = A[q, q].real
                tau = (aqq - app) / (2.0 * b)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                colp = A[:, p].copy()
                colq = A[:, q] * ph
                newp = c * colp - s * colq
                newq = s * colp + c * colq
                A[:, p] = newp
                A[:, q] = newq
                A[p, :] = newp.conj()
                A[q, :] = newq.conj()
                A[p, p] = app - t * b
                A[q, q] = aqq + t * b
                A[p, q] = 0.0
                A[q, p] = 0.0
        sweep += 1
    return A.diagonal().real.copy(), sweep, off


# ---------------------------------------------------------------------------
# Weyl slack: min over i + j - 1 <= n of la[i] + lb[j] - lab[i + j - 1]
# ---------------------------------------------------------------------------

def _weyl_loop(la, lb, lab):
    n = lab.shape[0]
    best = np.inf
    bi = 0
    bj = 0
    for i in range(n):
        for j in range(n - i):
            s = la[i] + lb[j] - lab[i + j]
            if s < best:
                best = s
                bi = i
                bj = j
    return best, bi + 1, bj + 1


def _weyl_numpy(la, lb, lab):
    n = lab.shape[0]
    i, j = np.indices((n, n))
    valid = i + j < n
    slack = np.full((n, n), np.inf)
    slack[valid] = la[i[valid]] + lb[j[valid]] - lab[(i + j)[valid]]
    k = int(np.argmin(slack))
    bi, bj = divmod(k, n)
    return float(slack[bi, bj]), bi + 1, bj + 1


# ---------------------------------------------------------------------------
# Choquet sums: Abel form and increment form side by side
# ---------------------------------------------------------------------------

def _choquet_loop(lam, alpha):
    n = lam.shape[0]
    abel = 0.0
    incr = 0.0
    for i in range(n):
        nxt = lam[i + 1] if i + 1 < n else 0.0
        abel += (lam[i] - nxt) * alpha[i + 1]
        incr += lam[i] * (alpha[i + 1] - alpha[i])
    return abel, incr


def _choquet_numpy(lam, alpha):
    n = lam.shape[0]
    if n == 0:
        return 0.0, 0.0
    drops = lam - np.append(lam[1:], 0.0)
    abel = float(np.sum(drops * alpha[1:n + 1]))
    incr = float(np.sum(lam * np.diff(alpha[:n + 1])))
    return abel, incr


KERNELS = {
    "numpy": {
        "jacobi_eigvals": _jacobi_numpy,
        "weyl_min_slack": _weyl_numpy,
        "choquet_sums": _choquet_numpy,
    },
}

if numba is not None:
    _jit = numba.njit(cache=True, nogil=True)
    KERNELS["numba"] = {
        "jacobi_eigvals": _jit(_jacobi_loop),
        "weyl_min_slack": _jit(_weyl_loop),
        "choquet_sums": _jit(_choquet_loop),
    }

JIT_ENABLED = "numba" in KERNELS and not _env_disabled()
_active = KERNELS["numba" if JIT_ENABLED else "numpy"]

jacobi_eigvals = _active["jacobi_eigvals"]
weyl_min_slack = _active["weyl_min_slack"]
choquet_sums = _active["choquet_sums"]


def warmup():
    """Trigger JIT compilation (or cache load) of every active kernel."""
    a = np.array([[2.0, 1.0j], [-1.0j, 3.0]])
    jacobi_eigvals(a, 1e-12, 100)
    v = np.array([2.0, 1.0])
    weyl_min_slack(v, v, v)
    choquet_sums(v, np.array([0.0, 1.0, 2.0]))
