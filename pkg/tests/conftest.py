import numpy as np
import pytest

from nltrace import _kernels

KERNEL_NAMES = ("jacobi_eigvals", "weyl_min_slack", "choquet_sums")


@pytest.fixture(params=sorted(_kernels.KERNELS))
def kernel_path(request, monkeypatch):
    """Run a test once per kernel implementation (numba and numpy)."""
    impl = _kernels.KERNELS[request.param]
    for name in KERNEL_NAMES:
        monkeypatch.setattr(_kernels, name, impl[name])
    return request.param


@pytest.fixture
def np_rng():
    return np.random.default_rng(20240611)


def hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (g + g.conj().T)


def psd(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return g.conj().T @ g
