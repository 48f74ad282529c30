"""Compare the numba and numpy implementations of each hot kernel.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from nltrace import _kernels


def _hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (g + g.conj().T)


def cases(rng):
    for n in (4, 8, 16, 32):
        a = _hermitian(rng, n)
        tol = 1e-12 * max(1.0, np.linalg.norm(a))
        yield f"jacobi n={n}", "jacobi_eigvals", (a, tol, 100)
    for n in (8, 64, 256):
        la, lb, lab = (np.sort(rng.random(n))[::-1] for _ in range(3))
        yield f"weyl n={n}", "weyl_min_slack", (la, lb, lab)
    for n in (8, 1000, 100000):
        lam = np.sort(rng.random(n))[::-1]
        alpha = np.concatenate(([0.0], np.cumsum(rng.random(n))))
        yield f"choquet n={n}", "choquet_sums", (lam, alpha)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if "numba" not in _kernels.KERNELS:
        raise SystemExit("numba is not installed; nothing to compare")
    rng = np.random.default_rng(0)
    print(f"{'case':<20}{'numba (us)':>14}{'numpy (us)':>14}{'speedup':>10}")
    for label, name, argv in cases(rng):
        times = {}
        for path in ("numba", "numpy"):
            fn = _kernels.KERNELS[path][name]
            fn(*[x.copy() if isinstance(x, np.ndarray) else x for x in argv])  # compile / warm
            number = 20
            t = min(timeit.repeat(lambda: fn(*argv), number=number, repeat=args.repeat))
            times[path] = 1e6 * t / number
        print(f"{label:<20}{times['numba']:>14.1f}{times['numpy']:>14.1f}{times['numpy'] / times['numba']:>9.1f}x")


if __name__ == "__main__":
    main()
