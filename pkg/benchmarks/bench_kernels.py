"""Benchmark the polynomial-evaluation backends behind the quadrature oracle.

Times the raw evaluate_terms kernel and a full oracle integral under both
the numba @njit backend and the pure numpy fallback (the one selected by
CUBEHARM_DISABLE_NUMBA=1 at import time).

    python3 benchmarks/bench_kernels.py [--points 300000] [--terms 40] [--repeats 5]
"""

import argparse
import random
import time
from fractions import Fraction

import numpy as np

from cubeharm._kernels import evaluate_terms, evaluate_terms_numba
from cubeharm.integrate import CubeDomain, Weight
from cubeharm.oracle import QuadratureSpec, numeric_integrate_cube
from cubeharm.sampling import random_poly


def time_it(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=300_000)
    ap.add_argument("--terms", type=int, default=40)
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    points = rng.uniform(-1.0, 1.0, size=(args.points, args.dim))
    exps = rng.integers(0, 6, size=(args.terms, args.dim)).astype(np.int64)
    coeffs = rng.uniform(-10.0, 10.0, size=args.terms)

    if evaluate_terms_numba is None:
        print("numba unavailable; benchmarking the numpy backend only")
        backends = ["numpy"]
    else:
        evaluate_terms(points[:128], exps, coeffs, backend="numba")  # jit warm-up
        backends = ["numba", "numpy"]

    print(f"kernel: {args.points} points x {args.terms} terms, dim {args.dim}")
    kernel_times = {}
    for backend in backends:
        t = time_it(lambda: evaluate_terms(points, exps, coeffs, backend=backend), args.repeats)
        kernel_times[backend] = t
        rate = args.points / t / 1e6
        print(f"  {backend:>5}: {t * 1e3:8.2f} ms   ({rate:6.1f} M points/s)")
    if len(backends) == 2:
        print(f"  speedup: {kernel_times['numpy'] / kernel_times['numba']:.2f}x")

    values = {}
    poly = random_poly(random.Random(1), args.dim, max_degree=8, max_terms=args.terms)
    d = CubeDomain(args.dim, Fraction(1))
    spec = QuadratureSpec(points_per_axis=24)
    print(f"oracle: cube integral, {args.dim}-dim, 24 points/axis, {len(poly.terms)} terms")
    import cubeharm._kernels as kernels_mod

    for backend in backends:
        # route the whole oracle through one backend via the env switch
        import os

        os.environ["CUBEHARM_DISABLE_NUMBA"] = "1" if backend == "numpy" else "0"
        assert kernels_mod.active_backend() == backend
        t = time_it(lambda: numeric_integrate_cube(poly, d, Weight.power(1), spec), args.repeats)
        values[backend] = numeric_integrate_cube(poly, d, Weight.power(1), spec)
        print(f"  {backend:>5}: {t * 1e3:8.2f} ms")
    os.environ.pop("CUBEHARM_DISABLE_NUMBA", None)
    if len(backends) == 2:
        drift = abs(values["numba"] - values["numpy"]) / max(1.0, abs(values["numpy"]))
        print(f"  backend value drift: {drift:.3e} relative")


if __name__ == "__main__":
    main()
