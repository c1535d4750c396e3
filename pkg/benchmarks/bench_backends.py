"""Timing comparison of the numba kernels against the pure-numpy fallback.

Covers the three hot paths: bridge-sampler element estimation, Metropolis
element estimation, and the Jacobi eigensolver. Both backends run the same
algorithms with the same random streams, so the outputs agree and only the
wall time differs.

    python3 benchmarks/bench_backends.py [--repeats 5] [--quick]
"""

import argparse
import time

import numpy as np

from effham import (
    HAS_NUMBA,
    Harmonic,
    Lattice,
    PhysicalParams,
    SamplerConfig,
    estimate_element,
    estimate_matrix,
    metropolis_estimate_element,
)
from effham.backend import get_kernels


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_element(backend, cfg, repeats):
    params, lat, pot = PhysicalParams(), Lattice.centered(1.0, 20), Harmonic(omega=0.6)
    fn = lambda: estimate_element(params, lat, pot, 9, 10, cfg, backend=backend)
    fn()  # warm the JIT cache before timing
    return best_of(fn, repeats)


def bench_metropolis(backend, cfg, repeats):
    params, lat, pot = PhysicalParams(), Lattice.centered(1.0, 20), Harmonic(omega=0.6)
    fn = lambda: metropolis_estimate_element(params, lat, pot, 9, 10, cfg,
                                             backend=backend)
    fn()
    return best_of(fn, repeats)


def bench_matrix(backend, cfg, repeats):
    params, lat, pot = PhysicalParams(), Lattice.centered(1.0, 20), Harmonic(omega=0.6)
    fn = lambda: estimate_matrix(params, lat, pot, cfg, backend=backend)
    fn()
    return best_of(fn, repeats)


def bench_jacobi(backend, n, repeats):
    rng = np.random.default_rng(42)
    a = rng.normal(size=(n, n))
    a = 0.5 * (a + a.T)
    kern = get_kernels(backend)
    kern.jacobi_eigh(np.array([[2.0, 1.0], [1.0, 2.0]]))  # warm
    return best_of(lambda: kern.jacobi_eigh(a.copy()), repeats)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--quick", action="store_true",
                    help="smaller workloads (CI-sized)")
    args = ap.parse_args()

    if not HAS_NUMBA:
        print("numba is not installed; only the numpy fallback will run")

    n_configs = 2_000 if args.quick else 20_000
    n_slices = 16 if args.quick else 64
    jac_n = 40 if args.quick else 120
    cfg = SamplerConfig(n_configs=n_configs, n_slices=n_slices, seed=11)
    met = SamplerConfig(n_configs=n_configs, n_slices=n_slices, seed=11,
                        method="metropolis")

    cases = [
        (f"bridge element ({n_configs} cfg x {n_slices} slices)",
         lambda b: bench_element(b, cfg, args.repeats)),
        (f"metropolis element ({n_configs} cfg x {n_slices} slices)",
         lambda b: bench_metropolis(b, met, args.repeats)),
        (f"full 20x20 matrix ({n_configs} cfg x {n_slices} slices)",
         lambda b: bench_matrix(b, cfg, args.repeats)),
        (f"jacobi eigh ({jac_n}x{jac_n})",
         lambda b: bench_jacobi(b, jac_n, args.repeats)),
    ]

    backends = ["numpy"] + (["numba"] if HAS_NUMBA else [])
    width = max(len(name) for name, _ in cases)
    header = f"{'case':<{width}}  " + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, run in cases:
        times = [run(b) for b in backends]
        row = f"{name:<{width}}  " + "".join(f"{t * 1e3:>10.1f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
