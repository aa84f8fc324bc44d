"""Time the modular characteristic-polynomial kernel on both backends.

    python3 benchmarks/bench_kernels.py --sizes 50 100 200 --repeat 3

Inputs are T1 T2 edge-operator products of random (3,2)-biregular graphs, the
matrices the determinant route actually feeds to the kernel. The first numba
call per process includes JIT compilation (or a cache load) and is reported
separately.
"""
import argparse
import time

import numpy as np

from ramanujan_bigraphs import exact, kernels
from ramanujan_bigraphs.graph import random_biregular
from ramanujan_bigraphs.zeta import edge_operators

P = exact._primes(1)[0]


def operator_matrix(num_edges, seed):
    n1 = num_edges // 3
    X = random_biregular(n1, num_edges // 2, 2, 1, seed=seed)
    return edge_operators(X).product()


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[60, 120, 240],
                    help="edge counts (multiples of 6)")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    warm = operator_matrix(12, args.seed)
    t0 = time.perf_counter()
    kernels.charpoly_mod(warm, P, backend="numba")
    print(f"numba first call (compile or cache load): {time.perf_counter() - t0:.3f}s")

    print(f"{'|E|':>6} {'numba s':>10} {'numpy s':>10} {'speedup':>8} {'full charpoly s':>16}")
    rows = []
    for size in args.sizes:
        size -= size % 6
        M = operator_matrix(size, args.seed)
        a = kernels.charpoly_mod(M, P, backend="numba")
        b = kernels.charpoly_mod(M, P, backend="numpy")
        if not np.array_equal(a, b):
            raise SystemExit(f"backends disagree at |E| = {size}")
        t_nb = best_of(lambda: kernels.charpoly_mod(M, P, backend="numba"), args.repeat)
        t_np = best_of(lambda: kernels.charpoly_mod(M, P, backend="numpy"), args.repeat)
        t_full = best_of(lambda: exact.charpoly(M), 1)
        rows.append((size, t_nb, t_np))
        print(f"{size:>6} {t_nb:>10.4f} {t_np:>10.4f} {t_np / t_nb:>8.1f} {t_full:>16.3f}")
    return rows


if __name__ == "__main__":
    main()
