"""
Time the batched length and descent kernels: numba loops against numpy broadcasting.

    python benchmarks/bench_kernels.py --rank 4 --sizes 1000 100000 1000000
"""

import argparse
import time

import numpy as np

from affinehecke import _kernels


def random_windows(n: int, rank: int, spread: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    perms = np.argsort(rng.random((n, rank)), axis=1) + 1
    shifts = rng.integers(-spread, spread + 1, size=(n, rank)) * rank
    return np.ascontiguousarray(perms + shifts, dtype=np.int64)


def best_of(fn, arr, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(arr)
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--rank", type=int, default=4)
    ap.add_argument("--sizes", type=int, nargs="+", default=[1_000, 100_000, 1_000_000])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    warm = random_windows(8, args.rank, 3, 0)
    _kernels.lengths_numba(warm)
    _kernels.descents_numba(warm)

    print(f"rank {args.rank}, best of {args.repeat}")
    print(f"{'kernel':<10}{'n':>10}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for n in args.sizes:
        arr = random_windows(n, args.rank, 3, n)
        for name, fnp, fnb in (("lengths", _kernels.lengths_numpy, _kernels.lengths_numba),
                               ("descents", _kernels.descents_numpy, _kernels.descents_numba)):
            assert np.array_equal(fnp(arr), fnb(arr))
            tp, tb = best_of(fnp, arr, args.repeat), best_of(fnb, arr, args.repeat)
            print(f"{name:<10}{n:>10}{tp * 1e3:>12.2f}{tb * 1e3:>12.2f}{tp / tb:>10.1f}x")


if __name__ == "__main__":
    main()
