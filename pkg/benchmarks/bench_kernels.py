"""Compare the compiled Gauss-Jordan kernel with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--sizes 8 32 96] [--p 2 3 251] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from filtral import _kernels_py

try:
    from filtral import _kernels
except ImportError:
    _kernels = None


def bench(fn, mats, p, repeat):
    def run():
        for m in mats:
            fn(m.copy(), p)

    return min(timeit.repeat(run, number=1, repeat=repeat)) / len(mats)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 32, 96])
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3, 251])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--count", type=int, default=20, help="matrices per size")
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernel not built; only the fallback is timed")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<12}{'p':>5}{'n':>6}{'python ms':>12}{'cython ms':>12}{'speedup':>9}")
    for p in args.p:
        for n in args.sizes:
            mats = [rng.integers(0, p, size=(n, n)).astype(np.int64) for _ in range(args.count)]
            t_py = bench(_kernels_py.rref_inplace, mats, p, args.repeat)
            t_cy = bench(_kernels.rref_inplace, mats, p, args.repeat) if _kernels else float("nan")
            print(f"{'rref':<12}{p:>5}{n:>6}{t_py * 1e3:>12.3f}{t_cy * 1e3:>12.3f}{t_py / t_cy:>9.1f}")
            stack = rng.integers(0, p, size=(64, n, n // 2 + 1)).astype(np.int64)
            t_py = bench(_kernels_py.rank_batch, [stack], p, args.repeat)
            t_cy = bench(_kernels.rank_batch, [stack], p, args.repeat) if _kernels else float("nan")
            print(f"{'rank_batch':<12}{p:>5}{n:>6}{t_py * 1e3:>12.3f}{t_cy * 1e3:>12.3f}{t_py / t_cy:>9.1f}")


if __name__ == "__main__":
    main()
