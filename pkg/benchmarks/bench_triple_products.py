"""Time the triple-product kernel: numba vs the numpy fallback.

    python3 benchmarks/bench_triple_products.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from so_einstein import _kernels
from so_einstein.liestruct import triple_products
from so_einstein.model import GroupSpec

SPECS = [(2, 2, 3), (3, 3, 4), (4, 4, 6), (6, 6, 9), (8, 8, 12), (10, 10, 16)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    triple_products(GroupSpec(2, 2, 3), use_numba=True)  # compile (or load the cache)
    print(f"{'spec':>14} {'n':>4} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8} {'max diff':>10}")
    for blocks in SPECS:
        spec = GroupSpec(*blocks)
        tn, a = best_of(lambda: triple_products(spec, use_numba=True), args.repeat)
        tp, b = best_of(lambda: triple_products(spec, use_numba=False), args.repeat)
        diff = np.max(np.abs(a.ordered_array() - b.ordered_array()))
        print(f"{str(blocks):>14} {spec.n:>4} {tn * 1e3:>10.2f} {tp * 1e3:>10.2f} {tp / tn:>8.1f} {diff:>10.1e}")


if __name__ == "__main__":
    main()
