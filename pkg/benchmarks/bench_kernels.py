"""Compare the numba kernels against the pure-numpy fallback.

The library picks one implementation at import time (STARSEM_PURE_NUMPY=1
forces the fallback); this script imports both modules directly and times
them on the same tables. Window semigroups over two and three letters give
realistic inputs: dense tables with heavy idempotent structure.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from starsem import _kernels_np
from starsem.alphabet import Alphabet
from starsem.lrtt import window_semigroup

try:
    from starsem import _kernels_nb
except ImportError:
    _kernels_nb = None


def _table(inv):
    n = inv.n
    t = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        for j in range(n):
            t[i, j] = inv.product(i, j)
    return t


def _star(inv):
    return np.array([inv.star_of(i) for i in range(inv.n)], dtype=np.int32)


CASES = [
    ("assoc_witness", lambda k, t, s: k.assoc_witness(t)),
    ("commutative_witness", lambda k, t, s: k.commutative_witness(t)),
    ("locally_trivial_witness", lambda k, t, s: k.locally_trivial_witness(t)),
    ("aperiodicity_index", lambda k, t, s: k.aperiodicity_index(t, 64)),
    ("involution_witness", lambda k, t, s: k.involution_witness(t, s)),
]


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    inputs = []
    for letters, k in (("ab", 3), ("abc", 2), ("abc", 3)):
        w = window_semigroup(Alphabet(letters), k)
        inputs.append((f"W({letters},{k}) n={w.n}", _table(w.inv), _star(w.inv)))

    if _kernels_nb is None:
        print("numba unavailable; timing the numpy path only")
    else:
        # trigger jit compilation outside the timed region
        small = inputs[0]
        for _, call in CASES:
            call(_kernels_nb, small[1], small[2])

    header = f"{'kernel':<26} {'input':<16} {'numpy':>10} {'numba':>10} {'ratio':>7}"
    print(header)
    print("-" * len(header))
    for label, table, star in inputs:
        for name, call in CASES:
            t_np = _time(lambda: call(_kernels_np, table, star), args.repeat)
            if _kernels_nb is None:
                print(f"{name:<26} {label:<16} {t_np:>9.4f}s {'-':>10} {'-':>7}")
                continue
            t_nb = _time(lambda: call(_kernels_nb, table, star), args.repeat)
            ratio = t_np / t_nb if t_nb > 0 else float("inf")
            print(f"{name:<26} {label:<16} {t_np:>9.4f}s {t_nb:>9.4f}s {ratio:>6.1f}x")


if __name__ == "__main__":
    main()
