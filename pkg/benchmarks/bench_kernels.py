"""Time the numba and numpy kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--sizes 500 2000 10000] [--mod 128]

Both backends live in ``qdissect.kernels`` whatever QDISSECT_DISABLE_NUMBA
says; this script calls them directly and checks they agree before timing.
"""

import argparse
import time

import numpy as np

from qdissect import kernels as K


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[500, 2000, 10000])
    ap.add_argument("--mod", type=int, default=128)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if K.numba_mul_mod is None:
        raise SystemExit("numba is unavailable (or disabled); nothing to compare")

    m = args.mod
    rng = np.random.default_rng(0)
    # warm the JIT so compile time is not charged to the first size
    w = rng.integers(0, m, 8)
    w[0] = 1
    K.numba_mul_mod(w, w, 7, m)
    K.numba_inv_mod(w, 7, m, 1)

    print(f"modulus {m}, best of {args.repeat}")
    print(f"{'op':<5}{'n':>8}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
    for n in args.sizes:
        a = rng.integers(0, m, n + 1).astype(np.int64)
        b = rng.integers(0, m, n + 1).astype(np.int64)
        a[0] = 1
        cases = {
            "mul": (lambda: K.numba_mul_mod(a, b, n, m),
                    lambda: K.numpy_mul_mod(a, b, n, m)),
            "inv": (lambda: K.numba_inv_mod(a, n, m, 1),
                    lambda: K.numpy_inv_mod(a, n, m, 1)),
        }
        for op, (fast, slow) in cases.items():
            if not np.array_equal(fast(), slow()):
                raise SystemExit(f"{op} backends disagree at n={n}")
            tf = best_of(fast, args.repeat)
            ts = best_of(slow, args.repeat)
            print(f"{op:<5}{n:>8}{tf:>12.4f}{ts:>12.4f}{ts / tf:>10.1f}")


if __name__ == "__main__":
    main()
