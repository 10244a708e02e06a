"""Time the numba kernels against the pure-numpy fallback on random choice tables.

    python benchmarks/bench_kernels.py [--kmin 6] [--kmax 10] [--repeat 3]

Numba compile time is paid once before timing starts.  The identity table
(every set chooses itself) violates nothing, so each checker scans its whole
search space; ``--shrink`` sets to their lowest member adds early exits.
"""

import argparse
import time

import numpy as np

from setrat.kernels import load_backend
from setrat.prefs import canonical_order

CHECKERS = ["check_alpha", "check_alpha_hat_ssp", "check_gamma_hat", "check_path_independence"]


def near_identity_table(k, rng, shrink=0):
    arr = np.arange(1 << k, dtype=np.int64)
    if shrink:
        for A in rng.choice(np.arange(1, 1 << k), size=min(shrink, (1 << k) - 1), replace=False):
            arr[A] = int(A) & -int(A)
    return arr


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kmin", type=int, default=6)
    ap.add_argument("--kmax", type=int, default=10)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--shrink", type=int, default=0)
    args = ap.parse_args(argv)

    backends = {"numpy": load_backend("numpy")}
    try:
        backends["numba"] = load_backend("numba")
    except ImportError:
        print("numba not installed; timing numpy only")

    rng = np.random.default_rng(args.seed)
    # warm the JIT on a tiny table
    small = near_identity_table(3, rng)
    for mod in backends.values():
        for name in CHECKERS:
            getattr(mod, name)(small, canonical_order(3))

    header = f"{'k':>3} {'checker':<24}" + "".join(f"{b:>12}" for b in backends)
    if "numba" in backends:
        header += f"{'speedup':>10}"
    print(header)
    for k in range(args.kmin, args.kmax + 1):
        table = near_identity_table(k, rng, args.shrink)
        order = canonical_order(k)
        for name in CHECKERS:
            answers, times = set(), {}
            for label, mod in backends.items():
                fn = getattr(mod, name)
                answers.add(tuple(int(v) for v in fn(table, order)))
                times[label] = best_of(lambda: fn(table, order), args.repeat)
            if len(answers) != 1:
                raise SystemExit(f"backends disagree on {name} at k={k}: {answers}")
            row = f"{k:>3} {name:<24}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times.values())
            if "numba" in times:
                row += f"{times['numpy'] / max(times['numba'], 1e-9):>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
