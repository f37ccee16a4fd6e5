"""Compare the numba and numpy association kernels.

Both backends are imported directly, so the env flag does not matter here.
Results are checked for agreement before timing.

    python3 benchmarks/bench_kernels.py [--sizes 1000 100000 1000000] [--repeat 20]
"""

import argparse
import time

import numpy as np

from gendered_terms.kernels import _numba, _numpy


def _time(fn, args, repeat):
    fn(*args)  # warm-up, includes JIT compile for numba
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _cases(n, rng):
    F, M = 100_000, 400_000
    a = rng.integers(0, 2000, n).astype(float)
    c = rng.integers(0, 6000, n).astype(float)
    t = a + c
    chi = _numpy.chi2_many(a, F - a, c, M - c)
    p = np.sort(_numpy.chi2_sf_many(chi))
    return {
        "chi2_many": (a, F - a, c, M - c),
        "max_chi2_many": (t, F, M),
        "chi2_sf_many": (chi,),
        "bh_count": (p, 0.05),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1_000, 100_000, 1_000_000])
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<15} {'n':>10} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for n in args.sizes:
        for name, fargs in _cases(n, rng).items():
            fn_np, fn_nb = getattr(_numpy, name), getattr(_numba, name)
            r_np, r_nb = fn_np(*fargs), fn_nb(*fargs)
            if not np.allclose(r_np, r_nb, rtol=1e-9, atol=1e-300):
                raise SystemExit(f"{name}: backends disagree at n={n}")
            t_np = _time(fn_np, fargs, args.repeat)
            t_nb = _time(fn_nb, fargs, args.repeat)
            print(f"{name:<15} {n:>10,} {t_np * 1e3:>10.3f} {t_nb * 1e3:>10.3f} {t_np / t_nb:>7.2f}x")


if __name__ == "__main__":
    main()
