"""Compare the compiled and pure-Python kernel backends.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``. Prints one row
per kernel and problem size with the best time per call for each backend,
the speedup and the largest difference between the two outputs (zero for the
summation kernels, which are bit-identical by contract).
"""
import argparse
import timeit

import numpy as np

from almostnorlund._kernels import _fallback

try:
    from almostnorlund._kernels import _compiled
except ImportError:  # extension not built
    _compiled = None


def cases(rng):
    for n in (64, 256, 1024):
        a = rng.standard_normal(n)
        w = rng.random(n)
        w /= w.sum()
        yield "fsum_prefix", n, (a,)
        yield "fsum_suffix", n, (a,)
        yield "fsum_convolve", n, (rng.random(n), rng.random(n))
        yield "almost_multipliers", n, (w, 3)
    for k in (16, 256, 4096):
        c, s = rng.standard_normal(k), rng.standard_normal(k)
        yield "trig_eval", k, (c, s, np.linspace(0, 2 * np.pi, 4096))


def best_time(fn, args, repeat):
    timer = timeit.Timer(lambda: fn(*args))
    number, _ = timer.autorange()
    return min(timer.repeat(repeat, number)) / number


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    if _compiled is None:
        print("compiled extension not available; nothing to compare")
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<20} {'size':>6} {'python':>12} {'compiled':>12} {'speedup':>9} {'max |diff|':>11}")
    for name, size, fargs in cases(rng):
        slow = getattr(_fallback, name)
        fast = getattr(_compiled, name)
        t_py = best_time(slow, fargs, args.repeat)
        t_c = best_time(fast, fargs, args.repeat)
        diff = float(np.max(np.abs(slow(*fargs) - fast(*fargs))))
        print(f"{name:<20} {size:>6} {t_py * 1e6:>10.1f}us {t_c * 1e6:>10.1f}us "
              f"{t_py / t_c:>8.1f}x {diff:>11.2g}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
