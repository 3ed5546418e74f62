"""Compare the compiled and numpy kq-transform kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--batch 100]

Prints one row per (d, L) shape with the best-of-N wall time of a forward
plus inverse pass over a batch of random states, and the speed ratio.
"""

import argparse
import time

import numpy as np

from kqlattice.kernels import available_backends

SHAPES = [(3, 5), (5, 7), (9, 16), (16, 63), (64, 63), (31, 128)]


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--batch", type=int, default=100)
    args = ap.parse_args(argv)

    backends = available_backends()
    names = sorted(backends)
    rng = np.random.default_rng(0)
    print(f"{'d':>4} {'L':>4} {'M':>5}  " + "  ".join(f"{n + ' [ms]':>15}" for n in names) + "   ratio")
    for d, L in SHAPES:
        M = d * L
        psi = rng.standard_normal((args.batch, M)) + 1j * rng.standard_normal((args.batch, M))
        times = {}
        for name in names:
            impl = backends[name]
            times[name] = best_time(lambda: impl.kq_inverse(impl.kq_forward(psi, d, L)), args.repeat)
        ratio = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        cells = "  ".join(f"{1e3 * times[n]:15.3f}" for n in names)
        print(f"{d:4d} {L:4d} {M:5d}  {cells}   {ratio:5.2f}x")


if __name__ == "__main__":
    main()
