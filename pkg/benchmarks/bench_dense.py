"""Compare the GMP and pure-Python dense kernels on the trc3 expansions.

    python benchmarks/bench_dense.py --n 50 100 200 --repeat 3
"""

import argparse
import time

from gnl import kernels
from gnl.family import dims


def expand(backend, n):
    # same route as bigpoly.expand_dense: binomial row of (1-x^2)^d2, then passes
    d = dims(n)
    c = [0] * (2 * d.d2 + 1)
    b = 1
    for j in range(d.d2 + 1):
        c[2 * j] = -b if j & 1 else b
        b = b * (d.d2 - j) // (j + 1)
    for k, m in ((1, d.d1), (3, d.d3)):
        c = backend.mul_one_minus_power(c, k, m)
    return backend.l1_norm(c)


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[25, 50, 100, 150])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    names = kernels.available()
    print(f"{'n':>5} " + " ".join(f"{name:>10}" for name in names) + ("    speedup" if len(names) > 1 else ""))
    for n in args.n:
        times = {}
        results = set()
        for name in names:
            backend = kernels.load(name)
            times[name], out = best_of(lambda: expand(backend, n), args.repeat)
            results.add(out)
        assert len(results) == 1, "backends disagree"
        row = f"{n:>5} " + " ".join(f"{times[name]:>9.3f}s" for name in names)
        if "gmp" in times and "python" in times:
            row += f"    {times['python'] / times['gmp']:>6.2f}x"
        print(row)


if __name__ == "__main__":
    main()
