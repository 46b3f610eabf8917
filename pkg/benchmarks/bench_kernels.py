"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--sizes 8,16,24]

Both backends are imported directly, so one run compares them side by side.
Each timing is checked for identical output before it is reported.
"""

from __future__ import annotations

import argparse
import random
import timeit

from jordangeo import _core_py
from jordangeo.rings import Modular, Rational

try:
    from jordangeo import _core
except ImportError:
    _core = None


def _matrix(ring, n, rng):
    return [[ring.random(rng) for _ in range(n)] for _ in range(n)]


def _bench(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def run(sizes, repeat):
    rng = random.Random(1)
    rows = []
    for ring in (Rational(), Modular(101)):
        for n in sizes:
            a, b = _matrix(ring, n, rng), _matrix(ring, n, rng)
            zero = ring.zero()
            cases = {
                "matmul": lambda mod: mod.matmul(a, b, zero),
                "row_reduce": lambda mod: mod.row_reduce([r[:] for r in a], n, ring.is_unit, ring.inv),
            }
            for kernel, call in cases.items():
                t_py = _bench(lambda: call(_core_py), repeat)
                if _core is None:
                    rows.append((kernel, ring.name, n, t_py, None))
                    continue
                if call(_core) != call(_core_py):
                    raise AssertionError(f"{kernel} differs between backends on {ring.name} n={n}")
                t_c = _bench(lambda: call(_core), repeat)
                rows.append((kernel, ring.name, n, t_py, t_c))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="8,16,32")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"{'kernel':<11} {'ring':<8} {'n':>3} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for kernel, ring, n, t_py, t_c in run(sizes, args.repeat):
        if t_c is None:
            print(f"{kernel:<11} {ring:<8} {n:>3} {t_py * 1e3:>10.2f} {'n/a':>10} {'n/a':>8}")
        else:
            print(f"{kernel:<11} {ring:<8} {n:>3} {t_py * 1e3:>10.2f} {t_c * 1e3:>10.2f} {t_py / t_c:>7.2f}x")
    if _core is None:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
