"""Benchmark the integer verification kernels: numba against the numpy
fallback on the two hot axiom checks, over doubles of increasing size.

Usage: python3 benchmarks/bench_backends.py [--cells 2,2 3,2 2,3] [--repeat 3]
"""

import argparse
import time

from ribbonforge.double import build_double
from ribbonforge.kernels import try_engine
from ribbonforge.radford import build_radford


def bench_engine(H, backend, repeat):
    eng = try_engine(H, backend=backend)
    if eng is None:
        return None
    # first call pays any compilation cost; report it separately
    t0 = time.perf_counter()
    ok, _ = eng.check_associativity()
    assert ok
    warm = time.perf_counter() - t0
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        ok, _ = eng.check_associativity()
        ok2, _ = eng.check_comult_multiplicative()
        dt = time.perf_counter() - t0
        assert ok and ok2
        best = dt if best is None else min(best, dt)
    return warm, best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cells", nargs="*", default=["2,2", "3,2", "2,3"],
                    help="m,n pairs for the base algebra")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    print(f"{'cell':>8} {'dim':>6} {'backend':>8} {'first':>10} {'best':>10}")
    for cell in args.cells:
        m, n = (int(v) for v in cell.split(","))
        A = build_double(build_radford(m, n)).algebra
        for backend in ("numpy", "numba"):
            res = bench_engine(A, backend, args.repeat)
            if res is None:
                print(f"{cell:>8} {A.dim:>6} {backend:>8} {'n/a':>10} {'n/a':>10}")
                continue
            warm, best = res
            print(f"{cell:>8} {A.dim:>6} {backend:>8} {warm:>9.3f}s {best:>9.3f}s")


if __name__ == "__main__":
    main()
