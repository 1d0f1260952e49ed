"""Time the compiled kernels against their interpreted bodies.

    python3 benchmarks/bench_kernels.py [--sizes 50 100 200] [--repeat 3]

With ``PDCENTER_DISABLE_NUMBA=1`` both columns run the interpreter.  The
first compiled call is excluded (it includes JIT compilation, or a cache load).
"""
import argparse
import time

import numpy as np

from pdcenter import kernels
from pdcenter._accel import NUMBA_ENABLED
from pdcenter.center import no_replacement_network
from pdcenter.core import LINF, AugmentedSet, cost_matrix
from pdcenter.matching import _admissible


def best_of(fn, repeat):
    out = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        out = min(out, time.perf_counter() - t)
    return out


def cases(n, rng):
    a = AugmentedSet.raw(rng.uniform(0, 10, (n, 2)))
    b = AugmentedSet.raw(rng.uniform(0, 10, (n, 2)))
    c = cost_matrix(a, b, LINF)

    thr = np.median(c.min(axis=1)) * 3
    indptr, indices = _admissible(c, thr)

    def hk(f):
        ml = np.full(n, -1, np.int64)
        mr = np.full(n, -1, np.int64)
        return lambda: f(n, n, indptr, indices, ml.copy(), mr.copy())

    def hu(f):
        return lambda: f(c)

    # the two-set no-replacement network at a mid-range radius
    pool = AugmentedSet(np.vstack([a.pts, b.pts]), np.zeros(2 * n, bool))
    d_in = cost_matrix(a, pool, LINF)
    d_out = cost_matrix(pool, b, LINF)
    net = no_replacement_network(d_in, d_out, float(np.median(d_in)) / 2)
    arcs = np.asarray(net.arcs, np.int64)
    tails, heads = np.ascontiguousarray(arcs[:, 0]), np.ascontiguousarray(arcs[:, 1])

    def di(f):
        return lambda: f(net.node_count, tails, heads, net.source, net.sink)

    return [("hopcroft_karp", kernels.hopcroft_karp, hk),
            ("hungarian", kernels.hungarian, hu),
            ("dinic_unit", kernels.dinic_unit, di)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"numba enabled: {NUMBA_ENABLED}")
    print(f"{'kernel':<15}{'n':>6}{'compiled s':>14}{'python s':>12}{'speedup':>10}")
    rng = np.random.default_rng(args.seed)
    for n in args.sizes:
        for name, kern, make in cases(n, rng):
            fast = make(kern)
            fast()  # compile or load from cache
            t_fast = best_of(fast, args.repeat)
            t_slow = best_of(make(kern.py_func), args.repeat)
            print(f"{name:<15}{n:>6}{t_fast:>14.5f}{t_slow:>12.5f}{t_slow / t_fast:>10.1f}")


if __name__ == "__main__":
    main()
