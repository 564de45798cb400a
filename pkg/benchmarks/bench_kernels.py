"""Compare the compiled table kernels with the pure-Python fallback.

Runs the same DP workloads with both implementations patched into
``cwcount.kernels`` and reports wall time per workload:

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import itertools
import random
import time

from cwcount import _kernels_py, kernels
from cwcount.counting import count_bipartite_pm, count_euler_tours, linear_cw
from cwcount.dp.engine import run_dp
from cwcount.graph import Graph
from cwcount.library import random_cw

try:
    from cwcount import _kernels
except ImportError:
    _kernels = None

NAMES = ("convolve", "remap", "apply_rows", "filter_keys")


def use(impl):
    for name in NAMES:
        setattr(kernels, name, getattr(impl, name))


def workloads():
    k5 = Graph.from_edges(5, itertools.combinations(range(5), 2))
    k33 = Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)])
    ones = [[1] * 5 for _ in range(5)]
    rng = random.Random(7)
    exprs = [random_cw(rng, 10, 3) for _ in range(40)]
    k8, _ = linear_cw(Graph.from_edges(8, itertools.combinations(range(8), 2)))
    k10, _ = linear_cw(Graph.from_edges(10, itertools.combinations(range(10), 2)))
    wide = [random_cw(rng, 9, 4) for _ in range(10)]
    return [
        ("euler K5", lambda: count_euler_tours(k5)),
        ("euler chain of three triangles", lambda: count_euler_tours(
            Graph.from_edges(7, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (5, 6), (4, 6)]))),
        ("permanent J5", lambda: count_bipartite_pm(ones)),
        ("full census K8", lambda: run_dp(k8)),
        ("full census K10", lambda: run_dp(k10)),
        ("full census 10 random (9 leaves, k=4)", lambda: [run_dp(x) for x in wide]),
        ("full census 40 random (10 leaves)", lambda: [run_dp(x) for x in exprs]),
        ("full census K3,3", lambda: run_dp(linear_cw(k33)[0])),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = [("python", _kernels_py)]
    if _kernels is not None:
        impls.insert(0, ("cython", _kernels))
    else:
        print("compiled kernels not built; timing the fallback only")
    print(f"{'workload':40s}" + "".join(f"{name:>12s}" for name, _ in impls) + "   speedup")
    for label, fn in workloads():
        times = []
        for _, impl in impls:
            use(impl)
            best = float("inf")
            for _ in range(args.repeat):
                t = time.perf_counter()
                fn()
                best = min(best, time.perf_counter() - t)
            times.append(best)
        ratio = f"{times[-1] / times[0]:8.2f}x" if len(times) == 2 else ""
        print(f"{label:40s}" + "".join(f"{t:11.4f}s" for t in times) + "  " + ratio)
    use(_kernels or _kernels_py)


if __name__ == "__main__":
    main()
