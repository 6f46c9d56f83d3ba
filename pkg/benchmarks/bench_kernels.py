"""Compare the compiled and pure-Python graph kernels.

Times each kernel on random graphs, then a full solve on planted instances
with the backend swapped in place.

    python benchmarks/bench_kernels.py --sizes 200 1000 5000 --repeat 5
"""

import argparse
import contextlib
import random
import statistics
import sys
import time

from sdfvs import _pykernels, kernels
from sdfvs.digraph import build
from sdfvs.generate import planted_instance
from sdfvs.sampling import SamplingConfig
from sdfvs.separators import _cuttable
from sdfvs.solver import SolverConfig, solve

try:
    from sdfvs import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = {"python": _pykernels, "cython": _ckernels}


@contextlib.contextmanager
def backend(module):
    saved = kernels.reach, kernels.scc, kernels.furthest_cut
    kernels.reach, kernels.scc, kernels.furthest_cut = module.reach, module.scc, module.furthest_cut
    try:
        yield
    finally:
        kernels.reach, kernels.scc, kernels.furthest_cut = saved


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def kernel_cases(n, seed):
    rng = random.Random(seed)
    arcs = [(rng.randint(1, n), rng.randint(1, n)) for _ in range(4 * n)]
    g = build(n, arcs)
    out_ptr, out_head = g.csr()[:2]
    blocked = bytearray(n)
    xs, ys = {1}, {n}
    xm, ym = g.mask(xs), g.mask(ys)
    cut_args = (*g.csr(), n, g.positions(xs), ym, _cuttable(g, xm, ym, blocked), blocked, 8)
    return {
        "reach": lambda m: m.reach(out_ptr, out_head, n, [0], blocked),
        "scc": lambda m: m.scc(out_ptr, out_head, n, blocked),
        "furthest_cut": lambda m: m.furthest_cut(*cut_args),
    }


def run_kernels(sizes, repeat, out):
    print(f"{'kernel':<14}{'n':>7}{'python ms':>12}{'cython ms':>12}{'speedup':>9}", file=out)
    for n in sizes:
        for name, call in kernel_cases(n, seed=n).items():
            py = best_of(lambda: call(_pykernels), repeat)
            if _ckernels is None:
                print(f"{name:<14}{n:>7}{py * 1e3:>12.3f}{'-':>12}{'-':>9}", file=out)
                continue
            cy = best_of(lambda: call(_ckernels), repeat)
            print(f"{name:<14}{n:>7}{py * 1e3:>12.3f}{cy * 1e3:>12.3f}{py / cy:>8.1f}x", file=out)


def run_solver(count, n, m, k, out):
    insts = [planted_instance(n, m, 0.5, k, seed)[0] for seed in range(count)]
    cfg = SolverConfig(sampling=SamplingConfig(seed=0))
    print(f"\nsolve: {count} planted instances, n={n} m={m} k={k}", file=out)
    for name, module in BACKENDS.items():
        if module is None:
            continue
        with backend(module):
            times = []
            for inst in insts:
                start = time.perf_counter()
                solve(inst, cfg)
                times.append(time.perf_counter() - start)
        print(f"  {name:<7} median {statistics.median(times) * 1e3:8.1f} ms"
              f"  total {sum(times):7.2f} s", file=out)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[200, 1000, 5000])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--instances", type=int, default=10)
    ap.add_argument("--n", type=int, default=50)
    ap.add_argument("--m", type=int, default=150)
    ap.add_argument("--k", type=int, default=3)
    args = ap.parse_args(argv)
    print(f"active backend: {kernels.BACKEND}")
    run_kernels(args.sizes, args.repeat, sys.stdout)
    run_solver(args.instances, args.n, args.m, args.k, sys.stdout)


if __name__ == "__main__":
    main()
