"""Compare the numba and numpy backends on full-enumeration workloads.

Each workload is a valid sequent, so the kernels scan every assignment.
Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--vars K]
"""

import argparse
import time

from letlab import kernels
from letlab import formula as fm
from letlab.cpl_reduction import cpl_entails
from letlab.isa import degree_entails
from letlab.matrix6 import entails6


def chain(k):
    """p1 & ... & pk |- (p1 | q) with k distinct variables, valid in every procedure."""
    names = [f"p{i}" for i in range(1, k + 1)]
    prem = fm.big_and([fm.Var(n) for n in names])
    return fm.Sequent([prem], fm.Or(fm.Var("p1"), fm.Var(names[-1])))


def workloads(k):
    s = chain(k)
    free = fm.Fragment.IMPLICATION_FREE
    return [
        (f"matrix, {k} vars", lambda: entails6(s)),
        (f"degree, {k} vars", lambda: degree_entails(s, free)),
        (f"cpl, {min(k, 6)} vars", lambda: cpl_entails(chain(min(k, 6)))),
    ]


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--vars", type=int, default=8)
    args = ap.parse_args()

    backends = [b for b in kernels.BACKENDS if b != "numba" or kernels.HAVE_NUMBA]
    print(f"{'workload':<20}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in workloads(args.vars):
        times, verdicts = {}, set()
        for b in backends:
            kernels.set_backend(b)
            fn()  # warm up (JIT compilation)
            times[b], v = timed(fn, args.repeat)
            verdicts.add(v.valid)
        assert len(verdicts) == 1, f"backends disagree on {name}"
        speed = times["numpy"] / times["numba"] if "numba" in times else float("nan")
        print(f"{name:<20}" + "".join(f"{times[b]:>11.4f}s" for b in backends) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
