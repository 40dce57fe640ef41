#!/usr/bin/env python3
"""Benchmark the compiled chain kernels against the pure-Python fallback.

Runs the same workloads through both backends, checks they agree, and
prints a timing table.  The deep-family workload is the hot case: member
sizes near n force the prefix walk through most of the n! chain tree.

Usage: python benchmarks/bench_kernels.py [--n N] [--repeat R]
"""

import argparse
import time
from itertools import combinations

from diamondfree import _kernels_py
from diamondfree.chainstats import _member_flags
from diamondfree.constructions import even_odd_family

try:
    from diamondfree import _speedups
except ImportError:
    _speedups = None


def _compiled_chain_scan(n, members, maximal, minimal):
    import numpy as np

    lookup = np.zeros(1 << n, dtype=np.int32)
    for i, m in enumerate(members):
        lookup[m] = i + 1
    smax = max((m.bit_count() for m in members), default=0)
    maxf = np.array([1 if b else 0 for b in maximal] or [0], dtype=np.uint8)
    minf = np.array([1 if b else 0 for b in minimal] or [0], dtype=np.uint8)
    return _speedups.chain_scan_table(n, smax, len(members), lookup, maxf, minf)


def _compiled_count(n, members, first, second, hit):
    import numpy as np

    member = np.zeros(1 << n, dtype=np.uint8)
    for m in members:
        member[m] = 1
    smax = max((m.bit_count() for m in members), default=0)
    return _speedups.count_chains_table(n, smax, member, first, second, hit)


def _level(n, size):
    out = []
    for combo in combinations(range(n), size):
        m = 0
        for e in combo:
            m |= 1 << e
        out.append(m)
    return out


def timed(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=9)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    n = args.n

    shallow = list(even_odd_family(n).members)
    sh_max, sh_min = _member_flags(shallow)
    deep = _level(n, n // 2) + _level(n, n - 2)
    dp_max, dp_min = _member_flags(deep)
    full = (1 << n) - 1
    amask = (1 << (n // 2)) - 1

    workloads = [
        ("chain_scan shallow",
         lambda: _kernels_py.chain_scan(n, shallow, sh_max, sh_min),
         lambda: _compiled_chain_scan(n, shallow, sh_max, sh_min)),
        ("chain_scan deep",
         lambda: _kernels_py.chain_scan(n, deep, dp_max, dp_min),
         lambda: _compiled_chain_scan(n, deep, dp_max, dp_min)),
        ("count_chains avoid deep",
         lambda: _kernels_py.count_chains(n, _level(n, n - 2), amask, full,
                                          False),
         lambda: _compiled_count(n, _level(n, n - 2), amask, full, False)),
        ("count_chains hit",
         lambda: _kernels_py.count_chains(n, shallow, full & ~amask, full,
                                          True),
         lambda: _compiled_count(n, shallow, full & ~amask, full, True)),
    ]

    print(f"n={n}, repeat={args.repeat} (best of)")
    print(f"{'workload':26s} {'pure':>12s} {'compiled':>12s} {'speedup':>8s}")
    for name, pure, compiled in workloads:
        t_pure, r_pure = timed(pure, args.repeat)
        if _speedups is None:
            print(f"{name:26s} {t_pure*1e3:10.2f}ms {'n/a':>12s}")
            continue
        t_comp, r_comp = timed(compiled, args.repeat)
        if isinstance(r_pure, tuple):
            agree = tuple(r_pure[:3]) == tuple(r_comp[:3]) \
                and list(r_pure[3]) == list(r_comp[3]) \
                and list(r_pure[4]) == list(r_comp[4])
        else:
            agree = r_pure == r_comp
        assert agree, f"backends disagree on {name}"
        print(f"{name:26s} {t_pure*1e3:10.2f}ms {t_comp*1e3:10.2f}ms "
              f"{t_pure/t_comp:7.1f}x")


if __name__ == "__main__":
    main()
