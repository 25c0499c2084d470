"""Benchmark the numba kernels against the pure-numpy fallbacks.

Usage:  python benchmarks/bench_kernels.py [repeats]

The same comparison at the workload level:
    time g2abc verify --case all --trials 20
    G2ABC_NO_NUMBA=1 time g2abc verify --case all --trials 20
"""

import sys
import time

import numpy as np

from g2abc import _accel
from g2abc._tables import CONTRACT_TABLES, DIMS, STAR_TABLES, WEDGE_TABLES
from g2abc.gabc import FamilyKind, cross_validate, generate


def bench(label, fn, args, repeats):
    fn(*args)  # warm-up (numba compiles here)
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn(*args)
    dt = (time.perf_counter() - t0) / repeats
    print(f"  {label:<26s} {dt * 1e6:10.2f} us/call")
    return dt


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 20_000
    rng = np.random.default_rng(0)
    print(f"active backend: {_accel.BACKEND}   ({repeats} repeats per op)\n")

    pairs = [(2, 2), (3, 3), (3, 4), (1, 3)]
    for k1, k2 in pairs:
        ia, ja, ka, sa = WEDGE_TABLES[(k1, k2)]
        a = rng.standard_normal(DIMS[k1])
        b = rng.standard_normal(DIMS[k2])
        out = np.zeros(DIMS[k1 + k2])
        print(f"wedge ({k1},{k2}) -> {k1 + k2}  [{ia.size} table entries]")
        t_np = bench("numpy (np.add.at)", _accel.wedge_accum_numpy,
                     (ia, ja, ka, sa, a, b, out), repeats)
        if _accel.wedge_accum_numba is not None:
            t_nb = bench("numba (@njit loop)", _accel.wedge_accum_numba,
                         (ia, ja, ka, sa, a, b, out), repeats)
            print(f"  speedup numba/numpy: {t_np / t_nb:.1f}x")

    ms, ins, outs, sgns = CONTRACT_TABLES[3]
    x = rng.standard_normal(7)
    a = rng.standard_normal(DIMS[3])
    out = np.zeros(DIMS[2])
    print(f"contract deg 3 -> 2  [{ms.size} table entries]")
    t_np = bench("numpy (np.add.at)", _accel.contract_accum_numpy,
                 (ms, ins, outs, sgns, x, a, out), repeats)
    if _accel.contract_accum_numba is not None:
        t_nb = bench("numba (@njit loop)", _accel.contract_accum_numba,
                     (ms, ins, outs, sgns, x, a, out), repeats)
        print(f"  speedup numba/numpy: {t_np / t_nb:.1f}x")

    comp, sgn = STAR_TABLES[3]
    a = rng.standard_normal(DIMS[3])
    out = np.zeros(DIMS[4])
    print("hodge star deg 3 (identity metric)")
    t_np = bench("numpy (fancy indexing)", _accel.star_apply_numpy, (comp, sgn, a, out), repeats)
    if _accel.star_apply_numba is not None:
        t_nb = bench("numba (@njit loop)", _accel.star_apply_numba, (comp, sgn, a, out), repeats)
        print(f"  speedup numba/numpy: {t_np / t_nb:.1f}x")

    n_trials = max(repeats // 1000, 5)
    print(f"\nend-to-end: cross_validate on {n_trials} general triples "
          f"(backend: {_accel.BACKEND})")
    triples = [generate(FamilyKind.GENERAL, seed) for seed in range(n_trials)]
    cross_validate(triples[0])
    t0 = time.perf_counter()
    for t in triples:
        cross_validate(t)
    dt = (time.perf_counter() - t0) / n_trials
    print(f"  {dt * 1e3:.2f} ms/triple")


if __name__ == "__main__":
    main()
