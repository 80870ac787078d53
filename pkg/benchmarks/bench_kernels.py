"""Compare the numba and numpy kernels on a full U_m pass and on tour scoring.

    python benchmarks/bench_kernels.py [--m 9] [--repeat 3]
"""
import argparse
import time

import numpy as np

from hamtree import _kernels
from hamtree.builder import build_superposition
from hamtree.mapping import sub_ops
from hamtree.qstate import attach_ancilla_uniform


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--m", type=int, default=9, help="input level of U_m (<= 10)")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    m = args.m
    state, _ = build_superposition(m + 1, upto=m)
    wide = attach_ancilla_uniform(state, m)
    specs = sub_ops(m)
    em = np.array([s.edge_mask for s in specs], dtype=np.uint64)
    pm = np.array([s.pair_mask for s in specs], dtype=np.uint64)
    full, _ = build_superposition(m + 1)
    weights = np.random.default_rng(0).integers(1, 100, size=full.E)

    print(f"U_{m}: {len(wide)} terms x {len(specs)} sub-ops; scoring {len(full)} tours")
    results = {}
    for name, flag in (("numba", True), ("numpy", False)):
        if flag and not _kernels.HAVE_NUMBA:
            continue
        _kernels.apply_subops(wide.paths[:8], wide.ancillas[:8], em, pm, use_numba=flag)
        _kernels.mask_weights(full.paths[:8], weights, use_numba=flag)
        t_um = timed(lambda: _kernels.apply_subops(wide.paths, wide.ancillas, em, pm,
                                                   use_numba=flag), args.repeat)
        t_w = timed(lambda: _kernels.mask_weights(full.paths, weights, use_numba=flag),
                    args.repeat)
        results[name] = (t_um, t_w)
        print(f"{name:>6}: U_m {t_um * 1e3:9.2f} ms   weights {t_w * 1e3:9.2f} ms")
    if len(results) == 2:
        (a, b), (c, d) = results["numba"], results["numpy"]
        print(f"speedup: U_m x{c / a:.1f}, weights x{d / b:.1f}")


if __name__ == "__main__":
    main()
