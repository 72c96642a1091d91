#!/usr/bin/env python3
"""Benchmark the stabilizer-scan kernel: numba jit vs pure numpy.

The scan is the only hot loop in the package (O(n^3) candidate maps, each
checked against the set with early exit).  Run from the repo root:

    python benchmarks/bench_stabilizer.py

Workloads cover the interesting shapes: highly symmetric sets (every
candidate survives many probes), nearly symmetric sets, and asymmetric
sets (candidates die on the first probe).
"""

import time

import numpy as np

from orbstab import classifier as cl
from orbstab.kernels import _scan_numba, _scan_numpy, _CAP
from orbstab.geometry import _matrix_to_zero_one_inf
from orbstab.oracle import _pick_base_triple
from orbstab.witness import dihedral_witness, polyhedral_orbit, trivial_witness, witness


def workloads():
    yield "icosahedron (n=12, order 60)", polyhedral_orbit(cl.A5, "V12")
    yield "A5 edge orbit (n=30)", polyhedral_orbit(cl.A5, "V30")
    yield "D_7 witness (n=16)", dihedral_witness(7, (1, 0, 1))
    yield "trivial set (n=20)", trivial_witness(20)
    yield "A5 (1,1,1,0) witness (n=62)", witness(62, cl.ClassificationEntry(cl.LABEL_A5, (1, 1, 1, 0)))
    yield "trivial set (n=60)", trivial_witness(60)


def run_numba(ps, args):
    out = np.empty((_CAP, 3), dtype=np.int64)
    stamp = np.zeros(ps.n, dtype=np.int64)
    z, w, nrm, (b0, b1, b2), m = args
    cnt = _scan_numba(z, w, nrm, b0, b1, b2, m[0], m[1], m[2], m[3],
                      ps.tol, out, stamp)
    return out[:cnt]


def run_numpy(ps, args):
    z, w, nrm, base, m = args
    return _scan_numpy(z, w, nrm, base, m, ps.tol)


def time_call(fn, *args, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    if _scan_numba is None:
        raise SystemExit("numba backend unavailable; nothing to compare "
                         "(unset ORBSTAB_BACKEND)")
    print(f"{'workload':<34s} {'n':>4s} {'survivors':>9s} "
          f"{'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, ps in workloads():
        z, w, nrm = ps.arrays()
        base = _pick_base_triple(ps)
        mb = _matrix_to_zero_one_inf(*(ps.points[i] for i in base))
        args = (z, w, nrm, base, (mb.a, mb.b, mb.c, mb.d))
        run_numba(ps, args)  # warm the jit cache before timing
        t_nb, r_nb = time_call(run_numba, ps, args)
        t_np, r_np = time_call(run_numpy, ps, args)
        assert sorted(map(tuple, r_nb.tolist())) == sorted(map(tuple, r_np.tolist())), \
            f"backends disagree on {name}"
        print(f"{name:<34s} {ps.n:>4d} {len(r_nb):>9d} "
              f"{t_nb * 1e3:>8.2f}ms {t_np * 1e3:>8.2f}ms {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
