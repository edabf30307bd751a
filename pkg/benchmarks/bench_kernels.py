"""Compare the compiled and pure-Python term-table kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Each workload runs once per kernel with the kernel swapped in at the
``polyring.K`` binding, so everything above the kernel layer is shared.
"""
from __future__ import annotations

import argparse
import importlib
import time
from statistics import median

from catlike import catalog, polyring
from catlike.recmatrix import build_triangle, column_hankel
from catlike.totalpos import check_xtp


def _kernels():
    out = {"python": importlib.import_module("catlike._kernels_py")}
    try:
        out["cython"] = importlib.import_module("catlike._kernels")
    except ImportError:
        pass
    return out


def wl_mul():
    vs = polyring.VarSet(["p", "q", "r"])
    p, q, r = vs.gens()
    f = (1 + p + q + r) ** 12
    g = (1 + 2 * p + q * r) ** 10
    return f * g


def wl_triangle():
    return build_triangle(catalog.preset("ex3_5").weights, 16)


def wl_hankel():
    return check_xtp(column_hankel(catalog.preset("ex3_3").weights, 6).matrix, 4)


def wl_counterexample():
    return check_xtp(column_hankel(catalog.counterexample_weights(1, 2), 5).matrix, 5)


WORKLOADS = {
    "sparse mul (3 vars)": wl_mul,
    "ex3_5 triangle, 16 rows": wl_triangle,
    "ex3_3 Hankel N=6 order 4": wl_hankel,
    "counterexample Hankel N=5": wl_counterexample,
}


def run(repeat: int = 3) -> dict:
    kernels = _kernels()
    saved = polyring.K
    results = {}
    try:
        for label, fn in WORKLOADS.items():
            row = {}
            for kname, mod in kernels.items():
                polyring.K = mod
                times = []
                for _ in range(repeat):
                    t0 = time.perf_counter()
                    fn()
                    times.append(time.perf_counter() - t0)
                row[kname] = median(times)
            results[label] = row
    finally:
        polyring.K = saved
    return results


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ns = ap.parse_args()
    res = run(ns.repeat)
    names = sorted({k for row in res.values() for k in row})
    print(f"{'workload':32s}" + "".join(f"{n:>12s}" for n in names) + "     speedup")
    for label, row in res.items():
        cells = "".join(f"{row.get(n, float('nan')):12.4f}" for n in names)
        sp = row["python"] / row["cython"] if "cython" in row else float("nan")
        print(f"{label:32s}{cells}{sp:11.2f}x")


if __name__ == "__main__":
    main()
