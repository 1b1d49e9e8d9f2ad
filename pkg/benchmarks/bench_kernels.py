"""Benchmark the numba kernels against the pure-numpy fallbacks.

Times the integer Cayley-table kernels from fanloops._kernels on cyclic-group
tables of increasing order plus one nonassociative table, and the reduced
Latin-square counter.  The exact-rational lane (lp/haar) has no numba path
and is out of scope here.

Run:  python3 benchmarks/bench_kernels.py [--sizes 64,128,256] [--repeats 5]

The same comparison can be driven through the public API by exporting
FANLOOPS_PURE=1, which forces the fallback path package-wide.
"""

import argparse
import time

import numpy as np

from fanloops import _kernels as K
from fanloops import products


def cyclic_table(n):
    i = np.arange(n, dtype=np.int16)
    return (i[:, None] + i[None, :]) % n


def best_of(fn, args, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def run_pair(name, fn_nb, fn_np, args, repeats, rows):
    if K.HAS_NUMBA:
        fn_nb(*args)  # compile before timing
        t_nb, out_nb = best_of(fn_nb, args, repeats)
    else:
        t_nb, out_nb = float("nan"), None
    t_np, out_np = best_of(fn_np, args, repeats)
    if out_nb is not None:
        same = all(
            np.array_equal(a, b) for a, b in zip(np.atleast_1d(out_nb),
                                                 np.atleast_1d(out_np))
        )
        assert same, f"{name}: kernel paths disagree"
    rows.append((name, t_nb * 1e3, t_np * 1e3, t_np / t_nb))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="64,128,256",
                    help="comma-separated table orders for the tensor kernels")
    ap.add_argument("--repeats", type=int, default=5,
                    help="best-of-N timing repeats")
    ap.add_argument("--census-order", type=int, default=6,
                    help="order for the reduced-square counting benchmark")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if not K.HAS_NUMBA:
        print("numba not importable: timing the fallback path only\n")
    elif not K.USE_NUMBA:
        print("FANLOOPS_PURE is set; timing both paths directly anyway\n")

    rows = []
    for n in sizes:
        table = cyclic_table(n)
        ldiv, rdiv = K.division_tables(table)
        member = np.ones(n, np.bool_)
        run_pair(f"latin_violation      n={n}", K._latin_violation_nb,
                 K._latin_violation_np, (table,), args.repeats, rows)
        run_pair(f"division_tables      n={n}", K._division_tables_nb,
                 K._division_tables_np, (table,), args.repeats, rows)
        run_pair(f"assoc_tensors        n={n}", K._assoc_tensors_nb,
                 K._assoc_tensors_np, (table, ldiv, rdiv), args.repeats, rows)
        run_pair(f"nucleus_masks        n={n}", K._nucleus_masks_nb,
                 K._nucleus_masks_np, (table,), args.repeats, rows)
        run_pair(f"fan_violation        n={n}", K._fan_violation_nb,
                 K._fan_violation_np, (table, ldiv, rdiv, member),
                 args.repeats, rows)

    # one nonassociative table: the order-32 sedenion basis loop
    G = products.cayley_dickson_basis_loop(4)
    table = G.table.astype(np.int16)
    ldiv, rdiv = K.division_tables(table)
    run_pair("assoc_tensors        sedenion n=32", K._assoc_tensors_nb,
             K._assoc_tensors_np, (table, ldiv, rdiv), args.repeats, rows)

    run_pair(f"count_reduced_latin  n={args.census_order}",
             K._count_reduced_nb, K._count_reduced_py,
             (args.census_order,), args.repeats, rows)

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numba ms':>10}  {'numpy ms':>10}  "
          f"{'speedup':>8}")
    for name, t_nb, t_np, ratio in rows:
        print(f"{name:<{width}}  {t_nb:>10.3f}  {t_np:>10.3f}  "
              f"{ratio:>7.1f}x")


if __name__ == "__main__":
    main()
