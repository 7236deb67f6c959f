#!/usr/bin/env python3
"""Print the capacity constants, the growth-rate table, the convergence of
the finite-n layer-bound root, and a sweep of the exact count-vs-growth
check.
"""

import argparse

from slicerank.bounds import (
    capacities_summary,
    capacity_upper,
    count_below_growth_power,
    format_float,
    layer_bound_root,
    mod_growth_rate,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-d", type=int, default=10)
    parser.add_argument("--roots", default="30,100,300", help="n values for the root table")
    parser.add_argument("--sweep-n", type=int, default=50)
    parser.add_argument("--sweep-d", type=int, default=20)
    args = parser.parse_args()

    print("capacity constants")
    for r in capacities_summary():
        print(f"  {r.name:26} {format_float(r.value)}")

    print("\ngrowth rates g_D = (3/2^(2/3)) (D-1)^(2/3)")
    for D in range(3, args.max_d + 1):
        r = mod_growth_rate(D)
        exact = f" (= {r.exact} exactly)" if r.exact is not None else ""
        print(f"  D={D:<3} {format_float(r.value)}{exact}")

    print("\nlayer-bound root convergence to", format_float(capacity_upper()))
    for n in (int(p) for p in args.roots.split(",")):
        root = layer_bound_root(n)
        print(f"  n={n:<5} {format_float(root)}  (gap {format_float(capacity_upper() - root)})")

    ok = all(
        count_below_growth_power(n, D)
        for D in range(3, args.sweep_d + 1)
        for n in range(1, args.sweep_n + 1)
    )
    print(f"\nexact count <= growth^n check, n<= {args.sweep_n}, D<= {args.sweep_d}: {ok}")


if __name__ == "__main__":
    main()
