#!/usr/bin/env python3
"""Tabulate brute-force maxima of free families against the closed-form
bounds.

Example:
    python scripts/extremal_table.py --binary-max 4 --mod 3:2 --capset-max 2
"""

import argparse

from slicerank.bounds import mod_count_bound, subset_family_bound
from slicerank.search import CAPSET, SearchConfig, max_free_family
from slicerank.setsys import BINARY, MOD


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--binary-max", type=int, default=4, help="largest binary n")
    parser.add_argument("--mod", default="3:2", help="D:n_max for the mod-D rows")
    parser.add_argument("--capset-max", type=int, default=2, help="largest capset n")
    parser.add_argument("--budget", type=int, default=2_000_000)
    args = parser.parse_args()

    print(f"{'setting':10} {'n':>3} {'max':>5} {'optimal':>8} {'nodes':>9} {'bound':>8}")
    for n in range(1, args.binary_max + 1):
        r = max_free_family(SearchConfig(BINARY, n, node_budget=args.budget))
        print(
            f"{'binary':10} {n:>3} {r.max_size:>5} {str(r.optimal):>8} "
            f"{r.nodes:>9} {subset_family_bound(n):>8}"
        )

    D, n_max = (int(p) for p in args.mod.split(":"))
    for n in range(1, n_max + 1):
        r = max_free_family(SearchConfig(MOD, n, D=D, node_budget=args.budget))
        print(
            f"{f'mod-{D}':10} {n:>3} {r.max_size:>5} {str(r.optimal):>8} "
            f"{r.nodes:>9} {mod_count_bound(n, D):>8}"
        )

    for n in range(1, args.capset_max + 1):
        r = max_free_family(SearchConfig(CAPSET, n, node_budget=args.budget))
        print(
            f"{'capset':10} {n:>3} {r.max_size:>5} {str(r.optimal):>8} "
            f"{r.nodes:>9} {3 ** n:>8}"
        )


if __name__ == "__main__":
    main()
