#!/usr/bin/env python3
"""Print the full classification table of contractive idempotents for the
classical catalogue groups: one row per idempotent with its norm, Haar flag,
and the generating subgroup/character or coset."""

import argparse

from quidem import function_algebra, group_algebra, cyclic, dihedral, symmetric
from quidem.idempotents import decompose, enumerate_function_algebra, enumerate_group_algebra

CATALOGUE = {
    "czn2": lambda: function_algebra(cyclic(2)),
    "czn4": lambda: function_algebra(cyclic(4)),
    "czn6": lambda: function_algebra(cyclic(6)),
    "cs3": lambda: function_algebra(symmetric(3)),
    "cstar-zn4": lambda: group_algebra(cyclic(4)),
    "cstar-d4": lambda: group_algebra(dihedral(4)),
    "cstar-s3": lambda: group_algebra(symmetric(3)),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("names", nargs="*", default=list(CATALOGUE),
                        help=f"which groups (default: all of {', '.join(CATALOGUE)})")
    args = parser.parse_args()
    names = args.names or list(CATALOGUE)
    for name in names:
        G = CATALOGUE[name]()
        items = (
            enumerate_function_algebra(G) if G.kind == "function" else enumerate_group_algebra(G)
        )
        print(f"\n{G.name}  ({len(items)} contractive idempotents)")
        print("-" * 72)
        for k, item in enumerate(items):
            rep = decompose(G, item.functional)
            haar = "haar" if rep.haar else "NOT haar"
            print(f"  [{k:2d}] norm={item.functional.norm:.6f}  {haar:8s}  {item.label}")


if __name__ == "__main__":
    main()
