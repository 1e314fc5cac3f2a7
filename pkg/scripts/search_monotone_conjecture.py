#!/usr/bin/env python3
"""Empirical search for weak h-vector monotonicity violations.

For the lattice-point count the monotonicity of h-vectors under
passing to a facet is conjectural, not proved, so this script only
*searches*: it samples simplices, compares h-vectors against those of
their facets entrywise, and reports what it finds.  It asserts
nothing; a reported violation would be a discovery, not a bug.

Alongside the plain count, a small grid of integer combinations
a*count + b*euler + c*interior is swept, since combinations are where
violations are cheap to find (negative entries appear already for
a=1, b=-2, c=0).
"""

from __future__ import annotations

import argparse
import itertools
from fractions import Fraction

from mixedval import Valuation, builtin_valuations, weak_hstar_monotone_check


def combination(a: int, b: int, c: int) -> Valuation:
    base = builtin_valuations()
    dvol, euler, interior = base["dvol"], base["euler"], base["interior"]

    def func(P):
        return a * dvol(P) + b * euler(P) + c * interior(P)

    return Valuation(f"{a}*dvol{b:+d}*euler{c:+d}*interior", func, "Z")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=300, help="simplices per valuation")
    parser.add_argument("--dim", type=int, default=2, help="ambient dimension")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--coeff-bound", type=int, default=1, help="grid radius for b, c")
    args = parser.parse_args()

    candidates: list[Valuation] = [builtin_valuations()["dvol"]]
    for b, c in itertools.product(range(-args.coeff_bound, args.coeff_bound + 1), repeat=2):
        if (b, c) != (0, 0):
            candidates.append(combination(1, b, c))

    print(f"searching dim {args.dim}, {args.trials} simplices per valuation\n")
    clean = 0
    for phi in candidates:
        report = weak_hstar_monotone_check(
            phi, trials=args.trials, ambient_dim=args.dim, seed=args.seed
        )
        if report.ok:
            clean += 1
            print(f"  no violation   {phi.name:34s} ({report.checked} comparisons)")
        else:
            v = report.violations[0]
            print(f"  VIOLATION      {phi.name:34s} first: {v}")

    print(f"\n{clean}/{len(candidates)} candidate valuations survived the search.")
    print("Survival here is evidence, not proof.")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
