"""Lattice point enumeration for closed and half-open polytopes.

Counting scans the integer bounding box fiber by fiber: the first d-1
coordinates are enumerated and the last coordinate's feasible interval
is solved from the integerized constraint system.  Everything is exact
integer arithmetic; boxes stay small at desk scale (<= 10^6 points).

A half-open polytope is a base polytope with a subset of facets removed,
i.e. those inequalities become strict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Iterator, Sequence

from .geometry import (
    EMPTY,
    Polytope,
    _require_polytope,
    dot_int,
    face_lattice,
)
from .linalg import vec

# (coefficients, rhs, strict): sum a_i x_i <= b, or < b when strict
Constraint = tuple[tuple[int, ...], int, bool]


@dataclass(frozen=True)
class HalfOpenPolytope:
    """base minus the union of the facets indexed by `removed`."""

    base: Polytope
    removed: frozenset[int]

    def __post_init__(self):
        n = len(self.base.facets)
        if any(i < 0 or i >= n for i in self.removed):
            raise ValueError("removed facet index out of range")

    @property
    def proper(self) -> bool:
        """True when at least one facet is removed (the set is not closed)."""
        return bool(self.removed)

    def contains_point(self, x: Sequence) -> bool:
        p = vec(x)
        base = self.base
        for e, f in base.aff_equalities:
            if dot_int(e, p) != f:
                return False
        for i, fct in enumerate(base.facets):
            v = dot_int(fct.normal, p)
            if i in self.removed:
                if v >= fct.offset:
                    return False
            elif v > fct.offset:
                return False
        return True


def closed(P: Polytope) -> HalfOpenPolytope:
    return HalfOpenPolytope(P, frozenset())


def _constraints(H: HalfOpenPolytope, all_strict: bool = False) -> list[Constraint] | None:
    """Integerized constraint system, or None when no lattice point can exist."""
    base = H.base
    out: list[Constraint] = []
    for e, f in base.aff_equalities:
        if f.denominator != 1:
            return None
        fi = int(f)
        out.append((e, fi, False))
        out.append((tuple(-c for c in e), -fi, False))
    for i, fct in enumerate(base.facets):
        strict = all_strict or (i in H.removed)
        b = fct.offset
        if strict:
            # a.x < b over integers: a.x <= ceil(b) - 1
            rhs = -((-b.numerator) // b.denominator) - 1
        else:
            rhs = b.numerator // b.denominator  # floor(b)
        out.append((fct.normal, rhs, False))
    return out


def _box(P: Polytope) -> list[tuple[int, int]] | None:
    out = []
    for lo, hi in P.bounding_box:
        lo_i = -((-lo.numerator) // lo.denominator)  # ceil
        hi_i = hi.numerator // hi.denominator  # floor
        if lo_i > hi_i:
            return None
        out.append((lo_i, hi_i))
    return out


def _enumerate(cons: list[Constraint], box: list[tuple[int, int]]) -> Iterator[tuple[int, ...]]:
    d = len(box)
    prefix_ranges = [range(lo, hi + 1) for lo, hi in box[:-1]]
    last_lo, last_hi = box[-1]
    for prefix in product(*prefix_ranges):
        lo, hi = last_lo, last_hi
        ok = True
        for a, b, _ in cons:
            r = b - sum(ai * pi for ai, pi in zip(a[:-1], prefix))
            ad = a[-1]
            if ad == 0:
                if r < 0:
                    ok = False
                    break
            elif ad > 0:
                q = r // ad
                if q < hi:
                    hi = q
            else:
                q = -(r // (-ad))  # ceil(r / ad) with ad < 0
                if q > lo:
                    lo = q
            if lo > hi:
                ok = False
                break
        if ok:
            for x in range(lo, hi + 1):
                yield prefix + (x,)


def half_open_points(H: HalfOpenPolytope) -> list[tuple[int, ...]]:
    """Lattice points of a half-open polytope, lexicographic order."""
    cons = _constraints(H)
    if cons is None:
        return []
    box = _box(H.base)
    if box is None:
        return []
    return list(_enumerate(cons, box))


def lattice_points(P: Polytope) -> list[tuple[int, ...]]:
    """Lattice points of a closed polytope, lexicographic order."""
    return half_open_points(closed(_require_polytope(P)))


def relint_points(P: Polytope) -> list[tuple[int, ...]]:
    """Lattice points in the relative interior (all facets strict)."""
    P = _require_polytope(P)
    cons = _constraints(closed(P), all_strict=True)
    if cons is None:
        return []
    box = _box(P)
    if box is None:
        return []
    return list(_enumerate(cons, box))


@lru_cache(maxsize=1 << 18)
def _count_cached(H: HalfOpenPolytope) -> int:
    cons = _constraints(H)
    if cons is None:
        return 0
    box = _box(H.base)
    if box is None:
        return 0
    d = len(box)
    prefix_ranges = [range(lo, hi + 1) for lo, hi in box[:-1]]
    last_lo, last_hi = box[-1]
    total = 0
    for prefix in product(*prefix_ranges):
        lo, hi = last_lo, last_hi
        for a, b, _ in cons:
            r = b - sum(ai * pi for ai, pi in zip(a[:-1], prefix))
            ad = a[-1]
            if ad == 0:
                if r < 0:
                    lo = hi + 1
                    break
            elif ad > 0:
                q = r // ad
                if q < hi:
                    hi = q
            else:
                q = -(r // (-ad))
                if q > lo:
                    lo = q
            if lo > hi:
                break
        if lo <= hi:
            total += hi - lo + 1
    return total


def count_lattice_points(P: Polytope) -> int:
    return _count_cached(closed(_require_polytope(P)))


def count_half_open(H: HalfOpenPolytope) -> int:
    return _count_cached(H)


def count_relint_points(P: Polytope) -> int:
    return len(relint_points(P))


def euler_relint_value(phi: Callable[[Polytope], Fraction], P: Polytope) -> Fraction:
    """Inclusion-exclusion value of phi on the relative interior of P.

    Alternating sum of phi over all nonempty faces, weighted by
    (-1)^(dim P - dim F).  For the lattice point count this equals the
    number of interior lattice points.
    """
    P = _require_polytope(P)
    total = Fraction(0)
    for f in face_lattice(P).faces:
        total += (-1) ** (P.dim - f.dim) * Fraction(phi(f.polytope))
    return total
