"""Hypothesis strategies for lattice polytopes with small coordinates.

Shrinking works on the raw vertex lists, so counterexamples come out
close to minimal.
"""

from __future__ import annotations

from hypothesis import strategies as st

from mixedval import Polytope, convex_hull


def lattice_points(dim: int, bound: int = 3):
    coord = st.integers(-bound, bound)
    return st.tuples(*[coord] * dim)


@st.composite
def lattice_polytopes(
    draw,
    dim: int | None = None,
    max_dim: int = 3,
    max_vertices: int = 5,
    bound: int = 3,
) -> Polytope:
    d = dim if dim is not None else draw(st.integers(1, max_dim))
    pts = draw(st.lists(lattice_points(d, bound), min_size=1, max_size=max_vertices))
    return convex_hull(pts, lattice="Z")


@st.composite
def polytope_families(
    draw,
    arity: int,
    dim: int | None = None,
    max_dim: int = 3,
    max_vertices: int = 4,
    bound: int = 2,
) -> list[Polytope]:
    d = dim if dim is not None else draw(st.integers(1, max_dim))
    return [
        draw(lattice_polytopes(dim=d, max_vertices=max_vertices, bound=bound))
        for _ in range(arity)
    ]
