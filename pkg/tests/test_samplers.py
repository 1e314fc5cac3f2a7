"""Seeded random generators used by the self-checks and experiments."""

import random

from mixedval import contains
from mixedval.samplers import (
    random_direction,
    random_lattice_box,
    random_lattice_polytope,
    random_lattice_simplex,
    random_nested_pair,
    random_rational_polytope,
    random_relint_point,
)


def test_samplers_are_deterministic():
    a = random_lattice_polytope(random.Random(7), 2)
    b = random_lattice_polytope(random.Random(7), 2)
    assert a == b


def test_lattice_polytope_contract(rng):
    for _ in range(20):
        P = random_lattice_polytope(rng, 3, bound=2)
        assert P.is_integral
        assert P.ambient_dim == 3
        assert all(abs(c) <= 2 for v in P.vertices for c in v)


def test_full_dim_request(rng):
    for _ in range(10):
        P = random_lattice_polytope(rng, 2, full_dim=True)
        assert P.dim == 2


def test_simplex_has_affinely_independent_vertices(rng):
    for _ in range(20):
        S = random_lattice_simplex(rng, 3)
        assert len(S.vertices) == S.dim + 1


def test_box_is_full_dimensional(rng):
    B = random_lattice_box(rng, 3)
    assert B.dim == 3
    assert len(B.vertices) == 8


def test_rational_polytope_denominators(rng):
    P = random_rational_polytope(rng, 2)
    assert P.ambient_dim == 2


def test_nested_pair_is_nested(rng):
    for _ in range(20):
        inner, outer = random_nested_pair(rng, 2)
        assert contains(outer, inner)


def test_relint_point_lies_inside(rng):
    for _ in range(20):
        P = random_lattice_polytope(rng, 2, full_dim=True)
        q = random_relint_point(rng, P)
        assert P.contains_point(q)
        # Strictly inside: no facet is tight.
        assert all(
            sum(a * x for a, x in zip(f.normal, q)) != f.offset for f in P.facets
        )


def test_direction_is_nonzero(rng):
    for _ in range(20):
        u = random_direction(rng, 3)
        assert any(u)
