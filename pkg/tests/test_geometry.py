"""Convex hulls, faces, Minkowski sums, and exact volumes."""

from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given

from mixedval import (
    EMPTY,
    DimensionMismatch,
    contains,
    convex_hull,
    cut_halfspace,
    dilate,
    exact_volume,
    face_lattice,
    hyperplane_section,
    minkowski_sum,
    minkowski_sum_all,
    origin_polytope,
    point_polytope,
    scale,
    translate,
)
from mixedval.geometry import solve_in_basis

from .conftest import hull
from .strategies import lattice_polytopes

F = Fraction


def test_hull_drops_non_vertices():
    P = hull((0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0))
    assert len(P.vertices) == 4
    assert P.dim == 2
    assert P.is_integral


def test_hull_of_collinear_points_is_a_segment():
    P = hull((0, 0), (1, 1), (3, 3))
    assert P.dim == 1
    assert set(P.vertices) == {(F(0), F(0)), (F(3), F(3))}


def test_hull_of_nothing_is_empty():
    assert convex_hull([], lattice="Z") is EMPTY


def test_mixed_dimension_points_rejected():
    with pytest.raises(DimensionMismatch):
        convex_hull([(0, 0), (1, 0, 0)], lattice="Z")


def test_face_lattice_of_square(unit_square):
    counts = Counter(f.dim for f in face_lattice(unit_square).faces)
    assert counts == {0: 4, 1: 4, 2: 1}


def test_face_lattice_euler_relation(unit_square, unit_triangle):
    for P in (unit_square, unit_triangle):
        assert sum((-1) ** f.dim for f in face_lattice(P).faces) == 1


def test_edges_and_directions(unit_square, unit_triangle):
    assert len(unit_square.edges) == 4
    assert set(unit_square.edge_directions) == {(0, 1), (1, 0)}
    assert len(unit_triangle.edges) == 3
    assert set(unit_triangle.edge_directions) == {(0, 1), (1, 0), (1, -1)}


def test_minkowski_sum_of_square_and_diagonal(unit_square):
    S = hull((0, 0), (1, 1))
    hexagon = minkowski_sum(unit_square, S)
    assert len(hexagon.vertices) == 6
    # area(P) + area(S) + normalized mixed area: 1 + 0 + 2
    assert exact_volume(hexagon) == F(3)


def test_minkowski_sum_with_point_translates(unit_triangle):
    moved = minkowski_sum(unit_triangle, point_polytope((5, 7)))
    assert moved == translate(unit_triangle, (5, 7))


def test_dilate_matches_repeated_sum(unit_triangle):
    assert dilate(unit_triangle, 3) == minkowski_sum_all([unit_triangle] * 3)
    assert dilate(unit_triangle, 0) == origin_polytope(2)


def test_scale_by_a_fraction_leaves_the_lattice(unit_square):
    half = scale(unit_square, F(1, 2))
    assert not half.is_integral
    assert exact_volume(half) == F(1, 4)


def test_containment(unit_square):
    inner = hull((0, 0), (1, 0), (0, 1))
    assert contains(unit_square, inner)
    assert not contains(inner, unit_square)
    assert contains(unit_square, unit_square)


def test_cut_halfspace_keeps_the_below_side(unit_square):
    left = cut_halfspace(unit_square, (1, 0), F(1, 2))
    assert max(v[0] for v in left.vertices) == F(1, 2)
    assert exact_volume(left) == F(1, 2)
    assert cut_halfspace(unit_square, (1, 0), F(-1)) is EMPTY


def test_hyperplane_section(unit_square):
    middle = hyperplane_section(unit_square, (1, 0), F(1, 2))
    assert middle.dim == 1
    assert exact_volume(middle) == 0
    assert hyperplane_section(unit_square, (1, 0), F(9)) is EMPTY


def test_exact_volumes():
    assert exact_volume(hull((0, 0), (1, 0), (0, 1))) == F(1, 2)
    assert exact_volume(hull((0, 0), (1, 0), (0, 1), (1, 1))) == F(1)
    cube = hull(*[(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])
    assert exact_volume(cube) == F(1)
    # Lower-dimensional bodies have zero ambient volume.
    assert exact_volume(hull((0, 0), (5, 0))) == 0
    assert exact_volume(point_polytope((1, 2))) == 0


def test_solve_in_basis_round_trip():
    basis = [(F(1), F(1)), (F(0), F(2))]
    coeffs = solve_in_basis(basis, (F(3), F(7)))
    assert coeffs == (F(3), F(2))


@given(lattice_polytopes())
def test_hull_is_idempotent(P):
    assert convex_hull(P.vertices, lattice="Z") == P


@given(lattice_polytopes())
def test_doubling_is_self_sum(P):
    assert dilate(P, 2) == minkowski_sum(P, P)


@given(lattice_polytopes(dim=2))
def test_volume_is_translation_invariant(P):
    assert exact_volume(translate(P, (11, -7))) == exact_volume(P)


@given(lattice_polytopes(dim=2), lattice_polytopes(dim=2))
def test_sum_contains_translates_of_both(P, Q):
    # P + q0 and p0 + Q both sit inside P + Q.
    total = minkowski_sum(P, Q)
    assert contains(total, translate(P, Q.vertices[0]))
    assert contains(total, translate(Q, P.vertices[0]))
