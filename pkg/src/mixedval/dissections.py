"""Half-open machinery and dissections.

A dissection covers a polytope by full-dimensional cells meeting only in
boundaries.  Making each cell half-open (dropping the facets visible
from a fixed generic point) turns the cover into an exact partition of
lattice points, which is what every certificate here counts.  Cells are
remembered as Minkowski sums so they can be rescaled one summand at a
time.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .counting import HalfOpenPolytope, count_half_open, count_lattice_points
from .geometry import (
    EMPTY,
    CertificateError,
    DimensionMismatch,
    GeometryError,
    InexactSum,
    NotGeneric,
    Polytope,
    _lattice_tag,
    _require_polytope,
    contains,
    convex_hull,
    dilate,
    dot_int,
    hyperplane_section,
    minkowski_sum,
    minkowski_sum_all,
    placing_cells,
    solve_in_basis,
    translate,
)
from .linalg import feasible_nonneg, is_zero, vadd, vec, vsub
from .samplers import random_relint_point

_msum = lru_cache(maxsize=1 << 16)(minkowski_sum)


# -- half-open operators ------------------------------------------------------


def half_open_by_point(P: Polytope, q: Sequence) -> HalfOpenPolytope:
    """Remove the facets of P visible from q.

    q must lie in the affine hull of P and on no facet hyperplane; with
    q inside P nothing is removed.
    """
    P = _require_polytope(P)
    qv = vec(q)
    if len(qv) != P.ambient_dim:
        raise DimensionMismatch("opening point has the wrong dimension")
    for e, f0 in P.aff_equalities:
        if dot_int(e, qv) != f0:
            raise GeometryError("opening point must lie in the affine hull")
    removed = set()
    for i, f in enumerate(P.facets):
        s = dot_int(f.normal, qv)
        if s == f.offset:
            raise NotGeneric("opening point lies on a facet hyperplane")
        if s > f.offset:
            removed.add(i)
    return HalfOpenPolytope(P, frozenset(removed))


def half_open_by_direction(P: Polytope, u: Sequence) -> HalfOpenPolytope:
    """Remove the facets whose outer normal makes a positive pairing
    with u; the direction must be parallel to aff(P) and parallel to no
    facet hyperplane."""
    P = _require_polytope(P)
    uv = vec(u)
    if len(uv) != P.ambient_dim:
        raise DimensionMismatch("direction has the wrong dimension")
    if is_zero(uv):
        raise NotGeneric("direction must be nonzero")
    for e, _ in P.aff_equalities:
        if dot_int(e, uv) != 0:
            raise NotGeneric("direction must be parallel to the affine hull")
    removed = set()
    for i, f in enumerate(P.facets):
        s = dot_int(f.normal, uv)
        if s == 0:
            raise NotGeneric("direction is parallel to a facet hyperplane")
        if s > 0:
            removed.add(i)
    return HalfOpenPolytope(P, frozenset(removed))


def direction_matching_point(P: Polytope, q: Sequence) -> tuple[int, ...]:
    """For a simplex P and a generic point q outside it, an integer
    direction u with the same removed facets as the point operator.

    Works by exact LP feasibility: u ranges over the direction space of
    aff(P) and each facet normal is forced to the sign q induces.
    """
    P = _require_polytope(P)
    if len(P.vertices) != P.dim + 1:
        raise GeometryError("a matching direction is promised for simplices only")
    H = half_open_by_point(P, q)
    if not H.removed:
        raise GeometryError("point sees no facet; a direction always sees one")
    _, basis = P._chart
    k = len(basis)
    facets = P.facets
    nf = len(facets)
    # sigma_i <a_i, u> >= 1 with u = sum_t (w+_t - w-_t) basis_t
    rows = []
    for i, f in enumerate(facets):
        sigma = 1 if i in H.removed else -1
        coeffs = [sigma * dot_int(f.normal, b) for b in basis]
        rows.append(
            coeffs
            + [-c for c in coeffs]
            + [Fraction(-1) if j == i else Fraction(0) for j in range(nf)]
        )
    sol = feasible_nonneg(rows, [1] * nf)
    if sol is None:
        raise GeometryError("no matching direction exists")
    w = [sol[t] - sol[k + t] for t in range(k)]
    u = [
        sum((w[t] * basis[t][i] for t in range(k)), Fraction(0))
        for i in range(P.ambient_dim)
    ]
    den = 1
    for x in u:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ui = tuple(int(x * den) for x in u)
    if half_open_by_direction(P, ui).removed != H.removed:
        raise CertificateError("solved direction disagrees with the point")
    return ui


# -- mixed cells and dissections ------------------------------------------------


def _face_index(P: Polytope, a: tuple[int, ...]) -> int:
    """Index of the facet of P whose vertex set maximizes <a, .>; the
    maximizing face must actually be a facet."""
    vals = [dot_int(a, v) for v in P.vertices]
    mx = max(vals)
    tight = frozenset(t for t, v in enumerate(vals) if v == mx)
    idx = P.facet_by_tight_set.get(tight)
    if idx is None:
        raise CertificateError("maximizing face is not a facet")
    return idx


@dataclass(frozen=True)
class MixedCell:
    """A dissection cell remembered as a Minkowski sum.

    `cell` is the sum of `summands`; `removed` indexes into cell.facets
    and records the half-open state.  The sum is exact: the cell
    dimension equals the total of the summand dimensions, which makes
    every facet attributable to exactly one summand.
    """

    summands: tuple[Polytope, ...]
    cell: Polytope
    removed: frozenset[int] = frozenset()

    @property
    def cylinder_rank(self) -> int:
        """How many summands have positive dimension."""
        return sum(1 for R in self.summands if R.dim > 0)

    @property
    def is_exact(self) -> bool:
        return self.cell.dim == sum(R.dim for R in self.summands)

    @cached_property
    def owners(self) -> tuple[int, ...]:
        """For each facet of the cell, the unique summand whose face in
        that direction is proper."""
        out = []
        for f in self.cell.facets:
            owner = None
            for j, R in enumerate(self.summands):
                vals = [dot_int(f.normal, v) for v in R.vertices]
                if min(vals) != max(vals):
                    if owner is not None:
                        raise InexactSum("facet attribution is ambiguous")
                    owner = j
            if owner is None:
                raise InexactSum("facet attribution failed")
            out.append(owner)
        return tuple(out)

    def half_open(self) -> HalfOpenPolytope:
        return HalfOpenPolytope(self.cell, self.removed)

    def count(self) -> int:
        return count_half_open(self.half_open())

    def with_removed(self, removed: frozenset[int]) -> "MixedCell":
        return MixedCell(self.summands, self.cell, removed)

    def summand_half_open(self, j: int) -> HalfOpenPolytope:
        """Summand j carrying the removed facets attributed to it."""
        R = self.summands[j]
        idx = set()
        for i in self.removed:
            if self.owners[i] == j:
                idx.add(_face_index(R, self.cell.facets[i].normal))
        return HalfOpenPolytope(R, frozenset(idx))

    def scaled_half_open(self, n: Sequence[int]) -> HalfOpenPolytope | None:
        """The cell rescaled summand-wise by n, half-open state carried
        along; None when a removed facet's owner collapses to a point,
        which empties the strict side of a now-constant constraint."""
        if len(n) != len(self.summands):
            raise ValueError("one scale per summand")
        if any(k < 0 for k in n):
            raise ValueError("scales must be nonnegative")
        removed_normals = []
        for i in sorted(self.removed):
            if n[self.owners[i]] == 0:
                return None
            removed_normals.append(self.cell.facets[i].normal)
        scaled: Polytope | None = None
        for R, k in zip(self.summands, n):
            part = dilate(R, k)
            scaled = part if scaled is None else _msum(scaled, part)
        idx = frozenset(_face_index(scaled, a) for a in removed_normals)
        return HalfOpenPolytope(scaled, idx)


@dataclass(frozen=True)
class Dissection:
    """Interior-disjoint cells covering a target polytope.

    `opener`, when set, is the generic point whose visibility fixed each
    cell's removed facets.  `factors`, when set, records the polytopes
    whose Minkowski sum is dissected; every cell then carries one
    summand per factor, contained in it, and can be rescaled.
    """

    target: Polytope
    cells: tuple[MixedCell, ...]
    opener: tuple[Fraction, ...] | None = None
    factors: tuple[Polytope, ...] | None = None

    def cell_counts(self) -> list[int]:
        return [c.count() for c in self.cells]


def _has_tie(cells: Sequence[MixedCell], q: Sequence[Fraction]) -> bool:
    for c in cells:
        for f in c.cell.facets:
            if dot_int(f.normal, q) == f.offset:
                return True
    return False


def generic_opener(
    target: Polytope,
    cells: Sequence[MixedCell],
    *,
    seed: int = 0,
    from_polytope: Polytope | None = None,
) -> tuple[Fraction, ...]:
    """A seeded point in the relative interior of `from_polytope` (the
    target by default) avoiding every cell facet hyperplane.  Candidates
    with exact ties are rejected and re-drawn with growing weights."""
    src = from_polytope if from_polytope is not None else target
    rng = random.Random(seed)
    for attempt in range(256):
        q = random_relint_point(rng, src, weight_bound=97 + 31 * attempt)
        if not _has_tie(cells, q):
            return tuple(q)
    raise NotGeneric("no generic opener found; target may be degenerate")


def open_dissection(
    D: Dissection, q: Sequence | None = None, *, seed: int = 0
) -> Dissection:
    """Give every cell the half-open state induced by visibility from q.

    Without q a seeded generic interior point of the target is drawn,
    making the half-open target closed, so the cell counts add up to the
    plain lattice-point count.  An explicit q on any cell facet
    hyperplane raises NotGeneric.
    """
    if q is not None:
        qv = vec(q)
        if _has_tie(D.cells, qv):
            raise NotGeneric("opening point lies on a cell facet hyperplane")
    else:
        qv = vec(generic_opener(D.target, D.cells, seed=seed))
    cells = tuple(
        c.with_removed(
            frozenset(
                i
                for i, f in enumerate(c.cell.facets)
                if dot_int(f.normal, qv) > f.offset
            )
        )
        for c in D.cells
    )
    return Dissection(D.target, cells, tuple(qv), D.factors)


def certify_dissection(D: Dissection) -> int:
    """Check the lattice-count certificate: half-open cell counts must
    add up to the count of the half-open target, as seen from the same
    opener.  Returns the certified total."""
    if D.opener is None:
        raise CertificateError("dissection has no half-open state")
    total = sum(c.count() for c in D.cells)
    expect = count_half_open(half_open_by_point(D.target, D.opener))
    if total != expect:
        raise CertificateError(
            f"cells count {total} lattice points, the target {expect}"
        )
    return total


def _scaled_sum(polys: Sequence[Polytope], n: Sequence[int]) -> Polytope:
    total: Polytope | None = None
    for P, k in zip(polys, n):
        if k == 0:
            continue
        part = dilate(P, k)
        total = part if total is None else _msum(total, part)
    if total is None:
        d = polys[0].ambient_dim
        return convex_hull([(0,) * d])
    return total


def dilated_cell_counts(D: Dissection, n: Sequence[int]) -> list[int]:
    """Half-open lattice counts of every cell rescaled summand-wise by n.

    Needs a factored, opened dissection.  The counts add up to the
    lattice-point count of n1 P1 + ... + nr Pr.
    """
    if D.factors is None:
        raise ValueError("dissection does not track factors")
    if D.opener is None:
        raise ValueError("dissection has no half-open state; open it first")
    n = tuple(int(k) for k in n)
    if len(n) != len(D.factors):
        raise ValueError("one dilation factor per factor polytope")
    out = []
    for c in D.cells:
        H = c.scaled_half_open(n)
        out.append(0 if H is None else count_half_open(H))
    return out


def certify_dilations(D: Dissection, samples: Iterable[Sequence[int]]) -> None:
    """Check the rescaled certificate at every sample vector."""
    for n in samples:
        total = sum(dilated_cell_counts(D, n))
        expect = count_lattice_points(_scaled_sum(D.factors, n))
        if total != expect:
            raise CertificateError(
                f"scaled cells count {total} at {tuple(n)}, the target {expect}"
            )


# -- box cells ------------------------------------------------------------------


def order_simplex(d: int) -> Polytope:
    """The simplex 0 <= x_1 <= ... <= x_d <= 1."""
    if d < 1:
        raise ValueError("need d >= 1")
    verts = [tuple(1 if i >= d - t else 0 for i in range(d)) for t in range(d + 1)]
    return convex_hull(verts)


def boxcell_dissection(d: int, n: int, *, seed: int = 0) -> Dissection:
    """Dissect the n-th dilate of the order simplex into half-open
    cylinders, one per weakly increasing base vector in {0..n-1}^d.

    A cell is its base point plus one order simplex per constant block
    of the base vector, so a cell with k blocks is a k-cylinder.
    """
    if d < 1 or n < 1:
        raise ValueError("need d >= 1 and n >= 1")
    target = dilate(order_simplex(d), n)
    cells = []
    for base in itertools.combinations_with_replacement(range(n), d):
        blocks = []
        start = 0
        for i in range(1, d + 1):
            if i == d or base[i] != base[i - 1]:
                blocks.append((start, i))
                start = i
        summands = []
        for s, e in blocks:
            verts = [
                tuple(1 if s <= i < e and i >= e - t else 0 for i in range(d))
                for t in range(e - s + 1)
            ]
            summands.append(convex_hull(verts))
        summands[0] = translate(summands[0], base)
        body = summands[0]
        for S in summands[1:]:
            body = _msum(body, S)
        cells.append(MixedCell(tuple(summands), body))
    return open_dissection(Dissection(target, tuple(cells)), seed=seed)


def boxcell_census(D: Dissection) -> dict[int, int]:
    """Cell counts grouped by cylinder rank."""
    out: dict[int, int] = {}
    for c in D.cells:
        out[c.cylinder_rank] = out.get(c.cylinder_rank, 0) + 1
    return dict(sorted(out.items()))


# -- staircases -------------------------------------------------------------------


def staircase_dissection(S1: Polytope, S2: Polytope) -> Dissection:
    """Dissect the exact sum of two simplices into binom(p+q, p)
    simplices, one per monotone path through the vertex grid."""
    S1, S2 = _require_polytope(S1), _require_polytope(S2)
    for S in (S1, S2):
        if len(S.vertices) != S.dim + 1:
            raise GeometryError("staircases are built from simplices")
    total = _msum(S1, S2)
    p, q = S1.dim, S2.dim
    if total.dim != p + q:
        raise InexactSum("summands do not add dimensions")
    u, v = S1.vertices, S2.vertices
    cells = []
    for rights in itertools.combinations(range(p + q), p):
        rset = set(rights)
        i = j = 0
        path = [vadd(u[0], v[0])]
        for step in range(p + q):
            if step in rset:
                i += 1
            else:
                j += 1
            path.append(vadd(u[i], v[j]))
        verts = tuple(sorted(path))
        simplex = Polytope(total.ambient_dim, verts, _lattice_tag(verts, None))
        if simplex.dim != p + q:
            raise InexactSum("degenerate staircase cell")
        cells.append(MixedCell((simplex,), simplex))
    return Dissection(total, tuple(cells))


def staircase_refine(
    cell: MixedCell, i: int, j: int, q: Sequence
) -> tuple[MixedCell, ...]:
    """Split a cylinder cell by staircasing summands i and j into single
    simplices, then re-open every piece by visibility from q.

    The pieces have one summand fewer, and their half-open counts add up
    to the count of the original cell opened from the same q.
    """
    if i == j:
        raise ValueError("pick two distinct summands")
    i, j = min(i, j), max(i, j)
    sub = staircase_dissection(cell.summands[i], cell.summands[j])
    pieces = []
    for piece in sub.cells:
        summands = (
            cell.summands[:i]
            + (piece.cell,)
            + cell.summands[i + 1 : j]
            + cell.summands[j + 1 :]
        )
        body = summands[0]
        for R in summands[1:]:
            body = _msum(body, R)
        pieces.append(MixedCell(summands, body))
    refined = open_dissection(Dissection(cell.cell, tuple(pieces)), q)
    return refined.cells


# -- Cayley embeddings -------------------------------------------------------------


@dataclass(frozen=True)
class CayleyPolytope:
    factors: tuple[Polytope, ...]
    embedding: Polytope


def _common_ambient(polys: Sequence[Polytope]) -> int:
    d = polys[0].ambient_dim
    for P in polys[1:]:
        if P.ambient_dim != d:
            raise DimensionMismatch("factors live in different ambient spaces")
    return d


def cayley_polytope(polys: Sequence[Polytope]) -> CayleyPolytope:
    """Embed the factors at unit heights in r extra coordinates and take
    the hull; slicing at equal heights 1/r recovers the scaled sum."""
    polys = tuple(_require_polytope(P) for P in polys)
    if not polys:
        raise ValueError("need at least one factor")
    _common_ambient(polys)
    r = len(polys)
    pts = []
    for i, P in enumerate(polys):
        tag = tuple(1 if t == i else 0 for t in range(r))
        for v in P.vertices:
            pts.append(tuple(v) + tag)
    return CayleyPolytope(polys, convex_hull(pts))


def cayley_central_slice(C: CayleyPolytope) -> Polytope:
    """The embedding sliced at all heights equal to 1/r, projected back
    to the original coordinates; equals the sum of the factors scaled by
    1/r."""
    r = len(C.factors)
    d = C.factors[0].ambient_dim
    S: Polytope = C.embedding
    for i in range(r - 1):
        a = tuple(1 if t == d + i else 0 for t in range(d + r))
        S = hyperplane_section(S, a, Fraction(1, r))
        if S is EMPTY:
            raise GeometryError("central slice vanished")
    return convex_hull([v[:d] for v in S.vertices])


# -- placing triangulations ----------------------------------------------------------


def placing_triangulation(
    P: Polytope, order: Sequence[int] | None = None
) -> Dissection:
    """Triangulate by inserting vertices one at a time, coning each new
    vertex over the boundary faces it sees.

    Deterministic in the order, which must list every vertex index once;
    the default is the stored vertex order.
    """
    P = _require_polytope(P)
    nv = len(P.vertices)
    idx = list(range(nv)) if order is None else [int(t) for t in order]
    if sorted(idx) != list(range(nv)):
        raise ValueError("order must list every vertex index exactly once")
    cells = []
    for c in placing_cells(P.local_vertices, idx):
        verts = tuple(sorted(P.vertices[t] for t in c))
        simplex = Polytope(P.ambient_dim, verts, _lattice_tag(verts, None))
        cells.append(MixedCell((simplex,), simplex))
    return Dissection(P, tuple(cells))


# -- fine mixed dissections ------------------------------------------------------------


def _pull_back(
    point_cell: Sequence[tuple], d: int, r: int
) -> MixedCell:
    """Cayley-trick pull-back: group a simplex's vertices by height
    label, sum the per-label hulls of their base parts."""
    groups: dict[int, list] = {i: [] for i in range(r)}
    for p in point_cell:
        i = next(t for t in range(r) if p[d + t] == 1)
        groups[i].append(tuple(p[:d]))
    summands = []
    for i in range(r):
        g = tuple(sorted(groups[i]))
        if not g:
            raise CertificateError("a maximal cell misses a factor")
        summands.append(Polytope(d, g, _lattice_tag(g, None)))
    body = summands[0]
    for R in summands[1:]:
        body = _msum(body, R)
    mc = MixedCell(tuple(summands), body)
    if not mc.is_exact:
        raise InexactSum("pulled-back cell is not an exact sum")
    return mc


def fine_mixed_dissection(
    polys: Sequence[Polytope],
    *,
    order: Sequence[int] | None = None,
    opener_seed: int = 0,
) -> Dissection:
    """Dissect the Minkowski sum of the factors into exact mixed cells.

    Triangulates the Cayley embedding by placing and pulls every maximal
    simplex back through the equal-height slice; cells are opened from a
    seeded generic interior point of the sum.
    """
    polys = tuple(_require_polytope(P) for P in polys)
    if not polys:
        raise ValueError("need at least one factor")
    d = _common_ambient(polys)
    r = len(polys)
    emb = cayley_polytope(polys).embedding
    tri = placing_triangulation(emb, order)
    cells = tuple(
        _pull_back(c.cell.vertices, d, r) for c in tri.cells
    )
    target = minkowski_sum_all(polys)
    D = Dissection(target, cells, factors=polys)
    return open_dissection(D, seed=opener_seed)


# -- mixed differences ----------------------------------------------------------------


@dataclass(frozen=True)
class DifferenceCertificate:
    """A fine mixed dissection of the outer sum whose leading cells
    dissect the inner sum; the rest tile the difference half-openly."""

    inner_factors: tuple[Polytope, ...]
    outer_factors: tuple[Polytope, ...]
    dissection: Dissection
    inner_cells: tuple[int, ...]
    difference_cells: tuple[int, ...]

    @property
    def inner_dissection(self) -> Dissection:
        cells = tuple(self.dissection.cells[k] for k in self.inner_cells)
        return Dissection(
            minkowski_sum_all(self.inner_factors),
            cells,
            self.dissection.opener,
            self.inner_factors,
        )


def mixed_difference_certificate(
    inner: Sequence[Polytope],
    outer: Sequence[Polytope],
    *,
    opener_seed: int = 0,
) -> DifferenceCertificate:
    """Dissect the outer sum so a sub-family of cells dissects the inner
    sum exactly, with the leftover half-open cells tiling the difference.

    Componentwise containment and equal sum dimensions are required.
    The inner Cayley points are placed first, which confines the inner
    sum's triangulation to a closed sub-complex; the opener is drawn
    from the relative interior of the inner sum.
    """
    inner = tuple(_require_polytope(P) for P in inner)
    outer = tuple(_require_polytope(P) for P in outer)
    if len(inner) != len(outer) or not inner:
        raise ValueError("families must have equal positive length")
    d = _common_ambient(inner + outer)
    for P, Q in zip(inner, outer):
        if not contains(Q, P):
            raise GeometryError("an inner polytope escapes its outer partner")
    target_in = minkowski_sum_all(inner)
    target_out = minkowski_sum_all(outer)
    if target_in.dim != target_out.dim:
        raise DimensionMismatch("inner and outer sums must have equal dimension")
    r = len(outer)

    pts: list[tuple] = []
    seen: set[tuple] = set()
    for family in (inner, outer):
        for i, P in enumerate(family):
            tag = tuple(1 if t == i else 0 for t in range(r))
            for v in P.vertices:
                p = tuple(v) + tag
                if p not in seen:
                    seen.add(p)
                    pts.append(p)
        if family is inner:
            n_inner = len(pts)

    emb = convex_hull(pts)
    origin, basis = emb._chart
    loc = []
    for p in pts:
        t = solve_in_basis(basis, vsub(vec(p), origin))
        if t is None:
            raise GeometryError("a Cayley point escapes the affine hull")
        loc.append(t)
    index_cells = placing_cells(loc, list(range(len(pts))))

    cells = []
    inner_idx = []
    diff_idx = []
    for k, c in enumerate(index_cells):
        cells.append(_pull_back([pts[t] for t in c], d, r))
        if max(c) < n_inner:
            inner_idx.append(k)
        else:
            diff_idx.append(k)

    built = tuple(cells)
    q = generic_opener(
        target_out, built, seed=opener_seed, from_polytope=target_in
    )
    D = open_dissection(Dissection(target_out, built, factors=outer), q)
    return DifferenceCertificate(
        inner, outer, D, tuple(inner_idx), tuple(diff_idx)
    )


def difference_counts(
    cert: DifferenceCertificate, n: Sequence[int]
) -> list[int]:
    """Rescaled half-open counts of the difference cells."""
    n = tuple(int(k) for k in n)
    out = []
    for k in cert.difference_cells:
        H = cert.dissection.cells[k].scaled_half_open(n)
        out.append(0 if H is None else count_half_open(H))
    return out


def certify_difference(
    cert: DifferenceCertificate, samples: Iterable[Sequence[int]]
) -> None:
    """Check that the difference cells count exactly the lattice points
    the outer scaled sum has over the inner one, at every sample."""
    for n in samples:
        total = sum(difference_counts(cert, n))
        expect = count_lattice_points(
            _scaled_sum(cert.outer_factors, n)
        ) - count_lattice_points(_scaled_sum(cert.inner_factors, n))
        if total != expect:
            raise CertificateError(
                f"difference cells count {total} at {tuple(n)}, expected {expect}"
            )
