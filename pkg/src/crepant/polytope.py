"""Full-dimensional lattice polytopes given by their vertices."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

from .lattice import (
    IntegerVector,
    affine_rank,
    dot,
    orthogonal_vector,
    primitive_part,
    rank,
    simplex_determinant,
    sub,
    vec,
)

DEFAULT_POINT_BUDGET = 10**7


class DegeneratePolytopeError(ValueError):
    """The points do not span the ambient space affinely."""


class RedundantVertexError(ValueError):
    """A listed point is not a vertex of the convex hull."""

    def __init__(self, point):
        super().__init__(f"{point} is not a vertex of the convex hull")
        self.point = point


class BudgetExceededError(RuntimeError):
    """A search or enumeration needed more work than it was allowed."""

    def __init__(self, stage: str, budget: int, needed: int | None = None):
        msg = f"{stage}: budget of {budget} exceeded"
        if needed is not None:
            msg += f" (needs {needed})"
        super().__init__(msg)
        self.stage = stage
        self.budget = budget
        self.needed = needed


class Membership(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class HalfSpace:
    """The closed half-space ``<normal, x> <= offset``."""

    normal: IntegerVector
    offset: int

    def slack(self, x: Sequence[int]) -> int:
        return self.offset - dot(self.normal, x)


@dataclass(frozen=True)
class LatticePointSet:
    all_points: tuple[IntegerVector, ...]
    boundary_points: tuple[IntegerVector, ...]
    interior_points: tuple[IntegerVector, ...]


def _supporting_halfspaces(points: Sequence[IntegerVector]) -> list[HalfSpace]:
    d = len(points[0])
    found: dict[tuple[IntegerVector, int], None] = {}
    for subset in combinations(points, d):
        p0 = subset[0]
        diffs = [sub(p, p0) for p in subset[1:]]
        n = orthogonal_vector(diffs)
        if not any(n):
            continue
        n = primitive_part(n)
        c = dot(n, p0)
        vals = [dot(n, p) for p in points]
        if all(v <= c for v in vals):
            found.setdefault((n, c))
        elif all(v >= c for v in vals):
            found.setdefault((tuple(-x for x in n), -c))
    return [HalfSpace(n, c) for n, c in found]


def _vertices_among(points: Sequence[IntegerVector], facets: Sequence[HalfSpace]) -> list[IntegerVector]:
    d = len(points[0])
    out = []
    for p in points:
        tight = [h.normal for h in facets if h.slack(p) == 0]
        if len(tight) >= d and rank(tight) == d:
            out.append(p)
    return out


class LatticePolytope:
    """Convex hull of lattice points in ``Z^d`` that spans ``R^d``.

    Every listed point must be a vertex; use :meth:`hull_of` to start from
    an arbitrary point cloud.
    """

    def __init__(self, vertices: Iterable[Sequence[int]]):
        verts = tuple(vec(v) for v in vertices)
        if not verts:
            raise DegeneratePolytopeError("a polytope needs at least one vertex")
        d = len(verts[0])
        if any(len(v) != d for v in verts):
            raise ValueError("vertices have mixed dimensions")
        if len(set(verts)) != len(verts):
            dup = next(v for v in verts if verts.count(v) > 1)
            raise RedundantVertexError(dup)
        if affine_rank(verts) != d:
            raise DegeneratePolytopeError(
                f"affine span has dimension {affine_rank(verts)}, expected {d}"
            )
        facets = _supporting_halfspaces(verts)
        true_vertices = set(_vertices_among(verts, facets))
        for v in verts:
            if v not in true_vertices:
                raise RedundantVertexError(v)
        self.vertices = verts
        self.ambient_dim = d
        self.facets: tuple[HalfSpace, ...] = tuple(facets)

    @classmethod
    def hull_of(cls, points: Iterable[Sequence[int]]) -> "LatticePolytope":
        """The polytope spanned by ``points``, keeping only hull vertices."""
        pts = sorted(set(vec(p) for p in points))
        if not pts:
            raise DegeneratePolytopeError("no points")
        if affine_rank(pts) != len(pts[0]):
            raise DegeneratePolytopeError("points are not full-dimensional")
        return cls(_vertices_among(pts, _supporting_halfspaces(pts)))

    @property
    def dim(self) -> int:
        return self.ambient_dim

    def __repr__(self) -> str:
        return f"LatticePolytope({[list(v) for v in self.vertices]})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return set(self.vertices) == set(other.vertices)

    def __hash__(self) -> int:
        return hash(frozenset(self.vertices))

    def facet_vertex_sets(self) -> list[frozenset[int]]:
        """Indices of the vertices lying on each facet, in facet order."""
        return [
            frozenset(i for i, v in enumerate(self.vertices) if h.slack(v) == 0)
            for h in self.facets
        ]

    @cached_property
    def lattice_point_set(self) -> LatticePointSet:
        return lattice_points(self)

    @cached_property
    def volume(self) -> int:
        return normalized_volume(self)


def facet_halfspaces(P: LatticePolytope) -> list[HalfSpace]:
    return list(P.facets)


def contains(P: LatticePolytope, x: Sequence[int]) -> Membership:
    if len(x) != P.ambient_dim:
        raise ValueError(f"point of dimension {len(x)} in a {P.ambient_dim}-polytope")
    tight = False
    for h in P.facets:
        s = h.slack(x)
        if s < 0:
            return Membership.OUTSIDE
        if s == 0:
            tight = True
    return Membership.BOUNDARY if tight else Membership.INTERIOR


def lattice_points(P: LatticePolytope, budget: int = DEFAULT_POINT_BUDGET) -> LatticePointSet:
    """Classify every lattice point of ``P`` by scanning its bounding box.

    Points come out in lexicographic order.  Raises
    :class:`BudgetExceededError` when the box holds more than ``budget``
    candidates.
    """
    d = P.ambient_dim
    lo = [min(v[i] for v in P.vertices) for i in range(d)]
    hi = [max(v[i] for v in P.vertices) for i in range(d)]
    box = math.prod(h - l + 1 for l, h in zip(lo, hi))
    if box > budget:
        raise BudgetExceededError("lattice point enumeration", budget, box)
    boundary, interior = [], []
    for x in product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        m = contains(P, x)
        if m is Membership.INTERIOR:
            interior.append(x)
        elif m is Membership.BOUNDARY:
            boundary.append(x)
    both = sorted(boundary + interior)
    return LatticePointSet(tuple(both), tuple(boundary), tuple(interior))


def pulling_cells(P: LatticePolytope) -> list[tuple[int, ...]]:
    """Cells of the pulling triangulation of ``P`` on its own vertices.

    Each face is coned from its lowest-indexed vertex over the
    triangulations of its facets that miss that vertex.  Cells are
    tuples of indices into ``P.vertices``.
    """
    verts = P.vertices
    facet_sets = P.facet_vertex_sets()

    def subfaces(face: frozenset[int], k: int) -> list[frozenset[int]]:
        out = []
        for fs in facet_sets:
            g = face & fs
            if g != face and g not in out and len(g) >= k and affine_rank([verts[i] for i in g]) == k - 1:
                out.append(g)
        return out

    def pull(face: frozenset[int], k: int) -> list[tuple[int, ...]]:
        if k == 0:
            return [(min(face),)]
        apex = min(face)
        cells = []
        for g in subfaces(face, k):
            if apex not in g:
                cells.extend((apex,) + c for c in pull(g, k - 1))
        return cells

    return pull(frozenset(range(len(verts))), P.ambient_dim)


def normalized_volume(P: LatticePolytope) -> int:
    """``d!`` times the Euclidean volume; a unimodular simplex has volume 1."""
    verts = P.vertices
    return sum(abs(simplex_determinant([verts[i] for i in c])) for c in pulling_cells(P))


def is_elementary(P: LatticePolytope) -> bool:
    return len(P.lattice_point_set.all_points) == len(P.vertices)


def is_basic_simplex(P: LatticePolytope) -> bool:
    return len(P.vertices) == P.ambient_dim + 1 and P.volume == 1
