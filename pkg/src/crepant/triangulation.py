"""Lattice triangulations: validity, face counts, and the basic-triangulation oracle."""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .fvectors import FVector
from .lattice import IntegerVector, determinant, integer_kernel, orthant_ray
from .polytope import (
    DEFAULT_POINT_BUDGET,
    LatticePolytope,
    Membership,
    contains,
    lattice_points,
    pulling_cells,
)

DEFAULT_SEARCH_BUDGET = 10**6

Cell = tuple[int, ...]


class InvalidTriangulationError(ValueError):
    def __init__(self, problems):
        super().__init__("; ".join(p.detail for p in problems))
        self.problems = problems


@dataclass(frozen=True)
class GeometricTriangulation:
    """Cells are sorted tuples of indices into ``points``."""

    points: tuple[IntegerVector, ...]
    cells: tuple[Cell, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(tuple(p) for p in self.points))
        object.__setattr__(self, "cells", tuple(sorted(tuple(sorted(c)) for c in self.cells)))

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def vertex_indices(self) -> set[int]:
        return {i for c in self.cells for i in c}

    def vertices(self) -> set[IntegerVector]:
        return {self.points[i] for i in self.vertex_indices()}

    def cell_volume(self, cell: Cell) -> int:
        return abs(_lifted_det([self.points[i] for i in cell]))


@dataclass(frozen=True)
class BoundaryComplex:
    """Codimension-one faces lying on exactly one cell."""

    points: tuple[IntegerVector, ...]
    facets: tuple[Cell, ...]
    dim: int

    def f_vector(self) -> FVector:
        return _f_vector(self.facets, self.dim - 1)

    def vertex_indices(self) -> set[int]:
        return {i for f in self.facets for i in f}

    def ridge_degrees(self) -> dict[Cell, int]:
        """How many boundary facets contain each codimension-two face."""
        deg: dict[Cell, int] = {}
        for f in self.facets:
            for r in combinations(f, len(f) - 1):
                deg[r] = deg.get(r, 0) + 1
        return deg

    def is_pseudomanifold(self) -> bool:
        return all(v == 2 for v in self.ridge_degrees().values())


@dataclass(frozen=True)
class Problem:
    kind: str
    detail: str
    cells: tuple[Cell, ...] = ()
    point: tuple | None = None


@dataclass
class ValidityReport:
    problems: list[Problem] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.valid


# -- geometry helpers -------------------------------------------------------

def _lifted_det(pts: Sequence[Sequence[int]]) -> int:
    return determinant([(1, *p) for p in pts])


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _separated_by_facet(a: Cell, b: Cell, shared: set[int], points) -> bool:
    # A facet hyperplane of `a` through all shared vertices with every other
    # vertex of `b` strictly beyond it forces a and b to meet in conv(shared).
    others = [points[i] for i in b if i not in shared]
    for v in a:
        if v in shared:
            continue
        facet = [points[i] for i in a if i != v]
        side = _sign(_lifted_det(facet + [points[v]]))
        if all(_sign(_lifted_det(facet + [q])) == -side for q in others):
            return True
    return False


def improper_intersection(a: Cell, b: Cell, points: Sequence[IntegerVector]) -> tuple | None:
    """A common point of two full-dimensional simplices that is not in their shared face.

    Returns ``None`` when the simplices intersect properly, i.e. in the
    face spanned by their common vertices.  The exact test looks for an
    affine dependence on the union of vertices that is nonnegative on the
    vertices only in ``a`` and nonpositive on those only in ``b``.
    """
    shared = set(a) & set(b)
    only_a = [i for i in a if i not in shared]
    only_b = [i for i in b if i not in shared]
    if not only_a and not only_b:
        return None
    d = len(points[0])
    for k in range(d):
        if max(points[i][k] for i in a) < min(points[i][k] for i in b):
            return None
        if max(points[i][k] for i in b) < min(points[i][k] for i in a):
            return None
    if _separated_by_facet(a, b, shared, points) or _separated_by_facet(b, a, shared, points):
        return None
    order = sorted(shared) + only_a + only_b
    lifted = [[1] * len(order)] + [[points[i][k] for i in order] for k in range(d)]
    K = integer_kernel(lifted, ncols=len(order))
    s = len(shared)
    rows = [[v[p] for v in K] for p in range(s, s + len(only_a))]
    rows += [[-v[p] for v in K] for p in range(s + len(only_a), len(order))]
    y = orthant_ray(rows)
    if y is None:
        return None
    coeff = [sum(v[p] * yb for v, yb in zip(K, y)) for p in range(len(order))]
    total = sum(c for c in coeff if c > 0)
    return tuple(
        sum((Fraction(c) * points[order[p]][k] for p, c in enumerate(coeff) if c > 0), Fraction(0)) / total
        for k in range(d)
    )


def _f_vector(cells: Sequence[Cell], complex_dim: int) -> FVector:
    faces: set[Cell] = set()
    for c in cells:
        for size in range(1, len(c) + 1):
            faces.update(combinations(c, size))
    counts = [0] * (complex_dim + 1)
    for f in faces:
        counts[len(f) - 1] += 1
    return FVector.from_faces(complex_dim, counts)


# -- validity ---------------------------------------------------------------

def _structural_problems(T: GeometricTriangulation) -> list[Problem]:
    problems = []
    d = T.dim
    seen = set()
    for c in T.cells:
        if len(c) != d + 1 or len(set(c)) != d + 1:
            problems.append(Problem("cell-size", f"cell {c} does not have {d + 1} distinct vertices", (c,)))
            continue
        if any(not 0 <= i < len(T.points) for i in c):
            raise IndexError(f"cell {c} refers to a missing point")
        if c in seen:
            problems.append(Problem("duplicate", f"cell {c} appears twice", (c,)))
        seen.add(c)
        if _lifted_det([T.points[i] for i in c]) == 0:
            problems.append(Problem("degenerate", f"cell {c} is not full-dimensional", (c,)))
    if problems:
        return problems
    cells = sorted(seen)
    for a, b in combinations(cells, 2):
        x = improper_intersection(a, b, T.points)
        if x is not None:
            problems.append(
                Problem(
                    "overlap",
                    f"cells {a} and {b} meet outside their common face, e.g. at {[str(c) for c in x]}",
                    (a, b),
                    x,
                )
            )
    return problems


def validate_triangulation(T: GeometricTriangulation, P: LatticePolytope) -> ValidityReport:
    if T.dim != P.ambient_dim:
        raise ValueError("triangulation and polytope live in different dimensions")
    problems = _structural_problems(T)
    for i in sorted(T.vertex_indices()):
        if contains(P, T.points[i]) is Membership.OUTSIDE:
            problems.append(Problem("outside", f"vertex {T.points[i]} lies outside the polytope", point=T.points[i]))
    if not any(p.kind in ("cell-size", "degenerate") for p in problems):
        total = sum(T.cell_volume(c) for c in T.cells)
        if total != P.volume:
            problems.append(
                Problem("volume", f"cell volumes sum to {total}, polytope volume is {P.volume}")
            )
    return ValidityReport(problems)


def _require_valid(T: GeometricTriangulation) -> None:
    problems = _structural_problems(T)
    if problems:
        raise InvalidTriangulationError(problems)


def f_vector_of(T: GeometricTriangulation, *, check: bool = True) -> FVector:
    """Face numbers of ``T`` as a ``d``-dimensional simplicial ball."""
    if check:
        _require_valid(T)
    return _f_vector(T.cells, T.dim)


def boundary_of(T: GeometricTriangulation, *, check: bool = True) -> BoundaryComplex:
    if check:
        _require_valid(T)
    count: dict[Cell, int] = {}
    for c in T.cells:
        for f in combinations(c, len(c) - 1):
            count[f] = count.get(f, 0) + 1
    facets = tuple(sorted(f for f, n in count.items() if n == 1))
    return BoundaryComplex(T.points, facets, T.dim)


def is_maximal(T: GeometricTriangulation, P: LatticePolytope) -> bool:
    return T.vertices() == set(P.lattice_point_set.all_points)


def is_basic(T: GeometricTriangulation, P: LatticePolytope) -> bool:
    basic = all(T.cell_volume(c) == 1 for c in T.cells)
    if basic and not is_maximal(T, P):
        # unimodular cells contain no lattice points besides their vertices
        raise AssertionError("basic triangulation that misses lattice points")
    return basic


# -- construction -----------------------------------------------------------

def full_triangulation(P: LatticePolytope, point_budget: int = DEFAULT_POINT_BUDGET) -> GeometricTriangulation:
    """A triangulation using every lattice point of ``P``.

    Starts from the pulling triangulation on the vertices and then inserts
    the remaining lattice points in lexicographic order, each by stellar
    subdivision of the cells containing it.
    """
    pts = lattice_points(P, point_budget).all_points
    index = {p: i for i, p in enumerate(pts)}
    cells = [tuple(index[P.vertices[i]] for i in c) for c in pulling_cells(P)]
    used = {i for c in cells for i in c}
    for q, p in enumerate(pts):
        if q in used:
            continue
        new_cells = []
        for c in cells:
            verts = [pts[i] for i in c]
            base = _sign(_lifted_det(verts))
            signs = [
                _sign(_lifted_det(verts[:j] + [p] + verts[j + 1:])) * base for j in range(len(c))
            ]
            if min(signs) < 0:
                new_cells.append(c)
                continue
            for j, s in enumerate(signs):
                if s > 0:
                    new_cells.append(c[:j] + (q,) + c[j + 1:])
        cells = new_cells
        used.add(q)
    return GeometricTriangulation(pts, tuple(cells))


class SearchStatus(enum.Enum):
    WITNESS = "witness"
    EXHAUSTED_NONE = "exhausted-none"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class SearchResult:
    status: SearchStatus
    witness: GeometricTriangulation | None
    nodes: int
    budget: int
    candidate_cells: int


class _OutOfBudget(Exception):
    pass


def unimodular_cells(points: Sequence[IntegerVector]) -> list[Cell]:
    d = len(points[0])
    return [c for c in combinations(range(len(points)), d + 1) if abs(_lifted_det([points[i] for i in c])) == 1]


def basic_triangulation_search(
    P: LatticePolytope,
    budget: int = DEFAULT_SEARCH_BUDGET,
    point_budget: int = DEFAULT_POINT_BUDGET,
) -> SearchResult:
    """Exhaustive backtracking for a triangulation of ``P`` into unimodular simplices.

    The first cell is any unimodular cell at the lexicographically smallest
    lattice point.  After that the search repeatedly takes the smallest
    open interior facet (one that has a cell on only one side) and tries,
    in lexicographic order, every unimodular cell across it that meets all
    chosen cells properly.  Every basic triangulation is reachable, so an
    exhausted search proves that none exists.  ``budget`` caps the number
    of cells placed.
    """
    pts = lattice_points(P, point_budget).all_points
    d = P.ambient_dim
    cells = unimodular_cells(pts)
    target = P.volume

    tight = [frozenset(k for k, h in enumerate(P.facets) if h.slack(p) == 0) for p in pts]

    def on_boundary(face: Cell) -> bool:
        common = tight[face[0]]
        for i in face[1:]:
            common = common & tight[i]
        return bool(common)

    by_facet: dict[Cell, list[Cell]] = {}
    for c in cells:
        for f in combinations(c, d):
            by_facet.setdefault(f, []).append(c)
    boundary_facet = {f: on_boundary(f) for f in by_facet}

    compat: dict[tuple[Cell, Cell], bool] = {}

    def proper(a: Cell, b: Cell) -> bool:
        key = (a, b) if a < b else (b, a)
        ok = compat.get(key)
        if ok is None:
            ok = compat[key] = improper_intersection(a, b, pts) is None
        return ok

    chosen: list[Cell] = []
    frontier: dict[Cell, Cell] = {}
    nodes = 0

    def place(c: Cell) -> list[tuple[Cell, Cell | None]]:
        chosen.append(c)
        undo = []
        for f in combinations(c, d):
            if boundary_facet[f]:
                continue
            if f in frontier:
                undo.append((f, frontier.pop(f)))
            else:
                frontier[f] = c
                undo.append((f, None))
        return undo

    def unplace(undo) -> None:
        chosen.pop()
        for f, owner in reversed(undo):
            if owner is None:
                del frontier[f]
            else:
                frontier[f] = owner

    def try_cell(c: Cell) -> bool:
        nonlocal nodes
        if not all(proper(c, other) for other in chosen):
            return False
        nodes += 1
        if nodes > budget:
            raise _OutOfBudget
        undo = place(c)
        if extend():
            return True
        unplace(undo)
        return False

    def extend() -> bool:
        if not frontier:
            return sum(abs(_lifted_det([pts[i] for i in c])) for c in chosen) == target
        f = min(frontier)
        owner = frontier[f]
        return any(try_cell(c) for c in by_facet[f] if c != owner)

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * target + 1000))
    try:
        found = any(try_cell(c) for c in cells if c[0] == 0)
    except _OutOfBudget:
        return SearchResult(SearchStatus.BUDGET_EXCEEDED, None, nodes - 1, budget, len(cells))
    finally:
        sys.setrecursionlimit(limit)
    if not found:
        return SearchResult(SearchStatus.EXHAUSTED_NONE, None, nodes, budget, len(cells))
    T = GeometricTriangulation(pts, tuple(chosen))
    report = validate_triangulation(T, P)
    if not report.valid or not is_basic(T, P):
        raise AssertionError(f"search produced an invalid witness: {report.problems}")
    return SearchResult(SearchStatus.WITNESS, T, nodes, budget, len(cells))
