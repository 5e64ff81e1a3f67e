"""Seeded random lattice polytopes shared by the property and acceptance suites."""

from __future__ import annotations

import random

from crepant.lattice import affine_rank
from crepant.polytope import LatticePolytope, pulling_cells
from crepant.triangulation import GeometricTriangulation, basic_triangulation_search, full_triangulation


def random_polytope(rng: random.Random, d: int, box: int, max_points: int = 12) -> LatticePolytope | None:
    n = rng.randint(d + 1, d + 4)
    pts = {tuple(rng.randint(0, box) for _ in range(d)) for _ in range(n)}
    pts = sorted(pts)
    if len(pts) < d + 1 or affine_rank(pts) != d:
        return None
    P = LatticePolytope.hull_of(pts)
    if len(P.lattice_point_set.all_points) > max_points:
        return None
    return P


def polytope_corpus(seed: int, d: int, count: int, box: int | None = None, max_points: int = 12):
    """``count`` distinct full-dimensional polytopes with at most ``max_points`` lattice points."""
    rng = random.Random(seed)
    box = box if box is not None else (4 if d == 2 else 2)
    seen: set[LatticePolytope] = set()
    out = []
    while len(out) < count:
        P = random_polytope(rng, d, box, max_points)
        if P is not None and P not in seen:
            seen.add(P)
            out.append(P)
    return out


def triangulation_corpus(per_dim: int = 60):
    """``(P, T)`` pairs: full, pulling and witness triangulations of small polygons and 3-polytopes."""
    out = []
    for d, seed in ((2, 101), (3, 202)):
        for P in polytope_corpus(seed, d, per_dim):
            out.append((P, full_triangulation(P)))
            out.append((P, GeometricTriangulation(P.vertices, pulling_cells(P))))
            res = basic_triangulation_search(P)
            if res.witness is not None:
                out.append((P, res.witness))
    return out
