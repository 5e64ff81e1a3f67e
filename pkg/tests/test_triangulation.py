import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from conftest import VOL20_SIMPLEX, TRIANGLE_2, UNIT_SQUARE
from corpus import polytope_corpus, triangulation_corpus
from crepant.fvectors import (
    ball_f_upper_bound,
    ball_facet_upper_bound,
    boundary_h_residual,
    h_from_f,
)
from crepant.polytope import LatticePolytope, contains, Membership, pulling_cells
from crepant.triangulation import (
    GeometricTriangulation,
    InvalidTriangulationError,
    SearchStatus,
    basic_triangulation_search,
    boundary_of,
    f_vector_of,
    full_triangulation,
    improper_intersection,
    is_basic,
    is_maximal,
    unimodular_cells,
    validate_triangulation,
)


def lp_overlaps(a, b, points):
    """Float LP oracle: can a common point carry weight on a vertex outside the shared face?"""
    d = len(points[0])
    only_a = [i for i in a if i not in b]
    A = np.array([points[i] for i in a], dtype=float).T
    B = np.array([points[i] for i in b], dtype=float).T
    na, nb = len(a), len(b)
    A_eq = np.zeros((d + 2, na + nb))
    A_eq[:d, :na] = A
    A_eq[:d, na:] = -B
    A_eq[d, :na] = 1
    A_eq[d + 1, na:] = 1
    b_eq = np.zeros(d + 2)
    b_eq[d] = b_eq[d + 1] = 1
    c = np.zeros(na + nb)
    for k, i in enumerate(a):
        if i in only_a:
            c[k] = -1
    res = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * (na + nb), method="highs")
    if res.status == 2:
        return False
    return -res.fun > 1e-9


def in_simplex(x, verts):
    """Exact barycentric membership of a rational point."""
    import sympy

    M = sympy.Matrix([[1] * len(verts)] + [[v[k] for v in verts] for k in range(len(x))])
    lam = M.solve(sympy.Matrix([1, *[sympy.Rational(c.numerator, c.denominator) for c in x]]))
    return all(l >= 0 for l in lam)


@pytest.fixture(scope="module")
def corpus():
    return triangulation_corpus()


class TestImproperIntersection:
    def test_crossing_triangles(self):
        pts = [(0, 0), (1, 0), (1, 1), (0, 1)]
        x = improper_intersection((0, 1, 2), (0, 1, 3), pts)
        assert x is not None
        assert in_simplex(x, [pts[i] for i in (0, 1, 2)])
        assert in_simplex(x, [pts[i] for i in (0, 1, 3)])

    def test_diagonal_split_is_proper(self):
        pts = [(0, 0), (1, 0), (1, 1), (0, 1)]
        assert improper_intersection((0, 1, 2), (0, 2, 3), pts) is None

    def test_overlapping_coplanar_faces(self):
        # two tetrahedra glued along overlapping but different triangles in z = 0
        pts = [(0, 0, 0), (2, 0, 0), (0, 2, 0), (1, 1, 0), (0, 0, 1), (0, 0, -1), (2, 2, 0)]
        assert improper_intersection((0, 1, 2, 4), (1, 2, 6, 5), pts) is None
        # apexes on opposite sides, yet the cells meet in the triangle (0,1,3), not in their edge
        x = improper_intersection((0, 1, 2, 4), (0, 1, 3, 5), pts)
        assert x is not None and x[2] == 0
        y = improper_intersection((0, 1, 2, 4), (0, 1, 3, 4), pts)
        assert y is not None

    @pytest.mark.parametrize("d", [2, 3])
    def test_against_lp_oracle(self, d):
        checked = 0
        for P in polytope_corpus(55 + d, d, 15):
            pts = P.lattice_point_set.all_points
            cells = [c for c in itertools.combinations(range(len(pts)), d + 1)
                     if np.linalg.matrix_rank(np.array([(1, *pts[i]) for i in c], dtype=float)) == d + 1]
            pairs = list(itertools.combinations(cells, 2))
            for a, b in random.Random(d).sample(pairs, min(len(pairs), 120)):
                x = improper_intersection(a, b, pts)
                assert (x is not None) == lp_overlaps(a, b, pts)
                if x is not None:
                    assert in_simplex(x, [pts[i] for i in a]) and in_simplex(x, [pts[i] for i in b])
                checked += 1
        assert checked > 800


class TestValidate:
    def test_diagonal_square(self, unit_square):
        T = GeometricTriangulation(UNIT_SQUARE, [(0, 1, 3), (0, 2, 3)])
        assert validate_triangulation(T, unit_square).valid

    def test_overlap_witness(self):
        P = LatticePolytope(UNIT_SQUARE)
        pts = [(0, 0), (1, 0), (1, 1), (0, 1)]
        T = GeometricTriangulation(pts, [(0, 1, 2), (0, 1, 3)])
        report = validate_triangulation(T, P)
        assert not report.valid
        assert any(p.kind == "overlap" and p.point is not None for p in report.problems)

    def test_four_cell_triangle(self, triangle2):
        pts = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)]
        T = GeometricTriangulation(pts, [(0, 1, 3), (1, 2, 4), (1, 3, 4), (3, 4, 5)])
        assert validate_triangulation(T, triangle2).valid
        assert is_basic(T, triangle2)

    def test_gap_detected(self, triangle2):
        pts = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)]
        T = GeometricTriangulation(pts, [(0, 1, 3), (1, 2, 4), (3, 4, 5)])
        assert [p.kind for p in validate_triangulation(T, triangle2).problems] == ["volume"]

    def test_outside_vertex(self, unit_square):
        T = GeometricTriangulation([(0, 0), (2, 0), (0, 2), (1, 1)], [(0, 1, 2)])
        kinds = {p.kind for p in validate_triangulation(T, unit_square).problems}
        assert "outside" in kinds

    def test_degenerate_cell(self, unit_square):
        T = GeometricTriangulation([(0, 0), (1, 1), (1, 0), (0, 1)], [(0, 1, 1)])
        assert not validate_triangulation(T, unit_square).valid

    def test_checked_f_vector_raises(self):
        T = GeometricTriangulation([(0, 0), (1, 0), (1, 1), (0, 1)], [(0, 1, 2), (0, 1, 3)])
        with pytest.raises(InvalidTriangulationError):
            f_vector_of(T)


class TestFaceNumbers:
    def test_single_triangle(self):
        T = GeometricTriangulation([(0, 0), (1, 0), (0, 1)], [(0, 1, 2)])
        assert f_vector_of(T).counts == (1, 3, 3, 1)
        assert boundary_of(T).f_vector().counts == (1, 3, 3)

    def test_split_square(self):
        T = GeometricTriangulation(UNIT_SQUARE, [(0, 1, 3), (0, 2, 3)])
        assert f_vector_of(T).counts == (1, 4, 5, 2)
        bd = boundary_of(T)
        assert bd.f_vector().counts == (1, 4, 4)
        assert bd.is_pseudomanifold()

    def test_four_cell_triangle(self):
        pts = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)]
        T = GeometricTriangulation(pts, [(0, 1, 3), (1, 2, 4), (1, 3, 4), (3, 4, 5)])
        assert f_vector_of(T).counts == (1, 6, 9, 4)
        assert boundary_of(T).f_vector().counts == (1, 6, 6)


class TestPredicates:
    def test_median_split_not_maximal(self, triangle2):
        pts = [(0, 0), (2, 0), (0, 2), (1, 1)]
        T = GeometricTriangulation(pts, [(0, 1, 3), (0, 2, 3)])
        assert validate_triangulation(T, triangle2).valid
        assert not is_maximal(T, triangle2)
        assert not is_basic(T, triangle2)

    def test_maximal_not_basic(self, vol20_simplex):
        T = full_triangulation(vol20_simplex)
        assert is_maximal(T, vol20_simplex)
        assert not is_basic(T, vol20_simplex)


class TestFullTriangulation:
    def test_vol20_simplex(self, vol20_simplex):
        T = full_triangulation(vol20_simplex)
        assert validate_triangulation(T, vol20_simplex).valid
        assert len(T.cells) == 15
        assert f_vector_of(T).counts == (1, 8, 24, 32, 15)
        assert h_from_f(f_vector_of(T)).entries == (1, 4, 6, 4, 0)
        assert h_from_f(boundary_of(T).f_vector()).entries == (1, 1, 1, 1)

    def test_triangle(self, triangle2):
        T = full_triangulation(triangle2)
        assert validate_triangulation(T, triangle2).valid
        assert len(T.cells) == 4

    @pytest.mark.parametrize("d", [2, 3])
    def test_corpus_is_valid_and_maximal(self, d):
        for P in polytope_corpus(77, d, 30):
            T = full_triangulation(P)
            assert validate_triangulation(T, P).valid
            assert is_maximal(T, P)
            for c in T.cells:
                inside = [p for p in P.lattice_point_set.all_points
                          if in_simplex(tuple(Fraction(x) for x in p), [T.points[i] for i in c])]
                assert len(inside) == d + 1


class TestSearch:
    def test_triangle_witness(self, triangle2):
        res = basic_triangulation_search(triangle2)
        assert res.status is SearchStatus.WITNESS
        assert len(res.witness.cells) == 4
        assert validate_triangulation(res.witness, triangle2).valid

    def test_vol20_simplex_exhausts(self, vol20_simplex):
        res = basic_triangulation_search(vol20_simplex)
        assert res.status is SearchStatus.EXHAUSTED_NONE
        assert res.witness is None

    def test_reeve_tetrahedron(self):
        # empty tetrahedron of volume 2: no lattice points to refine with
        P = LatticePolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)])
        assert basic_triangulation_search(P).status is SearchStatus.EXHAUSTED_NONE

    def test_budget(self, triangle2):
        res = basic_triangulation_search(triangle2, budget=2)
        assert res.status is SearchStatus.BUDGET_EXCEEDED
        assert res.nodes <= 2

    def test_deterministic(self, vol20_simplex, triangle2):
        assert basic_triangulation_search(triangle2) == basic_triangulation_search(triangle2)

    def test_against_brute_force(self):
        # independent existence check: cliques of pairwise LP-compatible unimodular cells
        checked = 0
        for P in polytope_corpus(909, 3, 40):
            pts = P.lattice_point_set.all_points
            cells = unimodular_cells(pts)
            if len(cells) > 40 or P.volume > 8:
                continue
            ok = {(a, b): not lp_overlaps(a, b, pts) for a, b in itertools.combinations(cells, 2)}

            def clique(chosen, start):
                if len(chosen) == P.volume:
                    return True
                for k in range(start, len(cells)):
                    c = cells[k]
                    if all(ok[(o, c)] for o in chosen) and clique(chosen + [c], k + 1):
                        return True
                return False

            exists = clique([], 0)
            res = basic_triangulation_search(P)
            assert (res.status is SearchStatus.WITNESS) == exists
            checked += 1
        assert checked >= 15


class TestBallIdentities:
    def test_corpus_size(self, corpus):
        assert len(corpus) >= 200

    def test_boundary_residual(self, corpus):
        for P, T in corpus:
            h = h_from_f(f_vector_of(T))
            h_bd = h_from_f(boundary_of(T).f_vector())
            assert boundary_h_residual(h, h_bd) == [0] * (P.ambient_dim + 2)

    def test_dehn_sommerville_and_pseudomanifold(self, corpus):
        for P, T in corpus:
            bd = boundary_of(T)
            assert bd.is_pseudomanifold()
            h = h_from_f(bd.f_vector()).entries
            assert h == h[::-1]

    def test_ball_bounds(self, corpus):
        for P, T in corpus:
            d = P.ambient_dim
            f = f_vector_of(T)
            bd = boundary_of(T)
            h_bd = h_from_f(bd.f_vector())
            b, bp = len(T.vertex_indices()), len(bd.vertex_indices())
            for i in range(d + 1):
                assert f[i] <= ball_f_upper_bound(i, b, d, h_bd)
            assert f[d] <= ball_facet_upper_bound(b, bp, d)

    def test_boundary_vertices_on_boundary(self, corpus):
        for P, T in corpus:
            for i in boundary_of(T).vertex_indices():
                assert contains(P, T.points[i]) is Membership.BOUNDARY

    def test_volume_identity_for_witnesses(self, corpus):
        for P, T in corpus:
            if all(T.cell_volume(c) == 1 for c in T.cells):
                assert len(T.cells) == P.volume
