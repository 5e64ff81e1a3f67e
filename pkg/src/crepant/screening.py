"""Classify Gorenstein toric singularities by their support polytopes.

The ladder is: basic simplex (smooth), elementary polytope (terminal,
class A), volume above the upper bound (class B without any search),
then the exhaustive oracle decides class C, class B, or gives up.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .cone import (
    Cone,
    FlatteningMap,
    GorensteinCertificate,
    NotGorenstein,
    gorenstein_vector,
    support_polytope,
)
from .fvectors import ball_facet_upper_bound
from .polytope import (
    DEFAULT_POINT_BUDGET,
    BudgetExceededError,
    LatticePolytope,
    is_basic_simplex,
    lattice_points,
)
from .triangulation import (
    DEFAULT_SEARCH_BUDGET,
    GeometricTriangulation,
    SearchStatus,
    basic_triangulation_search,
)


class Verdict(enum.Enum):
    SMOOTH = "smooth"
    TERMINAL_A = "terminal_A"
    CLASS_B_BY_BOUND = "class_B_by_bound"
    CLASS_B_BY_EXHAUSTION = "class_B_by_exhaustion"
    CLASS_C = "class_C"
    INCONCLUSIVE = "inconclusive"
    NOT_GORENSTEIN = "not_gorenstein"


def ub_final_rhs(points_total: int, points_boundary: int, d: int) -> int:
    """Largest normalized volume compatible with a basic triangulation.

    Facets of the cyclic ``(d+1)``-polytope on all lattice points, minus
    the boundary lattice points in excess of ``d``.
    """
    if not points_total >= points_boundary >= d + 1:
        raise ValueError(
            f"need points_total >= points_boundary >= d + 1, got {points_total}, {points_boundary}, d={d}"
        )
    return ball_facet_upper_bound(points_total, points_boundary, d)


@dataclass(frozen=True)
class ScreeningReport:
    vertices: tuple[tuple[int, ...], ...]
    rays: tuple[tuple[int, ...], ...] | None
    gorenstein: GorensteinCertificate | NotGorenstein | None
    d: int
    verdict: Verdict
    volume: int | None = None
    points_total: int | None = None
    points_boundary: int | None = None
    bound_rhs: int | None = None
    bound_holds: bool | None = None
    witness: GeometricTriangulation | None = None
    search_status: SearchStatus | None = None
    search_nodes: int | None = None
    search_budget: int | None = None
    limiting_stage: str | None = None
    flattening: FlatteningMap | None = None
    polytope: LatticePolytope | None = None

    @property
    def budget_limited(self) -> bool:
        return self.verdict is Verdict.INCONCLUSIVE


def screen(
    P: LatticePolytope,
    oracle_budget: int = DEFAULT_SEARCH_BUDGET,
    point_budget: int = DEFAULT_POINT_BUDGET,
    *,
    cone: Cone | None = None,
    certificate: GorensteinCertificate | None = None,
    flattening: FlatteningMap | None = None,
) -> ScreeningReport:
    """Run the decision ladder on ``P``.

    ``cone``, ``certificate`` and ``flattening`` are only echoed into the
    report when ``P`` came from a cone.
    """
    base = dict(
        vertices=P.vertices,
        rays=cone.rays if cone else None,
        gorenstein=certificate,
        d=P.ambient_dim,
        flattening=flattening,
        polytope=P,
    )
    d = P.ambient_dim
    try:
        pts = lattice_points(P, point_budget)
    except BudgetExceededError as exc:
        return ScreeningReport(verdict=Verdict.INCONCLUSIVE, limiting_stage=exc.stage, **base)
    vol = P.volume
    total, bd = len(pts.all_points), len(pts.boundary_points)
    rhs = ub_final_rhs(total, bd, d)
    evidence = dict(
        volume=vol,
        points_total=total,
        points_boundary=bd,
        bound_rhs=rhs,
        bound_holds=vol <= rhs,
        **base,
    )
    if is_basic_simplex(P):
        return ScreeningReport(verdict=Verdict.SMOOTH, **evidence)
    if total == len(P.vertices):
        return ScreeningReport(verdict=Verdict.TERMINAL_A, **evidence)
    if vol > rhs:
        return ScreeningReport(verdict=Verdict.CLASS_B_BY_BOUND, **evidence)
    result = basic_triangulation_search(P, oracle_budget, point_budget)
    search = dict(search_status=result.status, search_nodes=result.nodes, search_budget=result.budget)
    if result.status is SearchStatus.WITNESS:
        return ScreeningReport(verdict=Verdict.CLASS_C, witness=result.witness, **search, **evidence)
    if result.status is SearchStatus.EXHAUSTED_NONE:
        return ScreeningReport(verdict=Verdict.CLASS_B_BY_EXHAUSTION, **search, **evidence)
    return ScreeningReport(
        verdict=Verdict.INCONCLUSIVE, limiting_stage="basic triangulation search", **search, **evidence
    )


def screen_cone(
    c: Cone, oracle_budget: int = DEFAULT_SEARCH_BUDGET, point_budget: int = DEFAULT_POINT_BUDGET
) -> ScreeningReport:
    cert = gorenstein_vector(c)
    if isinstance(cert, NotGorenstein):
        return ScreeningReport(
            vertices=(), rays=c.rays, gorenstein=cert, d=c.ambient_dim - 1, verdict=Verdict.NOT_GORENSTEIN
        )
    P, fmap = support_polytope(c, cert)
    return screen(P, oracle_budget, point_budget, cone=c, certificate=cert, flattening=fmap)
