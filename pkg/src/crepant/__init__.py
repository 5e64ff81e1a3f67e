"""Exact screening of Gorenstein toric singularities for crepant resolutions."""

from .cone import (
    Cone,
    GorensteinCertificate,
    NotGorenstein,
    cone_over_polytope,
    gorenstein_vector,
    make_cone,
    support_polytope,
)
from .polytope import LatticePolytope, lattice_points, normalized_volume
from .screening import ScreeningReport, Verdict, screen, screen_cone, ub_final_rhs
from .triangulation import (
    GeometricTriangulation,
    SearchStatus,
    basic_triangulation_search,
    full_triangulation,
)

__version__ = "0.1.0"
