"""Rational polyhedral cones, the Gorenstein test, and their support polytopes."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .lattice import (
    IntegerVector,
    determinant,
    dot,
    gcd_content,
    integer_kernel,
    inverse,
    orthant_ray,
    primitive_part,
    rank,
    solve_rational,
    unimodular_completion,
    vec,
)
from .polytope import LatticePolytope, RedundantVertexError


class ConeError(ValueError):
    pass


class ConeContainsLineError(ConeError):
    def __init__(self, line: IntegerVector, relation: IntegerVector):
        super().__init__(
            f"cone is not strongly convex: it contains the line spanned by {list(line)}"
        )
        self.line = line
        self.relation = relation


class NotFullDimensionalError(ConeError):
    def __init__(self, ambient_dim: int, span_dim: int):
        super().__init__(
            f"rays span a {span_dim}-dimensional subspace of R^{ambient_dim} "
            f"(defect {ambient_dim - span_dim})"
        )
        self.ambient_dim = ambient_dim
        self.span_dim = span_dim


class RedundantGeneratorError(ConeError):
    """A listed ray is not a minimal generator of the cone."""

    def __init__(self, ray: IntegerVector):
        super().__init__(f"ray {list(ray)} is not a minimal generator of the cone")
        self.ray = ray


@dataclass(frozen=True)
class Cone:
    ambient_dim: int
    rays: tuple[IntegerVector, ...]


def make_cone(raw_rays: Iterable[Sequence[int]]) -> Cone:
    """Validate generators and normalize them to primitive ray vectors.

    Duplicate directions are merged.  Raises :class:`ConeContainsLineError`
    when some nonnegative combination of the rays vanishes, and
    :class:`NotFullDimensionalError` when they do not span.
    """
    rays: list[IntegerVector] = []
    for r in raw_rays:
        p = primitive_part(vec(r))
        if rays and len(p) != len(rays[0]):
            raise ConeError("rays have mixed dimensions")
        if p not in rays:
            rays.append(p)
    if not rays:
        raise ConeError("a cone needs at least one ray")
    n = len(rays[0])
    # columns are rays; a kernel vector with nonnegative entries is a line
    relations = integer_kernel([[r[i] for r in rays] for i in range(n)], ncols=len(rays))
    if relations:
        coeff_rows = [[rel[j] for rel in relations] for j in range(len(rays))]
        y = orthant_ray(coeff_rows)
        if y is not None:
            lam = tuple(sum(row[b] * y[b] for b in range(len(y))) for row in coeff_rows)
            g = gcd_content(lam)
            lam = tuple(x // g for x in lam)
            j = next(i for i, x in enumerate(lam) if x > 0)
            raise ConeContainsLineError(rays[j], lam)
    span = rank(rays)
    if span != n:
        raise NotFullDimensionalError(n, span)
    return Cone(n, tuple(rays))


class GorensteinFailure(enum.Enum):
    NO_SOLUTION = "no solution"
    NON_INTEGRAL = "non-integral"
    NON_PRIMITIVE = "non-primitive"


@dataclass(frozen=True)
class GorensteinCertificate:
    m_sigma: IntegerVector


@dataclass(frozen=True)
class NotGorenstein:
    """Why no primitive dual vector takes the value 1 on every ray."""

    reason: GorensteinFailure
    detail: str = ""

    def __bool__(self) -> bool:
        return False


def gorenstein_vector(c: Cone) -> GorensteinCertificate | NotGorenstein:
    sol = solve_rational(list(c.rays), [1] * len(c.rays))
    if sol is None:
        return NotGorenstein(
            GorensteinFailure.NO_SOLUTION, "the rays do not lie on a common affine hyperplane <m, x> = 1"
        )
    if any(x.denominator != 1 for x in sol):
        return NotGorenstein(
            GorensteinFailure.NON_INTEGRAL, f"the solving vector {[str(x) for x in sol]} is not integral"
        )
    m = tuple(int(x) for x in sol)
    if gcd_content(m) != 1:
        return NotGorenstein(GorensteinFailure.NON_PRIMITIVE, f"{list(m)} is not primitive")
    return GorensteinCertificate(m)


@dataclass(frozen=True)
class FlatteningMap:
    """Affine lattice isomorphism between ``{<m, x> = 1}`` and ``Z^d``.

    A point ``y`` in ``Z^d`` lifts to ``base_point + sum(y_i * basis_i)``.
    """

    m_sigma: IntegerVector
    base_point: IntegerVector
    basis: tuple[IntegerVector, ...]
    _coords: tuple[IntegerVector, ...] = field(repr=False, compare=False)

    @classmethod
    def from_basis(cls, m, base_point, basis) -> "FlatteningMap":
        cols = [tuple(base_point), *map(tuple, basis)]
        n = len(m)
        if len(cols) != n:
            raise ValueError(f"need {n - 1} basis vectors, got {len(cols) - 1}")
        if dot(m, base_point) != 1 or any(dot(m, b) != 0 for b in basis):
            raise ValueError("base point or basis is off the hyperplane")
        mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        if abs(determinant(mat)) != 1:
            raise ValueError("basis does not span the hyperplane lattice")
        inv = tuple(tuple(int(x) for x in row) for row in inverse(mat))
        return cls(tuple(m), cols[0], tuple(cols[1:]), inv)

    def to_plane(self, x: Sequence[int]) -> IntegerVector:
        if dot(self.m_sigma, x) != 1:
            raise ValueError(f"{list(x)} is not on the hyperplane <m, x> = 1")
        return tuple(dot(row, x) for row in self._coords[1:])

    def lift(self, y: Sequence[int]) -> IntegerVector:
        out = list(self.base_point)
        for yi, b in zip(y, self.basis):
            out = [o + yi * bi for o, bi in zip(out, b)]
        return tuple(out)


def standard_flattening(m: Sequence[int]) -> FlatteningMap:
    cols = unimodular_completion(m)
    return FlatteningMap.from_basis(tuple(m), cols[0], cols[1:])


def support_polytope(
    c: Cone, cert: GorensteinCertificate, flattening: FlatteningMap | None = None
) -> tuple[LatticePolytope, FlatteningMap]:
    """The polytope cut from ``c`` by ``<m_sigma, x> = 1``, in lattice coordinates.

    Its vertices are the images of the rays in ray order.  Raises
    :class:`RedundantGeneratorError` if some ray is not a vertex.
    """
    fmap = flattening or standard_flattening(cert.m_sigma)
    if fmap.m_sigma != cert.m_sigma:
        raise ValueError("flattening map belongs to a different hyperplane")
    images = [fmap.to_plane(r) for r in c.rays]
    try:
        P = LatticePolytope(images)
    except RedundantVertexError as exc:
        raise RedundantGeneratorError(c.rays[images.index(exc.point)]) from exc
    return P, fmap


def cone_over_polytope(P: LatticePolytope) -> Cone:
    return make_cone([(1, *v) for v in P.vertices])
