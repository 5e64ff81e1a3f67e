"""Face numbers of pure simplicial complexes and the bounds built on them.

Index conventions are carried on the values themselves.  A complex of
dimension ``D`` has ``f_{-1}, ..., f_D`` (``D + 2`` counts, ``f_{-1} = 1``)
and ``h_0, ..., h_{D+1}``.  The transforms below use ``n = D + 1`` as the
"rank" of the complex, so a triangle boundary (``D = 1``) has ``n = 2`` and
``h = (1, 1, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence


def binom(n: int, k: int) -> int:
    """Binomial coefficient with ``C(n, k) = 0`` whenever ``n < k`` or ``k < 0``."""
    if k < 0 or n < k:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class FVector:
    """Face counts ``(f_{-1}, f_0, ..., f_D)`` of a ``D``-dimensional complex."""

    complex_dim: int
    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if self.complex_dim < -1:
            raise ValueError("complex dimension must be at least -1")
        if len(counts) != self.complex_dim + 2:
            raise ValueError(
                f"a {self.complex_dim}-complex needs {self.complex_dim + 2} counts, got {len(counts)}"
            )
        if counts[0] != 1:
            raise ValueError("f_{-1} must be 1")
        if any(c < 0 for c in counts):
            raise ValueError("face counts are non-negative")

    @classmethod
    def from_faces(cls, complex_dim: int, faces: Sequence[int]) -> "FVector":
        """Build from ``(f_0, ..., f_D)`` with ``f_{-1} = 1`` prepended."""
        return cls(complex_dim, (1, *faces))

    def __getitem__(self, i: int) -> int:
        """``f_i`` for ``-1 <= i <= D``."""
        if not -1 <= i <= self.complex_dim:
            raise IndexError(i)
        return self.counts[i + 1]

    @property
    def faces(self) -> tuple[int, ...]:
        """``(f_0, ..., f_D)``."""
        return self.counts[1:]


@dataclass(frozen=True)
class HVector:
    """``(h_0, ..., h_{D+1})`` of a ``D``-dimensional complex."""

    complex_dim: int
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(c) for c in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != self.complex_dim + 2:
            raise ValueError(
                f"a {self.complex_dim}-complex has {self.complex_dim + 2} h-entries, got {len(entries)}"
            )

    def __getitem__(self, i: int) -> int:
        """``h_i``; zero outside ``0..D+1`` so boundary terms stay literal."""
        if 0 <= i < len(self.entries):
            return self.entries[i]
        return 0

    def __len__(self) -> int:
        return len(self.entries)


def h_from_f(f: FVector) -> HVector:
    n = f.complex_dim + 1
    h = []
    for j in range(n + 1):
        h.append(sum((-1) ** (j - i) * binom(n - i, n - j) * f.counts[i] for i in range(j + 1)))
    return HVector(f.complex_dim, tuple(h))


def f_from_h(h: HVector) -> FVector:
    n = h.complex_dim + 1
    faces = [sum(binom(n - j, n - 1 - i) * h[j] for j in range(i + 2)) for i in range(n)]
    return FVector.from_faces(h.complex_dim, faces)


# -- cyclic polytopes -------------------------------------------------------

def _check_cyclic(poly_dim: int, k: int) -> None:
    if poly_dim < 1:
        raise ValueError("cyclic polytopes need dimension at least 1")
    if k <= poly_dim:
        raise ValueError(f"a {poly_dim}-polytope needs at least {poly_dim + 1} vertices, got {k}")


def _cyclic_facet_formula(D: int, k: int) -> int:
    return binom(k - (D + 1) // 2, D // 2) + binom(k - 1 - D // 2, (D - 1) // 2)


def _cyclic_h_formula(D: int, k: int) -> HVector:
    # h_0 = 1 even for k = D + 1, where C(-1, 0) would vanish
    h = [1] + [0] * D
    h[D] = 1
    for i in range(1, D // 2 + 1):
        h[i] = h[D - i] = binom(k - D + i - 1, i)
    return HVector(D - 1, tuple(h))


def cyclic_facets(poly_dim: int, k: int) -> int:
    """Number of facets of the cyclic ``poly_dim``-polytope on ``k`` vertices."""
    _check_cyclic(poly_dim, k)
    return _cyclic_facet_formula(poly_dim, k)


def cyclic_h(poly_dim: int, k: int) -> HVector:
    """h-vector of the boundary complex of the cyclic polytope.

    The lower half is ``C(k - D + i - 1, i)``; the upper half mirrors it.
    """
    _check_cyclic(poly_dim, k)
    return _cyclic_h_formula(poly_dim, k)


def cyclic_f(poly_dim: int, k: int) -> FVector:
    return f_from_h(cyclic_h(poly_dim, k))


# -- bounds -----------------------------------------------------------------

def ubt_sphere_check(f: FVector, k: int | None = None) -> list[bool]:
    """Per-index verdicts of ``f_i <= f_i(CycP_d(k))`` for a ``(d-1)``-sphere.

    ``k`` defaults to ``f_0``.
    """
    d = f.complex_dim + 1
    if k is None:
        k = f[0]
    bound = cyclic_f(d, k)
    return [f[i] <= bound[i] for i in range(d)]


def lbt_sphere_check(h: HVector, *, full_range: bool = True) -> bool:
    """Lower bound check ``h_1 <= h_i`` for a simplicial ``(d-1)``-sphere.

    With ``full_range`` the indices run over ``2 <= i <= d``; note that
    ``h_d = 1`` then fails for any sphere with more than ``d + 1`` vertices.  Otherwise only
    ``2 <= i <= floor(d/2)`` is checked, which is the part the ball bounds
    rely on (``h_1 <= h_{floor(d/2)}``).
    """
    d = h.complex_dim + 1
    top = d if full_range else d // 2
    return all(h[1] <= h[i] for i in range(2, top + 1))


def boundary_h_residual(h_ball: HVector, h_bd: HVector) -> list[int]:
    """LHS minus RHS of ``h_{i-1}(bd) - h_i(bd) = h_{d+1-i}(S) - h_i(S)``.

    ``h_ball`` belongs to a ``d``-ball and ``h_bd`` to its boundary sphere;
    the identity holds for ``0 <= i <= d + 1`` with ``h_{-1}(bd) = 0``.
    """
    d = h_ball.complex_dim
    if h_bd.complex_dim != d - 1:
        raise ValueError(
            f"boundary of a {d}-ball must be a {d - 1}-complex, got {h_bd.complex_dim}"
        )
    return [
        (h_bd[i - 1] - h_bd[i]) - (h_ball[d + 1 - i] - h_ball[i])
        for i in range(d + 2)
    ]


def schenzel_h_bound(i: int, b: int, D: int, betti: Sequence[int] = ()) -> int:
    """Upper bound on ``h_i`` of a ``D``-dimensional Buchsbaum complex.

    ``betti[j + 1]`` is the dimension of reduced homology in degree ``j``,
    starting at ``j = -1``; missing entries count as zero.
    """
    if not 0 <= i <= D + 1:
        raise ValueError(f"index {i} outside 0..{D + 1}")
    total = 0
    for j in range(-1, i - 1):
        bj = betti[j + 1] if j + 1 < len(betti) else 0
        total += (-bj if j % 2 else bj)
    if i == 0:
        return 1
    sign = -1 if i % 2 else 1
    return binom(b - D + i - 2, i) - sign * binom(D + 1, i) * total


def _ball_cyclic_f(b: int, D: int) -> FVector:
    # b == D + 1 is the flat cyclic polytope: a doubled D-simplex
    if b < D + 1:
        raise ValueError(f"a {D}-ball needs at least {D + 1} vertices, got {b}")
    return f_from_h(_cyclic_h_formula(D + 1, b))


def ball_f_upper_bound(i: int, b: int, D: int, h_bd: HVector) -> int:
    """Upper bound on ``f_i`` of a simplicial ``D``-ball with ``b`` vertices.

    ``f_i(CycP_{D+1}(b))`` minus the boundary correction
    ``sum_{j=D-i}^{floor(D/2)} C(j, D-i) (h_j(bd) - h_{j-1}(bd))``.
    """
    if not 0 <= i <= D:
        raise ValueError(f"index {i} outside 0..{D}")
    if h_bd.complex_dim != D - 1:
        raise ValueError("boundary h-vector has the wrong dimension")
    cyc = _ball_cyclic_f(b, D)
    correction = sum(
        binom(j, D - i) * (h_bd[j] - h_bd[j - 1]) for j in range(D - i, D // 2 + 1)
    )
    return cyc[i] - correction


def ball_facet_upper_bound(b: int, b_prime: int, D: int) -> int:
    """``f_D(CycP_{D+1}(b)) - (b' - D)`` for a ``D``-ball with ``b'`` boundary vertices."""
    if b_prime < D + 1:
        raise ValueError(f"boundary sphere needs at least {D + 1} vertices, got {b_prime}")
    if b < b_prime:
        raise ValueError("a ball cannot have more boundary vertices than vertices")
    return _cyclic_facet_formula(D + 1, b) - (b_prime - D)
