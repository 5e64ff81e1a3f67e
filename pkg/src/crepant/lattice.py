"""Exact integer linear algebra.

Vectors are plain tuples of Python ints and matrices are sequences of
row tuples, so every quantity is arbitrary precision.  Rationals appear
only as :class:`fractions.Fraction` inside solvers, never in results that
are integral by construction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Sequence

IntegerVector = tuple[int, ...]
IntegerMatrix = Sequence[Sequence[int]]


class DegenerateRayError(ValueError):
    """Raised when a zero vector is used where a ray direction is needed."""


class NonPrimitiveError(ValueError):
    """Raised when a dual vector has content other than 1."""


def vec(v: Sequence[int]) -> IntegerVector:
    """Coerce a sequence to an integer vector, rejecting non-integers."""
    out = []
    for x in v:
        if isinstance(x, bool) or not isinstance(x, int):
            if isinstance(x, Fraction) and x.denominator == 1:
                x = int(x)
            else:
                raise TypeError(f"non-integer entry {x!r}")
        out.append(int(x))
    if not out:
        raise ValueError("vectors must have at least one entry")
    return tuple(out)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> IntegerVector:
    return tuple(a - b for a, b in zip(u, v))


def gcd_content(v: Sequence[int]) -> int:
    """gcd of the absolute values of the entries; 0 for the zero vector."""
    if len(v) == 0:
        raise ValueError("empty vector")
    return math.gcd(*v)


def primitive_part(v: Sequence[int]) -> IntegerVector:
    g = gcd_content(v)
    if g == 0:
        raise DegenerateRayError("the zero vector spans no ray")
    return tuple(x // g for x in v)


def determinant(M: IntegerMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def simplex_determinant(points: Sequence[Sequence[int]]) -> int:
    """Signed determinant of the edge vectors ``p_i - p_0`` of a simplex."""
    p0 = points[0]
    return determinant([sub(p, p0) for p in points[1:]])


def hermite_basis(M: IntegerMatrix) -> list[IntegerVector]:
    """Row-style Hermite normal form of ``M`` with zero rows dropped.

    Pivots are positive, and entries above each pivot are reduced into
    ``[0, pivot)``.  The rows form a basis of the integer row span.
    """
    rows = [list(r) for r in M if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    r = 0
    for j in range(ncols):
        if r == len(rows):
            break
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][j] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(rows[i][j]), i))
            rows[r], rows[piv] = rows[piv], rows[r]
            done = True
            for i in range(r + 1, len(rows)):
                if rows[i][j]:
                    q = rows[i][j] // rows[r][j]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if rows[i][j]:
                        done = False
            if done:
                break
        if rows[r][j] == 0:
            continue
        if rows[r][j] < 0:
            rows[r] = [-x for x in rows[r]]
        p = rows[r][j]
        for i in range(r):
            q = rows[i][j] // p
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return [tuple(row) for row in rows[:r]]


def unimodular_completion(m: Sequence[int]) -> list[IntegerVector]:
    """Columns of a unimodular matrix ``V`` with ``m @ V = e_1``.

    Pivot rule: the column whose entry in ``m`` has the smallest nonzero
    absolute value (lowest index on ties) reduces every other column by
    floor division; this repeats until one nonzero entry remains.  That
    column is sign-normalized and returned first; the remaining columns
    keep their original relative order.
    """
    m = vec(m)
    if gcd_content(m) != 1:
        raise NonPrimitiveError(f"{m} is not primitive; <m, x> = 1 has no integral solution")
    n = len(m)
    cols = [[int(i == j) for i in range(n)] for j in range(n)]
    vals = list(m)
    while True:
        nz = [j for j in range(n) if vals[j] != 0]
        piv = min(nz, key=lambda j: (abs(vals[j]), j))
        if len(nz) == 1:
            break
        for j in nz:
            if j != piv:
                q = vals[j] // vals[piv]
                vals[j] -= q * vals[piv]
                cols[j] = [a - q * b for a, b in zip(cols[j], cols[piv])]
    if vals[piv] < 0:
        cols[piv] = [-a for a in cols[piv]]
    order = [piv] + [j for j in range(n) if j != piv]
    return [tuple(cols[j]) for j in order]


def hyperplane_lattice_basis(m: Sequence[int]) -> tuple[IntegerVector, list[IntegerVector]]:
    """Base point and lattice basis of the affine hyperplane ``<m, x> = 1``."""
    cols = unimodular_completion(m)
    return cols[0], cols[1:]


# -- rational solvers -------------------------------------------------------

def _rref(M: IntegerMatrix) -> tuple[list[list[Fraction]], list[int]]:
    a = [[Fraction(x) for x in row] for row in M]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for j in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][j] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][j]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][j] != 0:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(j)
        r += 1
    return a, pivots


def rank(M: IntegerMatrix) -> int:
    return len(_rref(M)[1])


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine span of ``points`` (-1 for no points)."""
    if not points:
        return -1
    p0 = points[0]
    return rank([sub(p, p0) for p in points[1:]]) if len(points) > 1 else 0


def integer_kernel(M: IntegerMatrix, ncols: int | None = None) -> list[IntegerVector]:
    """Primitive integer vectors spanning the rational right kernel of ``M``."""
    if ncols is None:
        ncols = len(M[0])
    R, pivots = _rref(M) if M else ([], [])
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        den = math.lcm(*(x.denominator for x in v))
        basis.append(primitive_part([int(x * den) for x in v]))
    return basis


def solve_rational(A: IntegerMatrix, b: Sequence[int]) -> tuple[Fraction, ...] | None:
    """Unique rational solution of ``A x = b``, or ``None`` if inconsistent.

    Raises ``ValueError`` if the solution is not unique.
    """
    ncols = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = _rref(aug)
    if ncols in pivots:
        return None
    if len(pivots) < ncols:
        raise ValueError("linear system is underdetermined")
    x = [Fraction(0)] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return tuple(x)


def inverse(M: IntegerMatrix) -> list[list[Fraction]]:
    n = len(M)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    R, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in R]


def orthogonal_vector(rows: Sequence[Sequence[int]]) -> IntegerVector:
    """Generalized cross product of ``k-1`` vectors in ``Z^k`` (cofactor signs)."""
    k = len(rows) + 1
    out = []
    for j in range(k):
        minor = [[r[c] for c in range(k) if c != j] for r in rows]
        out.append((-1) ** j * determinant(minor))
    return tuple(out)


def orthant_ray(M: Sequence[Sequence[int]]) -> IntegerVector | None:
    """A nonzero ``y`` with ``M y >= 0`` componentwise, or ``None``.

    ``M`` must have full column rank, so the cone ``{y : M y >= 0}`` is
    pointed and is nontrivial exactly when it has an extreme ray.  Extreme
    rays are cut out by ``k-1`` independent tight rows; all such row
    subsets are tried in lexicographic order.
    """
    if not M:
        return None
    k = len(M[0])
    if k == 0:
        return None
    for idx in combinations(range(len(M)), k - 1):
        y = orthogonal_vector([M[i] for i in idx])
        if not any(y):
            continue
        vals = [dot(row, y) for row in M]
        if all(v >= 0 for v in vals):
            return y
        if all(v <= 0 for v in vals):
            return tuple(-c for c in y)
    return None
