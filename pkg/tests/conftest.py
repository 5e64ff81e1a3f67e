import pytest

from crepant.polytope import LatticePolytope

VOL20_RAYS = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (-3, -7, -9, 20)]
# the support simplex in the coordinates x -> (x_2, x_3, x_4) of <(1,1,1,1), x> = 1
VOL20_SIMPLEX = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (-7, -9, 20)]

UNIT_SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]
TRIANGLE_2 = [(0, 0), (2, 0), (0, 2)]


@pytest.fixture
def vol20_simplex():
    return LatticePolytope(VOL20_SIMPLEX)


@pytest.fixture
def unit_square():
    return LatticePolytope(UNIT_SQUARE)


@pytest.fixture
def triangle2():
    return LatticePolytope(TRIANGLE_2)
