import pytest

from rrspace.gf import GF
from rrspace.polyring import ProjPoint, TriHomog


@pytest.fixture(scope="session")
def cusp_curve():
    """Cuspidal cubic y^3 + x^3 + x^2 z over GF(2); singular at (0:0:1)."""
    F2 = GF(2)
    return TriHomog.from_ints(F2, 3, {(0, 3, 0): 1, (3, 0, 0): 1, (2, 0, 1): 1})


@pytest.fixture(scope="session")
def conic_curve():
    """Smooth conic x^2 + y z over GF(3)."""
    F3 = GF(3)
    return TriHomog.from_ints(F3, 2, {(2, 0, 0): 1, (0, 1, 1): 1})


@pytest.fixture(scope="session")
def line_curve_101():
    """The line y = 0 over GF(101)."""
    return TriHomog.from_ints(GF(101), 1, {(0, 1, 0): 1})


@pytest.fixture(scope="session")
def line_curve_5():
    return TriHomog.from_ints(GF(5), 1, {(0, 1, 0): 1})


@pytest.fixture(scope="session")
def node_curve():
    """Nodal cubic y^2 z - x^3 - x^2 z over GF(5); node at (0:0:1)."""
    F5 = GF(5)
    return TriHomog.from_ints(F5, 3, {(0, 2, 1): 1, (3, 0, 0): -1, (2, 0, 1): -1})


@pytest.fixture(scope="session")
def fermat_quartic():
    F5 = GF(5)
    return TriHomog.from_ints(F5, 4, {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1})


def origin(field):
    return ProjPoint(field, [0, 0, 1])
