import math

import pytest

from critlocus.construct import build_construction, cantor_gaps
from critlocus.critical import LocusArc
from critlocus.geometry import Disc, HexagonDomain
from critlocus.lattice import Lattice2

RAIZ3 = math.sqrt(3)


@pytest.fixture
def disco():
    return Disc()


@pytest.fixture
def hexagono():
    return HexagonDomain.regular()


@pytest.fixture
def reticulado_hexagonal():
    return Lattice2((1.0, 0.0), (0.5, RAIZ3 / 2))


@pytest.fixture(scope='session')
def arco_disco():
    """p(t) = (cos tπ/3, sin tπ/3), companheiro inicial em 2π/3."""
    return LocusArc(Disc(), 0.0, math.pi / 3, 2 * math.pi / 3)


@pytest.fixture(scope='session')
def composto_cantor1():
    return build_construction(Disc(), cantor_gaps(1))


@pytest.fixture(scope='session')
def composto_cantor2():
    return build_construction(Disc(), cantor_gaps(2))
