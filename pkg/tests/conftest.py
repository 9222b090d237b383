import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cell24 import census, cover, cusps


@pytest.fixture(scope="session")
def pairings():
    return census.build_pairings(census.parse_code("146928"))


@pytest.fixture(scope="session")
def eps(pairings):
    return census.orientation_character(pairings)


@pytest.fixture(scope="session")
def cycles(pairings):
    return census.ridge_cycles(pairings)


@pytest.fixture(scope="session")
def base_presentation(pairings, cycles):
    return census.presentation(pairings, cycles)


@pytest.fixture(scope="session")
def double_cover(pairings, eps):
    return cover.build_double_cover(pairings, eps, "g")


@pytest.fixture(scope="session")
def cover_cycles(double_cover):
    return cover.cover_ridge_cycles(double_cover)


@pytest.fixture(scope="session")
def cusp_classes(pairings):
    return cusps.vertex_classes(pairings)


@pytest.fixture(scope="session")
def stabilizers(pairings, cusp_classes):
    return [cusps.stabilizer_generators(c, pairings) for c in cusp_classes]
