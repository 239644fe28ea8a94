import pytest

from geometry.fields import hedgehog, hopf_projection
from lattice.models import BoundaryMode, Grid3


@pytest.fixture(scope="module")
def fixed_grid32():
    return Grid3(n=32, box_length=8.0, boundary_mode=BoundaryMode.FIXED)


@pytest.fixture(scope="module")
def hedgehog32(fixed_grid32):
    """Degree-one hedgehog on a clamped 32^3 box"""
    return hedgehog(fixed_grid32, k=1)


@pytest.fixture(scope="module")
def hopfion32(hedgehog32):
    """Hopf projection of the degree-one hedgehog"""
    return hopf_projection(hedgehog32)


@pytest.fixture
def periodic32():
    return Grid3(n=32, box_length=8.0)


@pytest.fixture(scope="module")
def fixed_grid48():
    return Grid3(n=48, box_length=8.0, boundary_mode=BoundaryMode.FIXED)
