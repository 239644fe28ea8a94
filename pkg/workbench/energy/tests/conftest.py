import pytest

from geometry.fields import random_smooth
from geometry.models import TargetSpace
from lattice.models import BoundaryMode, Grid3


@pytest.fixture
def grid12():
    return Grid3(n=12, box_length=8.0)


@pytest.fixture
def fixed_grid12():
    return Grid3(n=12, box_length=8.0, boundary_mode=BoundaryMode.FIXED)


@pytest.fixture
def sphere_field(grid12):
    """Smooth periodic S^2 map around the base point i"""
    return random_smooth(grid12, TargetSpace.S2, seed=3, amplitude=0.8)


@pytest.fixture
def group_field(grid12):
    """Smooth periodic SU(2) map around the identity"""
    return random_smooth(grid12, TargetSpace.SU2, seed=5, amplitude=0.8)
