import pytest

from geometry.fields import random_smooth
from geometry.models import TargetSpace
from lattice.models import BoundaryMode, Grid3


@pytest.fixture
def small_fixed_grid():
    return Grid3(n=10, box_length=4.0, boundary_mode=BoundaryMode.FIXED)


@pytest.fixture
def bump(small_fixed_grid):
    """Topologically trivial S^2 field that relaxes to the vacuum"""
    return random_smooth(
        small_fixed_grid, TargetSpace.S2, seed=12, amplitude=0.3, correlation_length=1.0
    )
