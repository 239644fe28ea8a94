"""Shared fixtures: random generators, grids and smooth analytic fields"""

import math
from pathlib import Path

import numpy as np
import pytest

from checks.fields import AnalyticField
from lattice.models import BoundaryMode, Grid3


@pytest.fixture
def rng():
    """Seeded generator so every test run sees the same samples"""
    return np.random.default_rng(20240611)


@pytest.fixture
def grid16():
    """Periodic 16^3 grid on a box of side 2 pi"""
    return Grid3(n=16, box_length=2 * math.pi)


@pytest.fixture
def grid8():
    """Small periodic grid for exact algebraic checks"""
    return Grid3(n=8, box_length=2 * math.pi)


@pytest.fixture
def fixed_grid():
    """Fixed-boundary grid standing in for fields constant at infinity"""
    return Grid3(n=16, box_length=8.0, boundary_mode=BoundaryMode.FIXED)


@pytest.fixture
def analytic(rng):
    """Smooth periodic analytic field with random modes and phases"""
    return AnalyticField.draw(rng, amplitude=0.6)


@pytest.fixture
def fixtures_dir():
    """Sample run configurations shipped with the workbench"""
    return Path(__file__).parent / "fixtures"
