"""Test the initial-condition generators"""

import numpy as np
import pytest

from geometry.fields import (
    default_radius,
    hedgehog,
    hopf_projection,
    random_smooth,
    reflected,
    torus_wrap,
)
from geometry.models import FieldMap, TargetSpace
from lattice.models import BoundaryMode, Grid3
from liecore.models import I, J, ONE


class TestHedgehog:
    """Test the hedgehog ansatz"""

    def test_centre_and_outside(self, fixed_grid):
        u = hedgehog(fixed_grid, k=1)
        centre = fixed_grid.n // 2
        np.testing.assert_array_equal(u.values[centre, centre, centre], -ONE)
        np.testing.assert_array_equal(u.values[0, 0, 0], ONE)
        assert u.target is TargetSpace.SU2

    def test_even_charge_returns_to_identity_at_centre(self, fixed_grid):
        u = hedgehog(fixed_grid, k=2)
        centre = fixed_grid.n // 2
        np.testing.assert_allclose(u.values[centre, centre, centre], ONE, atol=1e-15)

    def test_default_radius_fits_inside_box(self, fixed_grid):
        assert default_radius(fixed_grid) == pytest.approx(4.0 - 0.5)

    def test_identity_beyond_radius(self, fixed_grid):
        u = hedgehog(fixed_grid, k=1, radius=2.0)
        r = np.linalg.norm(np.stack(fixed_grid.coords(), axis=-1), axis=-1)
        assert np.all(u.values[r >= 2.0] == ONE)

    def test_off_centre(self, fixed_grid):
        u = hedgehog(fixed_grid, k=1, radius=2.0, center=(1.0, 0.0, 0.0))
        np.testing.assert_array_equal(u.values[10, 8, 8], -ONE)

    def test_rejects_nonpositive_radius(self, fixed_grid):
        with pytest.raises(ValueError):
            hedgehog(fixed_grid, radius=0.0)


class TestHopfProjection:
    """Test psi = u i u^-1"""

    def test_is_sphere_valued(self, fixed_grid):
        psi = hopf_projection(hedgehog(fixed_grid))
        assert psi.target is TargetSpace.S2
        np.testing.assert_allclose(psi.values[0, 0, 0], I)

    def test_needs_group_map(self, grid8):
        with pytest.raises(ValueError):
            hopf_projection(FieldMap.constant(grid8, TargetSpace.S2))


class TestTorusWrap:
    """Test the flux-carrying torus wraps"""

    def test_constant_along_third_axis(self, grid16):
        psi = torus_wrap(grid16, axes=(0, 1))
        layer = np.broadcast_to(psi.values[:, :, :1], psi.values.shape)
        np.testing.assert_array_equal(psi.values, layer)

    def test_south_pole_outside_core(self, grid16):
        psi = torus_wrap(grid16, axes=(1, 2))
        np.testing.assert_allclose(psi.values[:, 0, 0, 3], -1.0)

    def test_needs_periodic_grid(self, fixed_grid):
        with pytest.raises(ValueError):
            torus_wrap(fixed_grid)

    @pytest.mark.parametrize("axes", [(0, 0), (1, 3)])
    def test_invalid_axes(self, grid16, axes):
        with pytest.raises(ValueError):
            torus_wrap(grid16, axes=axes)


class TestRandomSmooth:
    """Test band-limited random fields"""

    def test_reproducible(self, grid8):
        a = random_smooth(grid8, TargetSpace.S2, seed=4)
        b = random_smooth(grid8, TargetSpace.S2, seed=4)
        np.testing.assert_array_equal(a.values, b.values)

    def test_seed_matters(self, grid8):
        a = random_smooth(grid8, TargetSpace.SU2, seed=4)
        b = random_smooth(grid8, TargetSpace.SU2, seed=5)
        assert not np.array_equal(a.values, b.values)

    def test_fixed_faces_hold_base(self, fixed_grid):
        psi = random_smooth(fixed_grid, TargetSpace.S2, seed=1, base=J)
        assert np.all(psi.values[fixed_grid.boundary_mask()] == J)

    def test_zero_amplitude_is_constant(self, grid8):
        u = random_smooth(grid8, TargetSpace.SU2, seed=2, amplitude=0.0)
        assert np.all(u.values == ONE)

    def test_target_membership(self):
        grid = Grid3(n=10, box_length=5.0, boundary_mode=BoundaryMode.PERIODIC)
        psi = random_smooth(grid, TargetSpace.S2, seed=9, amplitude=2.0)
        assert np.all(psi.values[..., 0] == 0.0)


class TestReflected:
    """Test the orientation-reversing reflection of maps"""

    def test_flips_every_axis(self, grid8):
        psi = random_smooth(grid8, TargetSpace.S2, seed=6)
        mirror = reflected(psi)
        np.testing.assert_array_equal(mirror.values[0, 1, 2], psi.values[7, 6, 5])
        np.testing.assert_array_equal(reflected(mirror).values, psi.values)
