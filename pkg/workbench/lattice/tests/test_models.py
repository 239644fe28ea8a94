"""Test the grid and form containers"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from lattice.exceptions import DegreeOverflow, GridMismatch, NonFiniteForm
from lattice.models import BoundaryMode, GForm, Grid3, ProjectorField
from liecore.exceptions import InvalidBasePoint
from liecore.models import I, J, ONE


class TestGrid3:
    """Test grid geometry and neighbour access"""

    def test_spacing_and_centre(self, grid16):
        assert grid16.h == pytest.approx(2 * math.pi / 16)
        x = grid16.axis_coords()
        assert x[0] == pytest.approx(-math.pi)
        assert x[8] == pytest.approx(0.0, abs=1e-15)

    def test_rejects_tiny_grid(self):
        with pytest.raises(ValidationError):
            Grid3(n=3, box_length=1.0)

    def test_rejects_nonpositive_box(self):
        with pytest.raises(ValidationError):
            Grid3(n=8, box_length=0.0)

    def test_periodic_shift_wraps(self, grid8):
        values = np.arange(8.0)[:, None, None] * np.ones((8, 8, 8))
        shifted = grid8.shift(values, 0)
        assert shifted[7, 0, 0] == 0.0
        assert shifted[3, 0, 0] == 4.0

    def test_fixed_shift_clamps(self):
        grid = Grid3(n=8, box_length=1.0, boundary_mode=BoundaryMode.FIXED)
        values = np.arange(8.0)[:, None, None] * np.ones((8, 8, 8))
        shifted = grid.shift(values, 0)
        assert shifted[7, 0, 0] == 7.0
        # difference out of the last layer vanishes
        assert np.all(grid.forward_difference(values, 0)[7] == 0.0)

    @pytest.mark.parametrize("mode", list(BoundaryMode))
    def test_scatter_back_is_adjoint_of_shift(self, rng, mode):
        grid = Grid3(n=6, box_length=1.0, boundary_mode=mode)
        a = rng.standard_normal(grid.shape)
        for axis in range(3):
            b = rng.standard_normal(grid.shape)
            if mode == BoundaryMode.FIXED:
                np.moveaxis(b, axis, 0)[-1] = 0.0
            lhs = np.sum(grid.shift(a, axis) * b)
            rhs = np.sum(a * grid.scatter_back(b, axis))
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_boundary_mask_counts_face_layers(self, grid8):
        assert int(grid8.boundary_mask().sum()) == 8**3 - 6**3

    def test_clamp_boundary(self, fixed_grid, rng):
        values = rng.standard_normal(fixed_grid.shape + (4,))
        clamped = fixed_grid.clamp_boundary(values, ONE)
        assert np.all(clamped[fixed_grid.boundary_mask()] == ONE)
        inside = ~fixed_grid.boundary_mask()
        np.testing.assert_array_equal(clamped[inside], values[inside])

    def test_reflect_is_involution(self, grid8, rng):
        values = rng.standard_normal(grid8.shape + (4,))
        np.testing.assert_array_equal(grid8.reflect(grid8.reflect(values)), values)
        assert grid8.reflect(values)[0, 0, 0, 1] == values[7, 7, 7, 1]


class TestGForm:
    """Test form construction and validation"""

    def test_component_counts(self, grid8):
        assert [GForm.zeros(grid8, k).ncomp for k in range(4)] == [1, 3, 3, 1]

    def test_degree_out_of_range(self, grid8):
        with pytest.raises(DegreeOverflow):
            GForm.zeros(grid8, 4)

    def test_wrong_shape(self, grid8):
        with pytest.raises(ValueError):
            GForm(1, np.zeros((1,) + grid8.shape + (4,)), grid8)

    def test_non_finite(self, grid8):
        comps = np.zeros((3,) + grid8.shape + (4,))
        comps[0, 1, 2, 3, 1] = np.nan
        with pytest.raises(NonFiniteForm):
            GForm(1, comps, grid8)

    def test_grid_mismatch(self, grid8, grid16):
        with pytest.raises(GridMismatch):
            GForm.zeros(grid8, 1) + GForm.zeros(grid16, 1)

    def test_degree_mismatch(self, grid8):
        with pytest.raises(ValueError):
            GForm.zeros(grid8, 1) + GForm.zeros(grid8, 2)

    def test_project_algebra_records_real_part(self, grid8):
        form = GForm.constant(grid8, 0, 2.0 * ONE + I)
        projected = form.project_algebra()
        assert np.all(projected.real_part() == 0.0)
        volume = grid8.box_length**3
        assert projected.discarded_norm == pytest.approx(2.0 * math.sqrt(volume))

    def test_scalar_multiplication(self, grid8):
        form = GForm.constant(grid8, 1, I)
        np.testing.assert_array_equal((2.0 * form).components, 2.0 * form.components)


class TestProjectorField:
    """Test the isotropy projector"""

    def test_projects_onto_reference(self, grid8):
        projector = ProjectorField.constant(grid8, I)
        values = np.broadcast_to(ONE + 2.0 * I + 3.0 * J, grid8.shape + (4,))
        np.testing.assert_allclose(projector.apply(values)[0, 0, 0], 2.0 * I)

    def test_rejects_non_unit_reference(self, grid8):
        with pytest.raises(InvalidBasePoint):
            ProjectorField.constant(grid8, 2.0 * I)
