"""Test the exact gradient of the discrete energy"""

import numpy as np
import pytest

from energy.functionals import energy_map
from energy.gradient import (
    directional_derivative_check,
    gradient,
    l2_gradient,
    retract,
)
from geometry.fields import hedgehog, hopf_projection, random_smooth
from geometry.models import FieldMap, TargetSpace


def directional_errors(psi, rng, samples=5, eps=1e-5):
    errors = []
    for _ in range(samples):
        direction = rng.standard_normal(psi.values.shape)
        analytic, numeric = directional_derivative_check(psi, direction, eps=eps)
        errors.append(abs(analytic - numeric) / max(abs(numeric), 1e-8))
    return errors


class TestGradient:
    """Test the gradient against central differences"""

    def test_sphere_directions(self, sphere_field, rng):
        assert max(directional_errors(sphere_field, rng)) < 1e-5

    def test_group_directions(self, group_field, rng):
        assert max(directional_errors(group_field, rng)) < 1e-5

    def test_fixed_boundary_hopfion_directions(self, fixed_grid12, rng):
        psi = hopf_projection(hedgehog(fixed_grid12))
        assert max(directional_errors(psi, rng)) < 1e-5

    def test_fixed_boundary_random_group_directions(self, fixed_grid12, rng):
        u = random_smooth(fixed_grid12, TargetSpace.SU2, seed=11, amplitude=0.5)
        assert max(directional_errors(u, rng)) < 1e-5

    def test_skyrme_weight(self, sphere_field, rng):
        direction = rng.standard_normal(sphere_field.values.shape)
        analytic, numeric = directional_derivative_check(
            sphere_field, direction, eps=1e-5, skyrme_weight=2.5
        )
        assert analytic == pytest.approx(numeric, rel=1e-5)

    def test_gradient_is_tangent(self, sphere_field, group_field):
        for psi in (sphere_field, group_field):
            g = gradient(psi)
            assert np.max(np.abs(np.sum(g * psi.values, axis=-1))) < 1e-12
        assert np.all(gradient(sphere_field)[..., 0] == 0.0)

    def test_zero_on_clamped_faces(self, fixed_grid12):
        u = hedgehog(fixed_grid12)
        g = gradient(u)
        assert np.all(g[fixed_grid12.boundary_mask()] == 0.0)
        assert np.max(np.abs(g)) > 0.0

    @pytest.mark.parametrize("target", list(TargetSpace))
    def test_vanishes_on_constant_map(self, grid12, target):
        assert np.all(gradient(FieldMap.constant(grid12, target)) == 0.0)

    def test_l2_gradient_scaling(self, sphere_field):
        np.testing.assert_allclose(
            l2_gradient(sphere_field) * sphere_field.grid.cell_volume,
            gradient(sphere_field),
            rtol=1e-14,
            atol=1e-15,
        )


class TestRetract:
    """Test the retraction back onto the target"""

    def test_stays_on_sphere(self, sphere_field, rng):
        kick = 0.1 * rng.standard_normal(sphere_field.values.shape)
        moved = retract(sphere_field, kick)
        assert moved.target is TargetSpace.S2
        assert np.all(moved.values[..., 0] == 0.0)
        np.testing.assert_allclose(np.linalg.norm(moved.values, axis=-1), 1.0)

    def test_real_step_leaves_sphere_field(self, sphere_field):
        kick = np.zeros(sphere_field.values.shape)
        kick[..., 0] = 0.5
        moved = retract(sphere_field, kick)
        np.testing.assert_allclose(moved.values, sphere_field.values, atol=1e-15)

    def test_keeps_clamped_faces(self, fixed_grid12, rng):
        u = hedgehog(fixed_grid12)
        moved = retract(u, 0.1 * rng.standard_normal(u.values.shape))
        faces = fixed_grid12.boundary_mask()
        np.testing.assert_array_equal(moved.values[faces], u.values[faces])

    def test_small_descent_step_lowers_energy(self, sphere_field):
        before = energy_map(sphere_field).total
        step = 1e-3 * sphere_field.grid.h**2
        after = energy_map(retract(sphere_field, -step * l2_gradient(sphere_field)))
        assert after.total < before
