"""Test the Coulomb-gauge Poisson solve"""

import numpy as np
import pytest

from lattice.forms import d
from lattice.models import GForm
from topology.exceptions import SpectralSolveFailure
from topology.spectral import coulomb_potential, difference_symbols


def real_one_form(grid, components):
    comps = np.zeros((3,) + grid.shape + (4,))
    comps[..., 1] = components
    return GForm(1, comps, grid)


class TestCoulombPotential:
    """Test dA = B with zero discrete divergence"""

    def test_recovers_exact_flux(self, grid16, rng):
        seed_form = real_one_form(grid16, rng.standard_normal((3,) + grid16.shape))
        flux = d(seed_form).components[..., 1]
        potential = coulomb_potential(flux, grid16, workers=1)
        curl = d(real_one_form(grid16, potential)).components[..., 1]
        np.testing.assert_allclose(curl, flux, atol=1e-10 * np.max(np.abs(flux)))

    def test_backward_divergence_vanishes(self, grid16, rng):
        seed_form = real_one_form(grid16, rng.standard_normal((3,) + grid16.shape))
        flux = d(seed_form).components[..., 1]
        potential = coulomb_potential(flux, grid16)
        divergence = sum(
            (potential[a] - np.roll(potential[a], 1, axis=a)) / grid16.h
            for a in range(3)
        )
        assert np.max(np.abs(divergence)) < 1e-10 * np.max(np.abs(potential)) / grid16.h

    def test_refuses_mean_flux(self, grid16):
        flux = np.zeros((3,) + grid16.shape)
        flux[0] = 1.0
        with pytest.raises(SpectralSolveFailure):
            coulomb_potential(flux, grid16)

    def test_drops_gated_mean(self, grid16, rng):
        seed_form = real_one_form(grid16, rng.standard_normal((3,) + grid16.shape))
        exact = d(seed_form).components[..., 1]
        flux = exact.copy()
        flux[0] += 1.0
        potential = coulomb_potential(flux, grid16, tol=None)
        curl = d(real_one_form(grid16, potential)).components[..., 1]
        np.testing.assert_allclose(curl, exact, atol=1e-10 * np.max(np.abs(exact)))

    def test_symbols_vanish_at_zero_mode(self, grid16):
        for symbol in difference_symbols(grid16):
            assert symbol.ravel()[0] == 0.0
