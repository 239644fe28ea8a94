"""Faddeev-Skyrme functionals for maps and for gauge potentials"""

import logging

import numpy as np
from numpy.typing import NDArray

from geometry.coset import (
    curvature,
    d_phi,
    isotropy_decompose,
    pullback_coisotropy,
    pure_gauge_potential,
)
from geometry.exceptions import TargetMismatch
from geometry.models import FieldMap, TargetSpace
from lattice.forms import integrate, norm_sq_pointwise, wedge
from lattice.models import GForm, Grid3, ProjectorField
from liecore.quaternions import adjoint, cross, quat_mul

from .models import EnergyReport

logger = logging.getLogger(__name__)


def _report(
    grid: Grid3,
    dirichlet_density: NDArray[np.float64],
    skyrme_density: NDArray[np.float64],
    yang_mills_density: NDArray[np.float64] | None = None,
) -> EnergyReport:
    terms = {"dirichlet": dirichlet_density, "skyrme": skyrme_density}
    density = dirichlet_density + skyrme_density
    dirichlet = integrate(dirichlet_density, grid)
    skyrme = integrate(skyrme_density, grid)
    total = dirichlet + skyrme
    yang_mills = None
    if yang_mills_density is not None:
        terms["yang_mills"] = yang_mills_density
        density = density + yang_mills_density
        yang_mills = integrate(yang_mills_density, grid)
        total += yang_mills
    return EnergyReport(
        dirichlet=dirichlet,
        skyrme=skyrme,
        total=total,
        density=density,
        yang_mills=yang_mills,
        term_densities=terms,
    )


def _form_densities(
    form: GForm, skyrme_weight: float
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """(1/2)|D|^2 and (w/4)|D ^ D|^2."""
    return (
        0.5 * norm_sq_pointwise(form),
        0.25 * skyrme_weight * norm_sq_pointwise(wedge(form, form)),
    )


def energy_map(psi: FieldMap, skyrme_weight: float = 1.0) -> EnergyReport:
    """E(psi) = integral of (1/2)|w|^2 + (1/4)|w ^ w|^2, w = psi^* omega_perp."""
    return _report(psi.grid, *_form_densities(pullback_coisotropy(psi), skyrme_weight))


def energy_potential(
    a: GForm,
    projector: ProjectorField,
    skyrme_weight: float = 1.0,
    include_yang_mills: bool = False,
) -> EnergyReport:
    """E_phi(a), optionally augmented by (1/2) integral of |F(a_par)|^2."""
    dirichlet, skyrme = _form_densities(d_phi(a, projector), skyrme_weight)
    yang_mills = None
    if include_yang_mills:
        par, _ = isotropy_decompose(a, projector)
        yang_mills = 0.5 * norm_sq_pointwise(curvature(par, projector))
    return _report(a.grid, dirichlet, skyrme, yang_mills)


def skyrme_group(u: FieldMap, skyrme_weight: float = 1.0) -> EnergyReport:
    """Integral of (1/2)|du|^2 + (1/4)|u^-1 du ^ u^-1 du|^2 with du = u a."""
    if u.target is not TargetSpace.SU2:
        raise TargetMismatch("skyrme_group needs an SU(2)-valued map")
    a = pure_gauge_potential(u)
    du = quat_mul(u.values[None], a.components)
    dirichlet = 0.5 * np.sum(du**2, axis=(0, -1))
    skyrme = 0.25 * skyrme_weight * norm_sq_pointwise(wedge(a, a))
    return _report(u.grid, dirichlet, skyrme)


def tangent_differences(psi: FieldMap) -> NDArray[np.float64]:
    """P_psi Delta_i psi for i = 0, 1, 2, shape (3, n, n, n, 4)."""
    if psi.target is not TargetSpace.S2:
        raise TargetMismatch("Tangent differences are defined for S^2 maps")
    values = psi.values
    diffs = np.stack([psi.grid.forward_difference(values, axis) for axis in range(3)])
    radial = np.sum(diffs * values[None], axis=-1, keepdims=True)
    return diffs - radial * values[None]


def cross_form(tangents: NDArray[np.float64]) -> NDArray[np.float64]:
    """dpsi x dpsi as a 2-form: component p is 2 T_(p+1) x T_(p+2)."""
    return np.stack(
        [2.0 * cross(tangents[(p + 1) % 3], tangents[(p + 2) % 3]) for p in range(3)]
    )


def symplectic_pullback(
    psi: FieldMap, tangents: NDArray[np.float64]
) -> NDArray[np.float64]:
    """psi^* Omega: component p is psi . (T_(p+1) x T_(p+2))."""
    return np.stack(
        [
            np.sum(psi.values * cross(tangents[b], tangents[c]), axis=-1)
            for b, c in ((1, 2), (2, 0), (0, 1))
        ]
    )


def faddeev_s2(psi: FieldMap, skyrme_weight: float = 1.0) -> EnergyReport:
    """Cross-product form: integral of (1/2)|dpsi|^2 + (1/4)|dpsi x dpsi|^2.

    Pointwise the Dirichlet density is 4 times that of energy_map and the
    quartic density 16 times, so faddeev_s2(psi, w / 4) has exactly 4 times
    the density of energy_map(psi, w).
    """
    tangents = tangent_differences(psi)
    dirichlet = 0.5 * np.sum(tangents**2, axis=(0, -1))
    skyrme = 0.25 * skyrme_weight * np.sum(cross_form(tangents) ** 2, axis=(0, -1))
    return _report(psi.grid, dirichlet, skyrme)


def faddeev_symplectic(psi: FieldMap, skyrme_weight: float = 1.0) -> float:
    """Integral of (1/2)|dpsi|^2 + (1/4)|psi^* Omega|^2."""
    tangents = tangent_differences(psi)
    dirichlet = 0.5 * np.sum(tangents**2, axis=(0, -1))
    omega = symplectic_pullback(psi, tangents)
    skyrme = 0.25 * skyrme_weight * np.sum(omega**2, axis=0)
    return integrate(dirichlet + skyrme, psi.grid)


def compose_with_reference(u: FieldMap, projector: ProjectorField) -> FieldMap:
    """psi = u phi, i.e. Ad(u) phi sitewise."""
    values = adjoint(u.values, projector.phi)
    return FieldMap.from_values(u.grid, TargetSpace.S2, values)


def map_potential_residual(
    u: FieldMap, projector: ProjectorField, skyrme_weight: float = 1.0
) -> float:
    """L^1 distance between the densities of E(u phi) and E_phi(u^-1 du)."""
    psi = compose_with_reference(u, projector)
    lhs = energy_map(psi, skyrme_weight).density
    rhs = energy_potential(pure_gauge_potential(u), projector, skyrme_weight).density
    return integrate(np.abs(lhs - rhs), u.grid)
