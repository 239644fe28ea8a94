"""Coset-bundle calculus on the lattice: coisotropy pullbacks, isotropy
decomposition, D_phi, stabilizer gauge actions and curvature.

Log-derivatives are tangent-projected: the real residue that a finite
difference of a unit quaternion picks up is dropped, its L^2 norm kept on
the returned form as ``discarded_norm``.
"""

import logging

import numpy as np
from numpy.typing import NDArray

from config import settings
from lattice.forms import (
    commutator,
    d,
    l2_norm,
    projector_apply,
    projector_complement,
    projector_d_wedge,
    sup_norm,
    wedge,
)
from lattice.models import GForm, Grid3, ProjectorField
from liecore.quaternions import conj, imag, inner, quat_mul, stabilizer_element

from .exceptions import NotInStabilizer, TargetMismatch
from .models import AdmissibilityReport, FieldMap, FlatIdentityReport, TargetSpace

logger = logging.getLogger(__name__)


def _differences(values: NDArray[np.float64], grid: Grid3) -> NDArray[np.float64]:
    return np.stack([grid.forward_difference(values, axis) for axis in range(3)])


def _projected(components: NDArray[np.float64], grid: Grid3, label: str) -> GForm:
    form = GForm(1, components, grid).project_algebra()
    logger.debug("%s: discarded real residue %.3e", label, form.discarded_norm)
    return form


def _sphere_coisotropy(phi: NDArray[np.float64], grid: Grid3) -> GForm:
    # (1/2) psi Delta_i psi; its imaginary part is (1/2) psi x psi(x+e_i) / h
    comps = 0.5 * quat_mul(phi[None], _differences(phi, grid))
    return _projected(comps, grid, "S2 coisotropy pullback")


def pullback_coisotropy(psi: FieldMap) -> GForm:
    """psi^* omega_perp as an su(2)-valued 1-form."""
    if psi.target is TargetSpace.S2:
        return _sphere_coisotropy(psi.values, psi.grid)
    comps = quat_mul(_differences(psi.values, psi.grid), conj(psi.values)[None])
    return _projected(comps, psi.grid, "SU2 right log-derivative")


def reference_pullback(projector: ProjectorField) -> GForm:
    """phi^* omega_perp for the reference map behind a projector."""
    return _sphere_coisotropy(projector.phi, projector.grid)


def pure_gauge_potential(u: FieldMap) -> GForm:
    """a = u^-1 du."""
    if u.target is not TargetSpace.SU2:
        raise TargetMismatch("Pure-gauge potentials need an SU(2)-valued map")
    comps = quat_mul(conj(u.values)[None], _differences(u.values, u.grid))
    return _projected(comps, u.grid, "pure gauge potential")


def isotropy_decompose(
    a: GForm, projector: ProjectorField | None
) -> tuple[GForm, GForm]:
    """(a_par, a_perp); with no projector the isotropy is trivial."""
    if projector is None:
        return GForm.zeros(a.grid, a.degree), a
    par = projector_apply(projector, a)
    perp = a.with_components(imag(a.components) - par.components)
    return par, perp


def d_phi(a: GForm, projector: ProjectorField) -> GForm:
    """D_phi a = phi^* omega_perp + a_perp."""
    _, perp = isotropy_decompose(a, projector)
    return reference_pullback(projector) + perp


def adjoint_form(w: FieldMap, alpha: GForm) -> GForm:
    """Ad(w) applied sitewise to every component."""
    comps = quat_mul(quat_mul(w.values[None], alpha.components), conj(w.values)[None])
    return alpha.with_components(comps)


def inverse(w: FieldMap) -> FieldMap:
    return w.with_values(conj(w.values))


def gauge_transform(a: GForm, w: FieldMap) -> GForm:
    """a^w = Ad(w^-1) a + w^-1 dw."""
    return adjoint_form(inverse(w), a) + pure_gauge_potential(w)


def stabilizer_section(theta: NDArray[np.float64], phi: FieldMap) -> FieldMap:
    """w = cos(theta) + sin(theta) phi, a section of the stabilizer bundle."""
    values = stabilizer_element(theta, phi.values)
    return FieldMap.from_values(phi.grid, TargetSpace.SU2, values)


def check_stabilizer(w: FieldMap, projector: ProjectorField) -> None:
    vec = imag(w.values)
    off = vec - inner(vec, projector.phi)[..., None] * projector.phi
    leak = float(np.max(np.linalg.norm(off, axis=-1)))
    if leak > settings.MEMBERSHIP_TOL:
        raise NotInStabilizer(f"Gauge section leaves H_phi by {leak:.3e}")


def gauge_action_isotropic(b: GForm, w: FieldMap, projector: ProjectorField) -> GForm:
    """b^w = Ad(w^-1) b + w^-1 dw - (Ad(w^-1) - I) phi^* omega_perp."""
    check_stabilizer(w, projector)
    omega = reference_pullback(projector)
    w_inv = inverse(w)
    return (
        adjoint_form(w_inv, b)
        + pure_gauge_potential(w)
        - adjoint_form(w_inv, omega)
        + omega
    )


def curvature(b: GForm, projector: ProjectorField) -> GForm:
    """F(b) = db + b^b - [b, omega] - (omega ^ omega)_par, projected to h_phi.

    The part of the collocated result outside h_phi is dropped and its L^2
    norm stored as ``discarded_norm``.
    """
    off_input = l2_norm(projector_complement(projector, b))
    if off_input > settings.MEMBERSHIP_TOL * (1.0 + l2_norm(b)):
        logger.warning("curvature: b is not h_phi-valued (off norm %.3e)", off_input)

    omega = reference_pullback(projector)
    raw = (
        d(b).components
        + wedge(b, b).components
        - commutator(b, omega).components
        - projector.apply(wedge(omega, omega).components)
    )
    par = projector.apply(raw)
    off = float(np.sqrt(np.sum((raw - par) ** 2) * b.grid.cell_volume))
    logger.debug("curvature: off-subalgebra leakage %.3e", off)
    return GForm(2, par, b.grid, off)


def reference_curvature(projector: ProjectorField) -> GForm:
    """Curvature of the reference connection, -(omega ^ omega)_par."""
    return curvature(GForm.zeros(projector.grid, 1), projector)


def flatness_residual(u: FieldMap) -> float:
    """L^2 norm of da + a ^ a for a = u^-1 du."""
    a = pure_gauge_potential(u)
    return l2_norm(d(a) + wedge(a, a))


def flat_curvature_identity(a: GForm, projector: ProjectorField) -> FlatIdentityReport:
    """Residuals of the identities satisfied by a flat potential split along h_phi:

    F(a_par)  = dPhi ^ a_perp - Phi(a_perp ^ a_perp) - Phi(omega ^ omega)
    d a_perp  = -dPhi ^ a_par - dPhi ^ a_perp - [a_par, a_perp]
                - (I - Phi)(a_perp ^ a_perp)
    d(a_perp ^ a_perp) = -[dPhi ^ a_par, a_perp] + dPhi ^ (a_perp ^ a_perp)
    """
    par, perp = isotropy_decompose(a, projector)
    omega = reference_pullback(projector)
    perp_sq = wedge(perp, perp)

    lhs_i = curvature(par, projector)
    rhs_i = (
        projector_d_wedge(projector, perp)
        - projector_apply(projector, perp_sq)
        - projector_apply(projector, wedge(omega, omega))
    )

    lhs_ii = d(perp)
    rhs_ii = (
        -projector_d_wedge(projector, par)
        - projector_d_wedge(projector, perp)
        - commutator(par, perp)
        - projector_complement(projector, perp_sq)
    )

    lhs_iii = d(perp_sq)
    rhs_iii = projector_d_wedge(projector, perp_sq) - commutator(
        projector_d_wedge(projector, par), perp
    )

    return FlatIdentityReport(
        curvature_of_parallel=l2_norm(lhs_i - rhs_i),
        perp_derivative=l2_norm(lhs_ii - rhs_ii),
        perp_square_derivative=l2_norm(lhs_iii - rhs_iii),
        singular_leak=sup_norm(projector_complement(projector, perp_sq)),
    )


def dphi_covariance_residual(a: GForm, w: FieldMap, projector: ProjectorField) -> float:
    """L^2 norm of D_phi(a^w) - Ad(w^-1) D_phi(a), a^w = Ad(w^-1) a + w^-1 dw.

    w must be a section of the stabilizer bundle of phi.
    """
    check_stabilizer(w, projector)
    transformed = d_phi(gauge_transform(a, w), projector)
    return l2_norm(transformed - adjoint_form(inverse(w), d_phi(a, projector)))


def curvature_covariance_residual(
    b: GForm, w: FieldMap, projector: ProjectorField
) -> float:
    """L^2 norm of F(b^w) - Ad(w^-1) F(b)."""
    transformed = curvature(gauge_action_isotropic(b, w, projector), projector)
    return l2_norm(transformed - adjoint_form(inverse(w), curvature(b, projector)))


def projected_relation_residual(b: GForm, projector: ProjectorField) -> float:
    """L^2 norm of (db)_perp - [omega, b] for h_phi-valued b."""
    omega = reference_pullback(projector)
    return l2_norm(projector_complement(projector, d(b)) - commutator(omega, b))


def admissibility_report(a: GForm, projector: ProjectorField) -> AdmissibilityReport:
    par, perp = isotropy_decompose(a, projector)
    grid = a.grid
    gradient_sq = sum(
        np.sum(grid.forward_difference(par.components, axis + 1) ** 2)
        for axis in range(3)
    )
    parallel_w12 = float(
        np.sqrt(l2_norm(par) ** 2 + gradient_sq * grid.cell_volume)
    )
    perp_l2 = l2_norm(perp)
    perp_square_l2 = l2_norm(wedge(perp, perp))
    norms = np.array([perp_l2, perp_square_l2, parallel_w12])
    return AdmissibilityReport(
        perp_l2=perp_l2,
        perp_square_l2=perp_square_l2,
        parallel_w12=parallel_w12,
        admissible=bool(np.all(np.isfinite(norms))),
    )

