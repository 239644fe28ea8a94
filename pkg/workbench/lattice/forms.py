"""Exterior calculus for quaternion-valued forms on a Grid3.

d uses forward differences; products are collocated (same-site quaternion
products), so purely algebraic identities hold to rounding while identities
mixing d and wedge hold up to first-order discretization error.
"""

import logging

import numpy as np
from numpy.typing import NDArray

from liecore.quaternions import quat_mul

from .exceptions import DegreeOverflow
from .models import GForm, Grid3, ProjectorField

logger = logging.getLogger(__name__)


def _cyc(p: int) -> tuple[int, int]:
    return (p + 1) % 3, (p + 2) % 3


def d(alpha: GForm) -> GForm:
    """Discrete exterior derivative."""
    grid = alpha.grid
    c = alpha.components
    diff = grid.forward_difference

    if alpha.degree == 0:
        out = np.stack([diff(c[0], axis) for axis in range(3)])
    elif alpha.degree == 1:
        out = np.stack(
            [diff(c[b], a) - diff(c[a], b) for a, b in map(_cyc, range(3))]
        )
    elif alpha.degree == 2:
        out = (diff(c[0], 0) + diff(c[1], 1) + diff(c[2], 2))[None]
    else:
        raise DegreeOverflow("d of a 3-form on a 3-manifold")
    return GForm(alpha.degree + 1, out, grid)


def wedge(alpha: GForm, beta: GForm) -> GForm:
    """Collocated wedge product with quaternion multiplication of values."""
    alpha.check_compatible(beta)
    k, l = alpha.degree, beta.degree
    if k + l > 3:
        raise DegreeOverflow(f"{k}-form ^ {l}-form exceeds degree 3")

    a = alpha.components
    b = beta.components
    if k == 0:
        out = quat_mul(a[0][None], b)
    elif l == 0:
        out = quat_mul(a, b[0][None])
    elif k == 1 and l == 1:
        out = np.stack(
            [
                quat_mul(a[p1], b[p2]) - quat_mul(a[p2], b[p1])
                for p1, p2 in map(_cyc, range(3))
            ]
        )
    elif k == 1 and l == 2:
        out = sum(quat_mul(a[p], b[p]) for p in range(3))[None]
    else:
        out = sum(quat_mul(a[p], b[p]) for p in range(3))[None]
    return GForm(k + l, out, alpha.grid)


def commutator(alpha: GForm, beta: GForm) -> GForm:
    """Graded commutator [a, b] = a ^ b - (-1)^(kl) b ^ a."""
    sign = -1.0 if (alpha.degree * beta.degree) % 2 else 1.0
    return GForm(
        alpha.degree + beta.degree,
        wedge(alpha, beta).components - sign * wedge(beta, alpha).components,
        alpha.grid,
    )


def norm_sq_pointwise(alpha: GForm) -> NDArray[np.float64]:
    """Hilbert-Schmidt pointwise norm: sum of squares over components."""
    return np.sum(alpha.components**2, axis=(0, -1))


def integrate(values: NDArray[np.float64], grid: Grid3) -> float:
    return float(np.sum(values) * grid.cell_volume)


def l2_norm(alpha: GForm) -> float:
    return float(np.sqrt(integrate(norm_sq_pointwise(alpha), alpha.grid)))


def sup_norm(alpha: GForm) -> float:
    return float(np.sqrt(np.max(norm_sq_pointwise(alpha))))


def projector_apply(projector: ProjectorField, alpha: GForm) -> GForm:
    """alpha restricted to h_phi pointwise."""
    return GForm(alpha.degree, projector.apply(alpha.components), alpha.grid)


def projector_complement(projector: ProjectorField, alpha: GForm) -> GForm:
    """(I - Phi) alpha on the imaginary part."""
    par = projector.apply(alpha.components)
    perp = alpha.components - par
    perp[..., 0] = 0.0
    return GForm(alpha.degree, perp, alpha.grid)


def _d_projector(projector: ProjectorField, values: NDArray[np.float64], axis: int):
    """(Delta_axis Phi) applied to a site array."""
    grid = projector.grid
    phi_next = grid.shift(projector.phi, axis)
    next_part = np.sum(values * phi_next, axis=-1)[..., None] * phi_next
    here_part = np.sum(values * projector.phi, axis=-1)[..., None] * projector.phi
    return (next_part - here_part) / grid.h


def projector_d_wedge(projector: ProjectorField, alpha: GForm) -> GForm:
    """dPhi ^ alpha, with dPhi the forward difference of Phi."""
    k = alpha.degree
    if k == 3:
        raise DegreeOverflow("dPhi ^ 3-form exceeds degree 3")
    c = alpha.components

    def dphi(values, axis):
        return _d_projector(projector, values, axis)

    if k == 0:
        out = np.stack([dphi(c[0], axis) for axis in range(3)])
    elif k == 1:
        out = np.stack(
            [dphi(c[b], a) - dphi(c[a], b) for a, b in map(_cyc, range(3))]
        )
    else:
        out = (dphi(c[0], 0) + dphi(c[1], 1) + dphi(c[2], 2))[None]
    return GForm(k + 1, out, alpha.grid)


def product_rule_residual(alpha: GForm, beta: GForm) -> float:
    """L^2 norm of d(a ^ b) - da ^ b - (-1)^k a ^ db."""
    sign = -1.0 if alpha.degree % 2 else 1.0
    lhs = d(wedge(alpha, beta))
    rhs = wedge(d(alpha), beta).components + sign * wedge(alpha, d(beta)).components
    return l2_norm(lhs.with_components(lhs.components - rhs))


def commutator_product_rule_residual(alpha: GForm, beta: GForm) -> float:
    """L^2 norm of d[a, b] - [da, b] - (-1)^k [a, db]."""
    sign = -1.0 if alpha.degree % 2 else 1.0
    lhs = d(commutator(alpha, beta))
    rhs = (
        commutator(d(alpha), beta).components
        + sign * commutator(alpha, d(beta)).components
    )
    return l2_norm(lhs.with_components(lhs.components - rhs))


def wedge_square_residual(alpha: GForm) -> float:
    """L^2 norm of d(a ^ a) - [da, a] for a 1-form a."""
    lhs = d(wedge(alpha, alpha))
    rhs = commutator(d(alpha), alpha).components
    return l2_norm(lhs.with_components(lhs.components - rhs))
