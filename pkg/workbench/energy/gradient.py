"""Discrete energy written as a site stencil, and its exact gradient.

With m_i = Im(conj(u) u(x+e_i)) for SU(2), the stencil energy is

    h^3 sum_x  (1/2) sum_i |m_i|^2 / h^2 + w sum_p |m_b x m_c|^2 / h^4

and for S^2, writing psi_i = psi(x+e_i) and t_p = psi . (psi_b x psi_c),

    h^3 sum_x  (1/8) sum_i |psi x psi_i|^2 / h^2 + (w/16) sum_p t_p^2 / h^4

with (b, c) = (p+1, p+2) mod 3. On target-valued fields both agree with
energy_map to rounding.
"""

import numpy as np
from numpy.typing import NDArray

from geometry.models import FieldMap, TargetSpace
from lattice.models import BoundaryMode, Grid3
from liecore.models import from_vector
from liecore.quaternions import conj, normalize, quat_mul

from .functionals import energy_map


def _planes():
    return [((p + 1) % 3, (p + 2) % 3) for p in range(3)]


def _dot(a, b):
    return np.sum(a * b, axis=-1, keepdims=True)


def _sphere_terms(v: NDArray[np.float64], grid: Grid3, skyrme_weight: float):
    h = grid.h
    neighbours = [grid.shift(v, axis) for axis in range(3)]
    density = np.zeros(grid.shape)
    grad_here = np.zeros_like(v)
    grad_next = [np.zeros_like(v) for _ in range(3)]

    for axis, vi in enumerate(neighbours):
        c = np.cross(v, vi)
        density += 0.125 * np.sum(c * c, axis=-1) / h**2
        dot = _dot(v, vi)
        grad_here += 0.25 * (v * _dot(vi, vi) - dot * vi) / h**2
        grad_next[axis] += 0.25 * (vi * _dot(v, v) - dot * v) / h**2

    quartic = skyrme_weight / h**4
    for b, c in _planes():
        vb, vc = neighbours[b], neighbours[c]
        t = np.sum(v * np.cross(vb, vc), axis=-1)
        density += quartic * t**2 / 16.0
        scale = (quartic * t / 8.0)[..., None]
        grad_here += scale * np.cross(vb, vc)
        grad_next[b] += scale * np.cross(vc, v)
        grad_next[c] += scale * np.cross(v, vb)

    return density, grad_here, grad_next


def _group_terms(q: NDArray[np.float64], grid: Grid3, skyrme_weight: float):
    h = grid.h
    neighbours = [grid.shift(q, axis) for axis in range(3)]
    q_bar = conj(q)
    m = [quat_mul(q_bar, qi)[..., 1:] for qi in neighbours]
    density = np.sum([np.sum(mi * mi, axis=-1) for mi in m], axis=0) * 0.5 / h**2
    dm = [mi / h**2 for mi in m]

    quartic = skyrme_weight / h**4
    for b, c in _planes():
        mb, mc = m[b], m[c]
        bc = np.cross(mb, mc)
        density += quartic * np.sum(bc * bc, axis=-1)
        dot = _dot(mb, mc)
        dm[b] = dm[b] + 2.0 * quartic * (mb * _dot(mc, mc) - dot * mc)
        dm[c] = dm[c] + 2.0 * quartic * (mc * _dot(mb, mb) - dot * mb)

    grad_here = np.zeros_like(q)
    grad_next = []
    for qi, ci in zip(neighbours, dm):
        c_quat = from_vector(ci)
        grad_here -= quat_mul(qi, c_quat)
        grad_next.append(quat_mul(q, c_quat))
    return density, grad_here, grad_next


def _terms(psi: FieldMap, skyrme_weight: float):
    if psi.target is TargetSpace.S2:
        density, here, nxt = _sphere_terms(psi.values[..., 1:], psi.grid, skyrme_weight)
        return density, from_vector(here), [from_vector(g) for g in nxt]
    return _group_terms(psi.values, psi.grid, skyrme_weight)


def stencil_energy(psi: FieldMap, skyrme_weight: float = 1.0) -> float:
    density, _, _ = _terms(psi, skyrme_weight)
    return float(np.sum(density) * psi.grid.cell_volume)


def project_tangent(values: NDArray[np.float64], vectors: NDArray[np.float64]):
    """Remove the component of each site vector along the unit site value."""
    radial = np.sum(vectors * values, axis=-1, keepdims=True)
    return vectors - radial * values


def gradient(psi: FieldMap, skyrme_weight: float = 1.0) -> NDArray[np.float64]:
    """Partial derivatives of the discrete energy w.r.t. each site value,
    projected to the tangent space of the target. Zero on clamped faces."""
    grid = psi.grid
    _, grad, grad_next = _terms(psi, skyrme_weight)
    grad = grad.copy()
    for axis, g in enumerate(grad_next):
        grad += grid.scatter_back(g, axis)
    grad *= grid.cell_volume
    grad = project_tangent(psi.values, grad)
    if psi.target is TargetSpace.S2:
        grad[..., 0] = 0.0
    if grid.boundary_mode == BoundaryMode.FIXED:
        grad[grid.boundary_mask()] = 0.0
    return grad


def l2_gradient(psi: FieldMap, skyrme_weight: float = 1.0) -> NDArray[np.float64]:
    """Gradient with respect to the h^3-weighted inner product."""
    return gradient(psi, skyrme_weight) / psi.grid.cell_volume


def retract(psi: FieldMap, step: NDArray[np.float64]) -> FieldMap:
    """normalize(psi + step), boundary layer held at its constant.

    S^2 steps lose their real part before normalizing.
    """
    if psi.target is TargetSpace.S2:
        step = np.array(step, dtype=np.float64, copy=True)
        step[..., 0] = 0.0
    values = normalize(psi.values + step)
    if psi.grid.boundary_mode == BoundaryMode.FIXED:
        values = psi.grid.clamp_boundary(values, psi.boundary_value)
    return psi.with_values(values)


def directional_derivative_check(
    psi: FieldMap,
    direction: NDArray[np.float64],
    eps: float = 1e-6,
    skyrme_weight: float = 1.0,
) -> tuple[float, float]:
    """(<gradient, delta>, central-difference derivative) along a tangent delta."""
    delta = project_tangent(psi.values, direction)
    if psi.target is TargetSpace.S2:
        delta[..., 0] = 0.0
    if psi.grid.boundary_mode == BoundaryMode.FIXED:
        delta[psi.grid.boundary_mask()] = 0.0
    analytic = float(np.sum(gradient(psi, skyrme_weight) * delta))
    plus = energy_map(retract(psi, eps * delta), skyrme_weight).total
    minus = energy_map(retract(psi, -eps * delta), skyrme_weight).total
    return analytic, (plus - minus) / (2.0 * eps)
