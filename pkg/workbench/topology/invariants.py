"""Degree, 2-cycle fluxes, Hopf and Chern-Simons numbers of lattice maps.

Forward-difference estimators carry a first-order collocation bias. With
``symmetrize=True`` each invariant is averaged with its backward-difference
twin, obtained as a signed forward evaluation on the reflected grid.
"""

import logging

import numpy as np
from numpy.typing import NDArray

from config import settings
from geometry.coset import isotropy_decompose, pure_gauge_potential
from geometry.fields import reflected
from geometry.models import FieldMap, TargetSpace
from lattice.forms import integrate, wedge
from lattice.models import BoundaryMode, GForm, Grid3, ProjectorField
from liecore.models import I, ONE
from liecore.quaternions import adjoint, conj, normalize, quat_mul, quat_trace

from .exceptions import AntipodeHit, NonzeroPrimaryFlux
from .models import (
    ChernSimonsTerms,
    HopfMethod,
    InvariantReport,
    Rounded,
    SectorLabel,
)
from .spectral import coulomb_potential

logger = logging.getLogger(__name__)


def _symmetrized(estimator, field: FieldMap, sign: float, symmetrize: bool):
    forward = estimator(field)
    if not symmetrize:
        return forward
    backward = sign * estimator(reflected(field))
    return 0.5 * (forward + backward)


def cartan_density(a: GForm) -> NDArray[np.float64]:
    """tr(a ^ a ^ a) per site."""
    return quat_trace(wedge(wedge(a, a), a).components[0])


def _raw_degree(u: FieldMap) -> float:
    return settings.CARTAN_NORMALIZATION * integrate(
        cartan_density(pure_gauge_potential(u)), u.grid
    )


def degree_su2(u: FieldMap, symmetrize: bool = True) -> float:
    """c_G times the integral of tr(a ^ a ^ a), a = u^-1 du."""
    if u.target is not TargetSpace.SU2:
        raise ValueError("degree_su2 needs an SU(2)-valued map")
    return float(_symmetrized(_raw_degree, u, -1.0, symmetrize))


def flux_density(psi: FieldMap) -> NDArray[np.float64]:
    """F_p = psi . (Delta_(p+1) psi x Delta_(p+2) psi), shape (3, n, n, n)."""
    grid = psi.grid
    v = psi.values[..., 1:]
    diffs = [grid.forward_difference(v, axis) for axis in range(3)]
    return np.stack(
        [
            np.sum(v * np.cross(diffs[(p + 1) % 3], diffs[(p + 2) % 3]), axis=-1)
            for p in range(3)
        ]
    )


def _slice_fluxes(psi: FieldMap) -> NDArray[np.float64]:
    """Flux through every coordinate 2-torus, shape (3, n)."""
    flux = flux_density(psi)
    h = psi.grid.h
    out = np.empty((3, psi.grid.n))
    for p in range(3):
        other = tuple(axis for axis in range(3) if axis != p)
        out[p] = flux[p].sum(axis=other) * h**2 / (4.0 * np.pi)
    return out


def primary_fluxes(psi: FieldMap, symmetrize: bool = True) -> NDArray[np.float64]:
    """Slice-averaged 2-torus fluxes; zero on fixed-boundary grids."""
    if psi.target is not TargetSpace.S2:
        raise ValueError("primary_fluxes needs an S^2-valued map")
    if psi.grid.boundary_mode == BoundaryMode.FIXED:
        return np.zeros(3)
    return _symmetrized(lambda f: _slice_fluxes(f).mean(axis=1), psi, 1.0, symmetrize)


def flux_spread(psi: FieldMap) -> NDArray[np.float64]:
    """max - min of the per-slice fluxes, per component."""
    if psi.grid.boundary_mode == BoundaryMode.FIXED:
        return np.zeros(3)
    slices = _slice_fluxes(psi)
    return slices.max(axis=1) - slices.min(axis=1)


def _raw_hopf_poisson(psi: FieldMap, workers: int | None) -> float:
    flux = flux_density(psi)
    # hopf_invariant gates the mean on the symmetrized primary fluxes
    potential = coulomb_potential(flux, psi.grid, workers=workers, tol=None)
    density = np.sum(potential * flux, axis=0)
    return settings.HOPF_NORMALIZATION * integrate(density, psi.grid)


def _antipode_angle(psi: FieldMap) -> NDArray[np.float64]:
    return np.arccos(np.clip(-psi.values[..., 1], -1.0, 1.0))


def _chart_lift(psi: FieldMap) -> NDArray[np.float64]:
    """Site-wise (1 - psi i) / |1 - psi i|, refusing sites at the cap."""
    if psi.target is not TargetSpace.S2:
        raise ValueError("lift_through_hopf needs an S^2-valued map")
    angle = _antipode_angle(psi)
    if np.min(angle) < settings.ANTIPODE_CAP:
        site = np.unravel_index(np.argmin(angle), angle.shape)
        raise AntipodeHit(site, angle[site])
    return normalize(ONE - quat_mul(psi.values, I))


def _check_links(values: NDArray[np.float64], grid: Grid3, psi: FieldMap) -> float:
    """Largest |u(x + e_a) - u(x)|; AntipodeHit above LIFT_JUMP_TOL."""
    jumps = np.stack(
        [
            np.linalg.norm(grid.shift(values, axis) - values, axis=-1)
            for axis in range(3)
        ]
    )
    worst = float(np.max(jumps))
    if worst > settings.LIFT_JUMP_TOL:
        site = np.unravel_index(np.argmax(jumps), jumps.shape)[1:]
        raise AntipodeHit(site, _antipode_angle(psi)[site], jump=worst)
    return worst


def lift_through_hopf(psi: FieldMap) -> FieldMap:
    """u = (1 - psi i) / |1 - psi i|, so that u i u^-1 = psi.

    The site-wise formula jumps across the preimage of -i, so any link
    with a jump above LIFT_JUMP_TOL raises AntipodeHit.
    """
    values = _chart_lift(psi)
    worst = _check_links(values, psi.grid, psi)
    lift = FieldMap.from_values(psi.grid, TargetSpace.SU2, values)
    mismatch = float(np.max(np.abs(adjoint(lift.values, I) - psi.values)))
    logger.debug(
        "lift_through_hopf: round-trip mismatch %.3e, largest link step %.3e",
        mismatch,
        worst,
    )
    return lift


def _wrap(angle: NDArray[np.float64]) -> NDArray[np.float64]:
    return np.mod(angle + np.pi, 2.0 * np.pi) - np.pi


def _link_phases(values: NDArray[np.float64], grid: Grid3) -> NDArray[np.float64]:
    """Phase of the (1, i) part of u(x)^-1 u(x + e_a), shape (3, n, n, n)."""
    phases = []
    for axis in range(3):
        link = quat_mul(conj(values), grid.shift(values, axis))
        phases.append(np.arctan2(link[..., 1], link[..., 0]))
    return np.stack(phases)


def _exclusive_cumsum(values: NDArray[np.float64], axis: int) -> NDArray[np.float64]:
    return np.cumsum(values, axis=axis) - values


def gauge_fixed_lift(psi: FieldMap, workers: int | None = None) -> FieldMap:
    """Continuous lift u e^(i alpha) of psi, on the periodic closure of its grid.

    Right multiplication by e^(i alpha) keeps u i u^-1 = psi. alpha is chosen
    so that every link of the result carries the Coulomb-gauge connection of
    the plaquette holonomies of the site-wise lift, which removes the jumps
    of that lift around the preimage of -i. Needs vanishing primary fluxes;
    a link that still jumps raises AntipodeHit.
    """
    chart = _chart_lift(psi)
    grid = psi.grid.model_copy(update={"boundary_mode": BoundaryMode.PERIODIC})
    n, h = grid.n, grid.h

    theta = _link_phases(chart, grid)
    holonomy = np.stack(
        [
            theta[a] + grid.shift(theta[b], a) - grid.shift(theta[a], b) - theta[b]
            for a, b in ((1, 2), (2, 0), (0, 1))
        ]
    )
    # 2 pi windings of the holonomy mark where the chart jumps
    curvature = _wrap(holonomy) / h**2
    connection = h * coulomb_potential(curvature, grid, workers=workers, tol=None)

    # constant per axis so that closed loops around the torus match mod 2 pi
    loops = [
        np.moveaxis(theta[a] - connection[a], a, 0)[:, 0, 0].sum() for a in range(3)
    ]
    harmonic = _wrap(np.array(loops)) / n
    gauge = connection + harmonic[:, None, None, None] - theta

    alpha = (
        _exclusive_cumsum(gauge[0, :, 0, 0], 0)[:, None, None]
        + _exclusive_cumsum(gauge[1, :, :, 0], 1)[:, :, None]
        + _exclusive_cumsum(gauge[2], 2)
    )
    phase = np.zeros(grid.shape + (4,))
    phase[..., 0] = np.cos(alpha)
    phase[..., 1] = np.sin(alpha)
    values = normalize(quat_mul(chart, phase))

    worst = _check_links(values, grid, psi)
    logger.debug(
        "gauge_fixed_lift: %d plaquette windings, largest link step %.3e",
        int(np.count_nonzero(np.abs(holonomy) > np.pi)),
        worst,
    )
    return FieldMap.from_values(grid, TargetSpace.SU2, values)


def secondary_cs_decomposed(a: GForm, projector: ProjectorField) -> ChernSimonsTerms:
    """c_G tr(a^a^a) split into the four binomial terms along h_phi."""
    par, perp = isotropy_decompose(a, projector)
    grid = a.grid
    c_g = settings.CARTAN_NORMALIZATION

    def term(x: GForm, y: GForm, z: GForm) -> NDArray[np.float64]:
        return c_g * quat_trace(wedge(wedge(x, y), z).components[0])

    densities = [
        term(par, par, par),
        3.0 * term(par, par, perp),
        3.0 * term(par, perp, perp),
        term(perp, perp, perp),
    ]
    exponents = (2.0, 6.0 / 5.0, 3.0 / 2.0, 1.0)
    integrals = tuple(integrate(t, grid) for t in densities)
    l1 = tuple(integrate(np.abs(t), grid) for t in densities)
    lp = tuple(
        integrate(np.abs(t) ** p, grid) ** (1.0 / p)
        for t, p in zip(densities, exponents)
    )
    return ChernSimonsTerms(
        total=float(sum(integrals)),
        integrals=integrals,
        l1_norms=l1,
        lp_norms=lp,
        exponents=exponents,
    )


def hopf_lift_cs(u: FieldMap, symmetrize: bool = True) -> float:
    """Hopf number of psi = u i u^-1 from a known lift u (phi = i)."""

    def raw(field: FieldMap) -> float:
        projector = ProjectorField.constant(field.grid, I)
        return secondary_cs_decomposed(pure_gauge_potential(field), projector).total

    return float(_symmetrized(raw, u, -1.0, symmetrize))


def hopf_invariant(
    psi: FieldMap,
    method: HopfMethod = HopfMethod.POISSON_GAUGE,
    symmetrize: bool = True,
    workers: int | None = None,
) -> float:
    """Secondary invariant of an S^2-valued map with vanishing fluxes."""
    fluxes = primary_fluxes(psi, symmetrize=symmetrize)
    if np.any(np.abs(fluxes) >= settings.FLUX_TOL):
        raise NonzeroPrimaryFlux(fluxes)
    if method is HopfMethod.LIFT_CS:
        return hopf_lift_cs(gauge_fixed_lift(psi, workers), symmetrize=symmetrize)
    return float(
        _symmetrized(lambda f: _raw_hopf_poisson(f, workers), psi, -1.0, symmetrize)
    )


def additivity_check(u: FieldMap, v: FieldMap, symmetrize: bool = True) -> float:
    """|deg(uv) - deg(u) - deg(v)| for the pointwise product uv."""
    product = u.with_values(normalize(quat_mul(u.values, v.values)))
    return abs(
        degree_su2(product, symmetrize)
        - degree_su2(u, symmetrize)
        - degree_su2(v, symmetrize)
    )


def invariant_report(
    field: FieldMap,
    method: HopfMethod = HopfMethod.POISSON_GAUGE,
    workers: int | None = None,
) -> InvariantReport:
    if field.target is TargetSpace.SU2:
        return InvariantReport(degree=Rounded.of(degree_su2(field)))

    fluxes = primary_fluxes(field)
    spread = tuple(float(s) for s in flux_spread(field))
    rounded = tuple(Rounded.of(f) for f in fluxes)
    hopf = None
    if np.all(np.abs(fluxes) < settings.FLUX_TOL):
        hopf = Rounded.of(hopf_invariant(field, method=method, workers=workers))
    else:
        logger.info("Nonzero primary fluxes %s; Hopf number not reported", fluxes)
    return InvariantReport(
        fluxes=rounded, hopf=hopf, method=method, flux_spread=spread
    )


def sector_label(field: FieldMap, workers: int | None = None) -> SectorLabel:
    report = invariant_report(field, workers=workers)
    if report.degree is not None:
        return SectorLabel(fluxes=(0, 0, 0), secondary=report.degree.rounded)
    fluxes = tuple(f.rounded for f in report.fluxes)
    secondary = None
    if report.hopf is not None and not any(fluxes):
        secondary = report.hopf.rounded
    return SectorLabel(fluxes=fluxes, secondary=secondary)


def monitor_values(field: FieldMap, workers: int | None = None) -> NDArray[np.float64]:
    """Raw invariants tracked during a flow."""
    return np.array([v.raw for v in invariant_report(field, workers=workers).values()])
