"""Identity suites for the lattice calculus.

Algebraic rows compare two collocated expressions and must agree to
rounding on every random sample. Mixed rows involve d and only hold up to
discretization error; they pass when the residual shrinks at first order
as the grid is refined.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np
from numpy.typing import NDArray

from config import settings
from energy.functionals import (
    cross_form,
    energy_map,
    energy_potential,
    map_potential_residual,
    skyrme_group,
    symplectic_pullback,
    tangent_differences,
)
from geometry.coset import (
    curvature_covariance_residual,
    dphi_covariance_residual,
    flat_curvature_identity,
    flatness_residual,
    gauge_transform,
    inverse,
    isotropy_decompose,
    projected_relation_residual,
    pullback_coisotropy,
    pure_gauge_potential,
    stabilizer_section,
)
from lattice.forms import (
    commutator,
    commutator_product_rule_residual,
    d,
    integrate,
    l2_norm,
    norm_sq_pointwise,
    product_rule_residual,
    projector_apply,
    projector_complement,
    projector_d_wedge,
    wedge,
    wedge_square_residual,
)
from lattice.models import GForm, Grid3, ProjectorField
from liecore.quaternions import (
    adjoint,
    bracket,
    imag,
    inner,
    proj_isotropy,
    quat_mul,
)
from topology.invariants import cartan_density, secondary_cs_decomposed

from .fields import AnalyticField
from .models import CheckKind, CheckResult, IdentityCheck

logger = logging.getLogger(__name__)

TEST_BOX = 2.0 * math.pi


def _relative(diff: NDArray[np.float64], scale: NDArray[np.float64] | float) -> float:
    return float(np.max(np.abs(diff)) / max(1.0, float(np.max(np.abs(scale)))))


def _form_relative(lhs: GForm, rhs: GForm) -> float:
    return _relative(lhs.components - rhs.components, lhs.components)


def _projector(field: AnalyticField, grid: Grid3, slot: int = 7) -> ProjectorField:
    return ProjectorField.from_map(field.s2(grid, slot))


# algebraic rows


def _commutator_expansion(field: AnalyticField, grid: Grid3) -> float:
    alpha, beta = field.one_form(grid, 0), field.one_form(grid, 1)
    a, b = alpha.components, beta.components
    expected = np.stack(
        [
            bracket(a[b_], b[c_]) - bracket(a[c_], b[b_])
            for b_, c_ in ((1, 2), (2, 0), (0, 1))
        ]
    )
    return _relative(commutator(alpha, beta).components - expected, expected)


def _graded_antisymmetry(field: AnalyticField, grid: Grid3) -> float:
    alpha, beta = field.one_form(grid, 0), field.one_form(grid, 1)
    gamma = field.form(grid, 2, 2)
    # k l odd: [a, b] = [b, a]; k l even: [a, b] = -[b, a]
    odd = commutator(alpha, beta).components - commutator(beta, alpha).components
    even = commutator(alpha, gamma).components + commutator(gamma, alpha).components
    scale = max(
        np.abs(commutator(alpha, beta).components).max(),
        np.abs(commutator(alpha, gamma).components).max(),
    )
    return _relative(np.concatenate([odd.ravel(), even.ravel()]), scale)


def _wedge_square_half_bracket(field: AnalyticField, grid: Grid3) -> float:
    alpha = field.one_form(grid, 0)
    square = wedge(alpha, alpha)
    return _form_relative(square, 0.5 * commutator(alpha, alpha))


def _cube_bracket_vanishes(field: AnalyticField, grid: Grid3) -> float:
    alpha = field.one_form(grid, 0)
    square = wedge(alpha, alpha)
    return _relative(commutator(square, alpha).components, square.components)


def _double_bracket(field: AnalyticField, grid: Grid3) -> float:
    alpha, beta = field.one_form(grid, 0), field.one_form(grid, 1)
    lhs = commutator(commutator(alpha, beta), beta)
    return _form_relative(lhs, commutator(alpha, wedge(beta, beta)))


def _isotropy_split(field: AnalyticField, grid: Grid3) -> float:
    xi = field.algebra(grid, 0)
    phi = _projector(field, grid).phi
    par, perp = proj_isotropy(xi, phi)
    half_bracket = imag(0.5 * quat_mul(phi, bracket(xi, phi)))
    return max(
        _relative(par + perp - xi, xi),
        _relative(perp - half_bracket, xi),
        _relative(inner(perp, phi), xi),
    )


def _symmetric_bracket(field: AnalyticField, grid: Grid3) -> float:
    phi = _projector(field, grid).phi
    _, p = proj_isotropy(field.algebra(grid, 0), phi)
    _, q = proj_isotropy(field.algebra(grid, 1), phi)
    _, off = proj_isotropy(bracket(p, q), phi)
    return _relative(off, bracket(p, q))


def _perp_square_in_isotropy(field: AnalyticField, grid: Grid3) -> float:
    projector = _projector(field, grid)
    _, perp = isotropy_decompose(field.one_form(grid, 0), projector)
    square = wedge(perp, perp)
    leak = projector_complement(projector, square)
    return _relative(leak.components, square.components)


def _sphere_quartic(field: AnalyticField, grid: Grid3) -> float:
    psi = field.s2(grid, 0)
    omega = pullback_coisotropy(psi)
    lhs = np.sqrt(norm_sq_pointwise(wedge(omega, omega)))
    crossed = cross_form(tangent_differences(psi))
    rhs = 0.25 * np.sqrt(np.sum(crossed**2, axis=(0, -1)))
    return _relative(lhs - rhs, rhs)


def _sphere_symplectic(field: AnalyticField, grid: Grid3) -> float:
    psi = field.s2(grid, 0)
    tangents = tangent_differences(psi)
    lhs = np.sqrt(np.sum(cross_form(tangents) ** 2, axis=(0, -1)))
    rhs = 2.0 * np.sqrt(np.sum(symplectic_pullback(psi, tangents) ** 2, axis=0))
    return _relative(lhs - rhs, lhs)


def _adjoint_isometry(field: AnalyticField, grid: Grid3) -> float:
    u = field.su2(grid, 0).values
    xi, eta = field.algebra(grid, 1), field.algebra(grid, 2)
    norm_gap = np.linalg.norm(adjoint(u, xi), axis=-1) - np.linalg.norm(xi, axis=-1)
    rotated = bracket(adjoint(u, xi), adjoint(u, eta))
    bracket_gap = adjoint(u, bracket(xi, eta)) - rotated
    return max(_relative(norm_gap, xi), _relative(bracket_gap, bracket(xi, eta)))


def _group_energy_matches_map(field: AnalyticField, grid: Grid3) -> float:
    u = field.su2(grid, 0)
    group = skyrme_group(u)
    direct = energy_map(u)
    return _relative(group.density - direct.density, direct.density)


def _chern_simons_split(field: AnalyticField, grid: Grid3) -> float:
    a = field.one_form(grid, 0)
    terms = secondary_cs_decomposed(a, _projector(field, grid))
    direct = settings.CARTAN_NORMALIZATION * integrate(cartan_density(a), grid)
    return abs(terms.total - direct) / max(1.0, sum(terms.l1_norms))


def _gauge_round_trip(field: AnalyticField, grid: Grid3) -> float:
    a = field.one_form(grid, 0)
    w = field.su2(grid, 1)
    back = gauge_transform(gauge_transform(a, w), inverse(w))
    return _form_relative(back, a)


# mixed rows


def _stabilizer_data(field: AnalyticField, grid: Grid3):
    psi = field.s2(grid, 7)
    projector = ProjectorField.from_map(psi)
    w = stabilizer_section(field.theta(grid, 3), psi)
    return projector, w


def _curvature_covariance(field: AnalyticField, grid: Grid3) -> float:
    projector, w = _stabilizer_data(field, grid)
    b = field.h_valued(grid, projector, 4)
    return curvature_covariance_residual(b, w, projector)


def _dphi_covariance(field: AnalyticField, grid: Grid3) -> float:
    projector, w = _stabilizer_data(field, grid)
    return dphi_covariance_residual(field.one_form(grid, 0), w, projector)


def _flat_report(field: AnalyticField, grid: Grid3):
    a = pure_gauge_potential(field.su2(grid, 0))
    return flat_curvature_identity(a, _projector(field, grid))


def _flat_parallel_curvature(field: AnalyticField, grid: Grid3) -> float:
    return _flat_report(field, grid).curvature_of_parallel


def _flat_perp_derivative(field: AnalyticField, grid: Grid3) -> float:
    return _flat_report(field, grid).perp_derivative


def _flat_perp_square_derivative(field: AnalyticField, grid: Grid3) -> float:
    return _flat_report(field, grid).perp_square_derivative


def _projected_relation(field: AnalyticField, grid: Grid3) -> float:
    projector = _projector(field, grid)
    return projected_relation_residual(field.h_valued(grid, projector, 4), projector)


def _map_potential_energy(field: AnalyticField, grid: Grid3) -> float:
    return map_potential_residual(field.su2(grid, 0), _projector(field, grid))


def _flatness(field: AnalyticField, grid: Grid3) -> float:
    return flatness_residual(field.su2(grid, 0))


def _product_rule(field: AnalyticField, grid: Grid3) -> float:
    return product_rule_residual(field.one_form(grid, 0), field.one_form(grid, 1))


def _commutator_product_rule(field: AnalyticField, grid: Grid3) -> float:
    alpha, beta = field.one_form(grid, 0), field.one_form(grid, 1)
    return commutator_product_rule_residual(alpha, beta)


def _wedge_square_rule(field: AnalyticField, grid: Grid3) -> float:
    return wedge_square_residual(field.one_form(grid, 0))


def _projector_leibniz(field: AnalyticField, grid: Grid3) -> float:
    projector = _projector(field, grid)
    alpha = field.one_form(grid, 0)
    lhs = d(projector_apply(projector, alpha))
    rhs = projector_d_wedge(projector, alpha) + projector_apply(projector, d(alpha))
    return l2_norm(lhs - rhs)


def _gauge_invariance(field: AnalyticField, grid: Grid3) -> float:
    projector, w = _stabilizer_data(field, grid)
    a = field.one_form(grid, 0)
    before = energy_potential(a, projector).total
    after = energy_potential(gauge_transform(a, w), projector).total
    return abs(after - before) / before


def _check(kind: CheckKind, name: str, residual, description: str) -> IdentityCheck:
    return IdentityCheck(name, kind, residual, description)


ALGEBRAIC_CHECKS = [
    _check(
        CheckKind.ALGEBRAIC,
        "commutator_expansion",
        _commutator_expansion,
        "graded commutator of 1-forms as a sum of brackets",
    ),
    _check(
        CheckKind.ALGEBRAIC,
        "graded_antisymmetry",
        _graded_antisymmetry,
        "[a, b] = -(-1)^(kl) [b, a]",
    ),
    _check(
        CheckKind.ALGEBRAIC,
        "wedge_square",
        _wedge_square_half_bracket,
        "a ^ a = (1/2)[a, a]",
    ),
    _check(
        CheckKind.ALGEBRAIC, "cube_bracket", _cube_bracket_vanishes, "[a ^ a, a] = 0"
    ),
    _check(
        CheckKind.ALGEBRAIC,
        "double_bracket",
        _double_bracket,
        "[[a, b], b] = [a, b ^ b]",
    ),
    _check(
        CheckKind.ALGEBRAIC,
        "isotropy_split",
        _isotropy_split,
        "xi = <xi, phi> phi + (1/2) phi [xi, phi]",
    ),
    _check(
        CheckKind.ALGEBRAIC,
        "symmetric_bracket",
        _symmetric_bracket,
        "[h_perp, h_perp] in h",
    ),
    _check(
        CheckKind.ALGEBRAIC,
        "perp_square_isotropic",
        _perp_square_in_isotropy,
        "(I - Phi)(a_perp ^ a_perp) = 0",
    ),
    _check(
        CheckKind.ALGEBRAIC,
        "sphere_quartic",
        _sphere_quartic,
        "|psi*w ^ psi*w| = (1/4)|dpsi x dpsi|",
    ),
    _check(
        CheckKind.ALGEBRAIC,
        "sphere_symplectic",
        _sphere_symplectic,
        "|dpsi x dpsi| = 2|psi*Omega|",
    ),
    _check(
        CheckKind.ALGEBRAIC,
        "adjoint_isometry",
        _adjoint_isometry,
        "Ad(u) preserves norms and brackets",
    ),
    _check(
        CheckKind.ALGEBRAIC,
        "group_energy",
        _group_energy_matches_map,
        "Skyrme group density equals the map density",
    ),
    _check(
        CheckKind.ALGEBRAIC,
        "chern_simons_split",
        _chern_simons_split,
        "four-term split of tr(a ^ a ^ a)",
    ),
    _check(
        CheckKind.ALGEBRAIC,
        "gauge_round_trip",
        _gauge_round_trip,
        "(a^w)^(w^-1) = a",
    ),
]

MIXED_CHECKS = [
    _check(
        CheckKind.MIXED,
        "curvature_covariance",
        _curvature_covariance,
        "F(b^w) = Ad(w^-1) F(b)",
    ),
    _check(
        CheckKind.MIXED,
        "dphi_covariance",
        _dphi_covariance,
        "D(a^w) = Ad(w^-1) D(a)",
    ),
    _check(
        CheckKind.MIXED,
        "flat_parallel_curvature",
        _flat_parallel_curvature,
        "F(a_par) for flat a",
    ),
    _check(
        CheckKind.MIXED,
        "flat_perp_derivative",
        _flat_perp_derivative,
        "d a_perp for flat a",
    ),
    _check(
        CheckKind.MIXED,
        "flat_perp_square_derivative",
        _flat_perp_square_derivative,
        "d(a_perp ^ a_perp) for flat a",
    ),
    _check(
        CheckKind.MIXED,
        "projected_relation",
        _projected_relation,
        "(db)_perp = [w, b] for h-valued b",
    ),
    _check(
        CheckKind.MIXED,
        "map_potential_energy",
        _map_potential_energy,
        "E(u phi) = E_phi(u^-1 du)",
    ),
    _check(CheckKind.MIXED, "flatness", _flatness, "da + a ^ a = 0"),
    _check(
        CheckKind.MIXED,
        "product_rule",
        _product_rule,
        "d(a ^ b) = da ^ b - a ^ db",
    ),
    _check(
        CheckKind.MIXED,
        "commutator_product_rule",
        _commutator_product_rule,
        "d[a, b] = [da, b] - [a, db]",
    ),
    _check(
        CheckKind.MIXED,
        "wedge_square_rule",
        _wedge_square_rule,
        "d(a ^ a) = [da, a]",
    ),
    _check(
        CheckKind.MIXED,
        "projector_leibniz",
        _projector_leibniz,
        "d(Phi a) = dPhi ^ a + Phi da",
    ),
    _check(
        CheckKind.MIXED,
        "gauge_invariance",
        _gauge_invariance,
        "E_phi(a^w) = E_phi(a)",
    ),
]

ALL_CHECKS = ALGEBRAIC_CHECKS + MIXED_CHECKS

# residuals already at rounding level have no meaningful order
ROUNDING_FLOOR = 1e-13


def get_check(name: str) -> IdentityCheck:
    for check in ALL_CHECKS:
        if check.name == name:
            return check
    raise KeyError(f"Unknown identity check {name!r}")


def run_algebraic(
    check: IdentityCheck,
    n: int,
    samples: int,
    seed: int,
    tol: float = settings.ALGEBRAIC_TOL,
) -> CheckResult:
    grid = Grid3(n=n, box_length=TEST_BOX)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        worst = max(worst, check.residual(AnalyticField.draw(rng), grid))
    passed = worst <= tol
    logger.debug(
        "%s: worst relative residual %.3e over %d samples", check.name, worst, samples
    )
    return CheckResult(check.name, check.kind, (n,), (worst,), passed)


def run_mixed(
    check: IdentityCheck,
    sizes: Sequence[int],
    seed: int,
    min_ratio: float = settings.MIN_CONVERGENCE_RATIO,
) -> CheckResult:
    field = AnalyticField.draw(np.random.default_rng(seed))
    residuals = tuple(
        check.residual(field, Grid3(n=n, box_length=TEST_BOX)) for n in sizes
    )
    result = CheckResult(check.name, check.kind, tuple(sizes), residuals, False)
    min_order = math.log2(min_ratio)
    passed = all(
        r_coarse < ROUNDING_FLOOR or order >= min_order
        for r_coarse, order in zip(residuals, result.orders)
    )
    logger.debug("%s: residuals %s orders %s", check.name, residuals, result.orders)
    return CheckResult(check.name, check.kind, tuple(sizes), residuals, passed)


def run_suite(
    sizes: Sequence[int] = (16, 32),
    samples: int = 100,
    seed: int = 0,
    names: Sequence[str] | None = None,
) -> list[CheckResult]:
    if len(sizes) < 2:
        raise ValueError("Refinement checks need at least two grid sizes")
    checks = ALL_CHECKS if names is None else [get_check(name) for name in names]
    results = []
    for check in checks:
        if check.kind is CheckKind.ALGEBRAIC:
            results.append(run_algebraic(check, sizes[0], samples, seed))
        else:
            results.append(run_mixed(check, sizes, seed))
        logger.info("%-28s %s", check.name, "PASS" if results[-1].passed else "FAIL")
    return results


def format_table(results: Sequence[CheckResult]) -> str:
    lines = [f"{'check':<30}{'kind':<11}{'residuals':<36}{'order':<10}status"]
    for result in results:
        residuals = " ".join(f"{r:.3e}" for r in result.residuals)
        orders = " ".join(f"{o:.2f}" for o in result.orders) or "-"
        status = "PASS" if result.passed else "FAIL"
        lines.append(
            f"{result.name:<30}{result.kind:<11}{residuals:<36}{orders:<10}{status}"
        )
    return "\n".join(lines)
