"""Projected gradient descent on lattice maps with Armijo backtracking.

Each step moves against the L^2 gradient G = g / h^3 and retracts to the
target: psi <- normalize(psi - tau G). A trial step is accepted when

    E(trial) <= E(psi) - c tau h^3 sum |G|^2

and the next iteration starts from tau / beta, capped at a fixed multiple of
the initial step. Invariants are sampled every ``invariant_check_every``
accepted steps; a move larger than the jump threshold halts the run.
"""

import logging
from collections.abc import Callable, Sequence

import numpy as np
from numpy.typing import NDArray

from config import settings
from energy.functionals import energy_map
from energy.gradient import (
    directional_derivative_check,
    l2_gradient,
    project_tangent,
    retract,
)
from energy.models import EnergyReport
from geometry.models import FieldMap, TargetSpace
from lattice.models import BoundaryMode
from topology.invariants import invariant_report
from topology.models import InvariantReport

from .exceptions import SectorJump, StepUnderflow
from .models import FlowConfig, FlowTrace, Termination, TraceRow

logger = logging.getLogger(__name__)

InvariantFn = Callable[[FieldMap], InvariantReport]
StepCallback = Callable[[int, FieldMap, EnergyReport], None]


def invariant_distance(before: InvariantReport, after: InvariantReport) -> float:
    """Largest change of any raw invariant; inf when one side lost a value."""
    pairs = [
        (before.degree, after.degree),
        (before.hopf, after.hopf),
    ]
    if before.fluxes is not None or after.fluxes is not None:
        if before.fluxes is None or after.fluxes is None:
            return float("inf")
        pairs.extend(zip(before.fluxes, after.fluxes))
    distance = 0.0
    for old, new in pairs:
        if (old is None) != (new is None):
            return float("inf")
        if old is not None:
            distance = max(distance, abs(new.raw - old.raw))
    return distance


def _sup_norm(values: NDArray[np.float64]) -> float:
    return float(np.max(np.linalg.norm(values, axis=-1)))


class Minimizer:
    """Monotone descent within the topological sector of the starting field."""

    def __init__(
        self,
        config: FlowConfig,
        invariant_fn: InvariantFn | None = None,
        workers: int | None = None,
    ):
        self.config = config
        self.workers = workers
        self.invariant_fn = invariant_fn or (
            lambda psi: invariant_report(psi, workers=self.workers)
        )

    def _row(self, iteration, report, gradient, invariants=None) -> TraceRow:
        return TraceRow(
            iteration=iteration,
            dirichlet=report.dirichlet,
            skyrme=report.skyrme,
            total=report.total,
            grad_norm=_sup_norm(gradient),
            invariants=invariants,
        )

    def _line_search(self, psi, energy, gradient, step, trace, iteration):
        cfg = self.config
        slope = float(np.sum(gradient**2)) * psi.grid.cell_volume
        while True:
            trial = retract(psi, -step * gradient)
            report = energy_map(trial, cfg.skyrme_weight)
            if report.total <= energy - cfg.armijo_c * step * slope:
                return trial, report, step
            step *= cfg.backtrack_factor
            logger.debug("iteration %d: backtracking to step %.3e", iteration, step)
            if step < settings.STEP_UNDERFLOW:
                trace.termination = Termination.STEP_UNDERFLOW
                raise StepUnderflow(trace, psi, step, iteration)

    def run(
        self, psi0: FieldMap, callback: StepCallback | None = None
    ) -> tuple[FieldMap, FlowTrace]:
        cfg = self.config
        psi = psi0
        report = energy_map(psi, cfg.skyrme_weight)
        gradient = l2_gradient(psi, cfg.skyrme_weight)
        grad_tol = cfg.resolved_grad_tol(report.total)
        step_init = cfg.resolved_step(psi.grid.h)
        step = step_init

        safe_field = psi
        safe_invariants = self.invariant_fn(psi)
        trace = FlowTrace()
        trace.rows.append(self._row(0, report, gradient, safe_invariants))
        logger.info(
            "Descent start: E=%.10g, grad_tol=%.3e, step=%.3e",
            report.total,
            grad_tol,
            step,
        )

        iteration = 0
        termination = Termination.MAX_ITERS
        while True:
            if _sup_norm(gradient) <= grad_tol:
                termination = Termination.GRAD_TOL
                break
            if iteration >= cfg.max_iters:
                break

            iteration += 1
            psi, report, step = self._line_search(
                psi, report.total, gradient, step, trace, iteration
            )
            gradient = l2_gradient(psi, cfg.skyrme_weight)
            trace.accepted.append(report.total)
            trace.iterations = iteration
            step = min(step / cfg.backtrack_factor, cfg.max_step_growth * step_init)

            invariants = None
            if iteration % cfg.invariant_check_every == 0:
                invariants = self._check_sector(
                    psi, safe_invariants, trace, safe_field, iteration
                )
                safe_field, safe_invariants = psi, invariants
            if iteration % cfg.log_every == 0 or invariants is not None:
                trace.rows.append(self._row(iteration, report, gradient, invariants))
            if callback is not None:
                callback(iteration, psi, report)

        if iteration > 0:
            final = self._check_sector(
                psi, safe_invariants, trace, safe_field, iteration
            )
            if trace.rows[-1].iteration != iteration:
                trace.rows.append(self._row(iteration, report, gradient, final))
            elif trace.rows[-1].invariants is None:
                trace.rows[-1] = self._row(iteration, report, gradient, final)

        trace.termination = termination
        logger.info(
            "Descent stopped after %d steps (%s): E=%.10g",
            iteration,
            termination,
            report.total,
        )
        return psi, trace

    def _check_sector(self, psi, safe_invariants, trace, safe_field, iteration):
        invariants = self.invariant_fn(psi)
        jump = invariant_distance(safe_invariants, invariants)
        logger.debug("iteration %d: invariants %s", iteration, invariants.values())
        if jump > settings.SECTOR_JUMP_THRESHOLD:
            trace.termination = Termination.SECTOR_JUMP
            raise SectorJump(trace, safe_field, safe_invariants, invariants, iteration)
        return invariants


def minimize(
    psi0: FieldMap,
    config: FlowConfig | None = None,
    invariant_fn: InvariantFn | None = None,
    workers: int | None = None,
    callback: StepCallback | None = None,
) -> tuple[FieldMap, FlowTrace]:
    minimizer = Minimizer(
        config or FlowConfig(), invariant_fn=invariant_fn, workers=workers
    )
    return minimizer.run(psi0, callback=callback)


def random_tangent(psi: FieldMap, rng: np.random.Generator) -> NDArray[np.float64]:
    """Random tangent direction with unit h^3-weighted L^1 norm."""
    delta = project_tangent(psi.values, rng.standard_normal(psi.values.shape))
    if psi.target is TargetSpace.S2:
        delta[..., 0] = 0.0
    if psi.grid.boundary_mode == BoundaryMode.FIXED:
        delta[psi.grid.boundary_mask()] = 0.0
    mass = float(np.sum(np.linalg.norm(delta, axis=-1))) * psi.grid.cell_volume
    return delta / mass


def stationarity_probe(
    psi: FieldMap,
    config: FlowConfig | None = None,
    directions: int = 10,
    seed: int = 0,
    eps: float = 1e-5,
) -> float:
    """Largest |central-difference derivative| of E along random unit
    tangent directions."""
    config = config or FlowConfig()
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(directions):
        _, numeric = directional_derivative_check(
            psi, random_tangent(psi, rng), eps=eps, skyrme_weight=config.skyrme_weight
        )
        worst = max(worst, abs(numeric))
    return worst


def rank_minima(
    runs: Sequence[tuple[FieldMap, FlowTrace]],
) -> list[tuple[FieldMap, FlowTrace]]:
    """Runs ordered by final energy, lowest first."""
    return sorted(runs, key=lambda run: run[1].final_energy)
