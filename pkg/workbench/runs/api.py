"""Run orchestration behind the ``fskyrme`` subcommands.

Every entry point takes a validated RunConfig and an output directory,
writes its artifacts there and returns an exit status: 0 when every check
the subcommand declares passes, 1 when a check fails, 2 when a descent run
halted early.
"""

import logging
from pathlib import Path

from checks.suites import format_table, run_suite
from energy.functionals import energy_map
from flow.descent import Minimizer
from flow.exceptions import FlowHalted
from flow.models import FlowTrace
from geometry.models import FieldMap
from topology.invariants import invariant_report

from .exceptions import CommandError
from .initializers import make_grid, make_initializer
from .ledger import write_energy_csv
from .schemas import EnergyOut, InvariantOut, RunConfig, RunReport, TraceOut
from .snapshots import write_snapshot
from .vtk import write_density_vtk

logger = logging.getLogger(__name__)

SUBCOMMANDS = ("minimize", "invariants", "identities", "convergence")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_HALTED = 2


def _prepare(out: Path) -> Path:
    out = Path(out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CommandError(f"Cannot create output directory {out}: {exc}") from exc
    return out


def _write_text(path: Path, text: str) -> Path:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CommandError(f"Cannot write {path}: {exc}") from exc
    return path


def build_report(
    cfg: RunConfig,
    field: FieldMap,
    trace: FlowTrace | None = None,
    workers: int | None = None,
) -> RunReport:
    energy = energy_map(field, cfg.flow.skyrme_weight)
    invariants = invariant_report(field, method=cfg.hopf_method, workers=workers)
    return RunReport(
        target=str(field.target),
        n=field.grid.n,
        energy=EnergyOut.from_report(energy),
        invariants=InvariantOut.from_report(invariants),
        trace=TraceOut.from_trace(trace) if trace is not None else None,
    )


def run_minimize(cfg: RunConfig, out: Path, workers: int | None = None) -> int:
    out = _prepare(out)
    psi0 = make_initializer(cfg)
    flow_config = cfg.flow.model_copy(update={"log_every": cfg.outputs.log_every})
    minimizer = Minimizer(
        flow_config,
        invariant_fn=lambda psi: invariant_report(
            psi, method=cfg.hopf_method, workers=workers
        ),
        workers=workers,
    )

    def snapshot(iteration, psi, report):
        every = cfg.outputs.snapshot_every
        if every and iteration % every == 0:
            write_snapshot(
                out / f"snapshot_{iteration:06d}.fsk", psi, iteration, report.total
            )

    status = EXIT_OK
    try:
        psi, trace = minimizer.run(psi0, callback=snapshot)
    except FlowHalted as exc:
        logger.warning("Descent halted: %s", exc)
        psi, trace, status = exc.field, exc.trace, EXIT_HALTED

    try:
        write_energy_csv(out / "energy.csv", trace)
        energy = energy_map(psi, cfg.flow.skyrme_weight)
        write_snapshot(out / "final.fsk", psi, trace.iterations, energy.total)
        if cfg.outputs.emit_vtk:
            write_density_vtk(out / "energy_density.vtk", psi.grid, energy.density)
    except OSError as exc:
        raise CommandError(f"Cannot write to {out}: {exc}") from exc

    report = build_report(cfg, psi, trace, workers)
    _write_text(out / "report.json", report.model_dump_json(indent=2))
    return status


def run_invariants(cfg: RunConfig, out: Path, workers: int | None = None) -> int:
    out = _prepare(out)
    field = make_initializer(cfg)
    report = build_report(cfg, field, workers=workers)
    _write_text(out / "report.json", report.model_dump_json(indent=2))
    return EXIT_OK if report.invariants.trusted else EXIT_CHECK_FAILED


def run_identities(cfg: RunConfig, out: Path, workers: int | None = None) -> int:
    out = _prepare(out)
    results = run_suite(
        sizes=cfg.identities.sizes, samples=cfg.identities.samples, seed=cfg.seed
    )
    _write_text(out / "identities.txt", format_table(results) + "\n")
    failed = [result.name for result in results if not result.passed]
    if failed:
        logger.warning("Identity checks failed: %s", ", ".join(failed))
        return EXIT_CHECK_FAILED
    return EXIT_OK


def run_convergence(cfg: RunConfig, out: Path, workers: int | None = None) -> int:
    """Energy and invariants of the configured initial field across grid sizes."""
    out = _prepare(out)
    reports = []
    for n in cfg.convergence.sizes:
        sized = cfg.model_copy(update={"grid": cfg.grid.model_copy(update={"n": n})})
        field = make_initializer(sized, make_grid(sized))
        reports.append(build_report(sized, field, workers=workers))
        logger.info("n=%d: E=%.10g", n, reports[-1].energy.total)

    lines = [f"{'n':<6}{'E_total':<26}{'invariants':<40}drift"]
    for report in reports:
        raw = [f"{value.raw:.6f}" for value in _invariant_values(report.invariants)]
        lines.append(
            f"{report.n:<6}{report.energy.total:<26.17g}"
            f"{' '.join(raw):<40}{report.invariants.drift:.3e}"
        )
    _write_text(out / "convergence.txt", "\n".join(lines) + "\n")
    trusted = all(report.invariants.trusted for report in reports)
    return EXIT_OK if trusted else EXIT_CHECK_FAILED


def _invariant_values(invariants: InvariantOut):
    values = [invariants.degree] + list(invariants.fluxes or []) + [invariants.hopf]
    return [value for value in values if value is not None]


RUNNERS = {
    "minimize": run_minimize,
    "invariants": run_invariants,
    "identities": run_identities,
    "convergence": run_convergence,
}


def run(
    cfg: RunConfig,
    subcommand: str,
    out: Path | None = None,
    workers: int | None = None,
) -> int:
    if subcommand not in RUNNERS:
        raise CommandError(f"Unknown subcommand {subcommand!r}")
    out = Path(out) if out is not None else cfg.outputs.dir
    logger.info("Running %s into %s", subcommand, out)
    return RUNNERS[subcommand](cfg, out, workers)
