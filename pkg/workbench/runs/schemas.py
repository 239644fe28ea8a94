"""Pydantic schemas for run configuration and JSON reports"""

from enum import StrEnum
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import settings
from energy.models import EnergyReport
from flow.models import FlowConfig, FlowTrace
from geometry.models import TargetSpace
from lattice.models import BoundaryMode
from topology.models import HopfMethod, InvariantReport


class InitializerKind(StrEnum):
    CONSTANT = "constant"
    HEDGEHOG = "hedgehog"
    HOPF_PROJECTION = "hopf_projection"
    TORUS_WRAP = "torus_wrap"
    RANDOM_SMOOTH = "random_smooth"


class Section(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class GridSection(Section):
    n: int = Field(ge=4)
    box_length: float = Field(default=8.0, gt=0.0)
    boundary_mode: BoundaryMode = BoundaryMode.PERIODIC


class InitializerSection(Section):
    kind: InitializerKind = InitializerKind.CONSTANT
    k: int = 1
    radius: float | None = Field(default=None, gt=0.0)
    center: tuple[float, float, float] = (0.0, 0.0, 0.0)
    axes: tuple[int, int] = (0, 1)
    winding: int = 1
    correlation_length: float | None = Field(default=None, gt=0.0)
    amplitude: float = Field(default=1.0, ge=0.0)
    base: tuple[float, float, float, float] | None = None


class OutputSection(Section):
    dir: Path = settings.OUTPUT_DIR
    log_every: int = Field(default=1, ge=1)
    snapshot_every: int = Field(default=0, ge=0)
    emit_vtk: bool = False


class IdentitiesSection(Section):
    sizes: tuple[int, ...] = (16, 32)
    samples: int = Field(default=100, ge=1)


class ConvergenceSection(Section):
    sizes: tuple[int, ...] = (16, 32, 48)


def incompatibility(
    kind: InitializerKind, target: TargetSpace, mode: BoundaryMode
) -> str | None:
    """Why an initializer cannot produce a field for this target, if it cannot."""
    if kind is InitializerKind.HEDGEHOG and target is TargetSpace.S2:
        return "hedgehog builds SU(2) maps; use hopf_projection for s2"
    if kind is InitializerKind.HOPF_PROJECTION and target is TargetSpace.SU2:
        return "hopf_projection builds S^2 maps; use hedgehog for su2"
    if kind is InitializerKind.TORUS_WRAP and target is TargetSpace.SU2:
        return "torus_wrap builds S^2 maps"
    if kind is InitializerKind.TORUS_WRAP and mode is BoundaryMode.FIXED:
        return "torus_wrap needs a periodic grid"
    return None


class RunConfig(Section):
    grid: GridSection
    target: TargetSpace
    initializer: InitializerSection = InitializerSection()
    flow: FlowConfig = FlowConfig()
    outputs: OutputSection = OutputSection()
    identities: IdentitiesSection = IdentitiesSection()
    convergence: ConvergenceSection = ConvergenceSection()
    seed: int = 0
    hopf_method: HopfMethod = HopfMethod.POISSON_GAUGE

    @model_validator(mode="after")
    def check_initializer(self) -> "RunConfig":
        reason = incompatibility(
            self.initializer.kind, self.target, self.grid.boundary_mode
        )
        if reason is not None:
            raise ValueError(reason)
        return self


class RoundedOut(BaseModel):
    raw: float
    rounded: int
    drift: float


def _rounded(value) -> RoundedOut | None:
    if value is None:
        return None
    return RoundedOut(raw=value.raw, rounded=value.rounded, drift=value.drift)


class InvariantOut(BaseModel):
    degree: RoundedOut | None = None
    fluxes: list[RoundedOut] | None = None
    flux_spread: list[float] | None = None
    hopf: RoundedOut | None = None
    method: str | None = None
    drift: float
    trusted: bool

    @staticmethod
    def from_report(report: InvariantReport):
        return InvariantOut(
            degree=_rounded(report.degree),
            fluxes=(
                [_rounded(f) for f in report.fluxes]
                if report.fluxes is not None
                else None
            ),
            flux_spread=(
                list(report.flux_spread) if report.flux_spread is not None else None
            ),
            hopf=_rounded(report.hopf),
            method=str(report.method) if report.method is not None else None,
            drift=report.drift,
            trusted=report.trusted,
        )


class EnergyOut(BaseModel):
    dirichlet: float
    skyrme: float
    total: float
    yang_mills: float | None = None

    @staticmethod
    def from_report(report: EnergyReport):
        return EnergyOut(
            dirichlet=report.dirichlet,
            skyrme=report.skyrme,
            total=report.total,
            yang_mills=report.yang_mills,
        )


class TraceOut(BaseModel):
    iterations: int
    termination: str | None
    initial_energy: float
    final_energy: float
    monotone: bool

    @staticmethod
    def from_trace(trace: FlowTrace):
        return TraceOut(
            iterations=trace.iterations,
            termination=str(trace.termination) if trace.termination else None,
            initial_energy=trace.initial_energy,
            final_energy=trace.final_energy,
            monotone=trace.is_monotone(),
        )


class RunReport(BaseModel):
    target: str
    n: int
    energy: EnergyOut
    invariants: InvariantOut
    trace: TraceOut | None = None
