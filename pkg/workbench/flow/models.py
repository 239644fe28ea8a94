from dataclasses import dataclass, field
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field

from topology.models import InvariantReport


class Termination(StrEnum):
    """Why a descent run stopped"""

    GRAD_TOL = "grad_tol"
    MAX_ITERS = "max_iters"
    SECTOR_JUMP = "sector_jump"
    STEP_UNDERFLOW = "step_underflow"


class FlowConfig(BaseModel):
    """Descent parameters. ``step_init`` and ``grad_tol`` default to values
    derived from the grid spacing and the initial energy when left unset."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    step_init: float | None = Field(default=None, gt=0.0)
    backtrack_factor: float = Field(default=0.5, gt=0.0, lt=1.0)
    armijo_c: float = Field(default=1e-4, gt=0.0, lt=1.0)
    grad_tol: float | None = Field(default=None, gt=0.0)
    max_iters: int = Field(default=2000, ge=0)
    invariant_check_every: int = Field(default=50, ge=1)
    skyrme_weight: float = Field(default=1.0, gt=0.0)
    log_every: int = Field(default=1, ge=1)
    max_step_growth: float = Field(default=16.0, ge=1.0)

    def resolved_step(self, h: float) -> float:
        return 0.1 * h**2 if self.step_init is None else self.step_init

    def resolved_grad_tol(self, initial_energy: float) -> float:
        if self.grad_tol is not None:
            return self.grad_tol
        return 1e-6 * (1.0 + initial_energy)


@dataclass(frozen=True)
class TraceRow:
    iteration: int
    dirichlet: float
    skyrme: float
    total: float
    grad_norm: float
    invariants: InvariantReport | None = None

    @property
    def secondary(self) -> float | None:
        """Degree of an SU(2) map or Hopf number of an S^2 map, when known."""
        if self.invariants is None:
            return None
        if self.invariants.degree is not None:
            return self.invariants.degree.raw
        if self.invariants.hopf is not None:
            return self.invariants.hopf.raw
        return None


@dataclass
class FlowTrace:
    """Logged iterations of one descent run.

    ``accepted`` holds the energy after every accepted step, logged or not,
    so the monotone ledger can be audited independently of ``log_every``.
    """

    rows: list[TraceRow] = field(default_factory=list)
    accepted: list[float] = field(default_factory=list)
    termination: Termination | None = None
    iterations: int = 0

    @property
    def initial_energy(self) -> float:
        return self.rows[0].total

    @property
    def final_energy(self) -> float:
        return self.accepted[-1] if self.accepted else self.initial_energy

    def is_monotone(self) -> bool:
        ledger = [self.initial_energy] + self.accepted
        return all(b <= a for a, b in zip(ledger, ledger[1:]))
