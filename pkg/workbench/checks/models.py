from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from lattice.models import Grid3

from .fields import AnalyticField


class CheckKind(StrEnum):
    """Algebraic identities hold to rounding; mixed ones converge under refinement"""

    ALGEBRAIC = "algebraic"
    MIXED = "mixed"


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    kind: CheckKind
    residual: Callable[[AnalyticField, Grid3], float]
    description: str = ""


@dataclass(frozen=True)
class CheckResult:
    """Residuals of one identity; one entry per grid size for mixed checks,
    the worst sample at the first size for algebraic ones."""

    name: str
    kind: CheckKind
    sizes: tuple[int, ...]
    residuals: tuple[float, ...]
    passed: bool

    @property
    def orders(self) -> tuple[float, ...]:
        """Observed convergence orders between consecutive sizes."""
        out = []
        for (n0, r0), (n1, r1) in zip(
            zip(self.sizes, self.residuals), zip(self.sizes[1:], self.residuals[1:])
        ):
            if r0 <= 0.0 or r1 <= 0.0:
                out.append(float("inf"))
            else:
                out.append(float(np.log(r0 / r1) / np.log(n1 / n0)))
        return tuple(out)

    @property
    def ratios(self) -> tuple[float, ...]:
        return tuple(
            r0 / r1 if r1 > 0.0 else float("inf")
            for r0, r1 in zip(self.residuals, self.residuals[1:])
        )
