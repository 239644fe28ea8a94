from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np

from config import settings


class HopfMethod(StrEnum):
    """Routes to the secondary invariant of an S^2-valued map"""

    POISSON_GAUGE = "poisson_gauge"
    LIFT_CS = "lift_cs"


@dataclass(frozen=True)
class Rounded:
    """A raw invariant next to its nearest integer."""

    raw: float
    rounded: int

    @classmethod
    def of(cls, raw: float) -> "Rounded":
        return cls(float(raw), int(np.rint(raw)))

    @property
    def drift(self) -> float:
        return abs(self.raw - self.rounded)


@dataclass(frozen=True)
class InvariantReport:
    """Degree (SU(2)) or fluxes plus Hopf number (S^2) of a lattice map."""

    degree: Rounded | None = None
    fluxes: tuple[Rounded, Rounded, Rounded] | None = None
    hopf: Rounded | None = None
    method: HopfMethod | None = None
    flux_spread: tuple[float, float, float] | None = None

    def values(self) -> list[Rounded]:
        out: list[Rounded] = []
        if self.degree is not None:
            out.append(self.degree)
        if self.fluxes is not None:
            out.extend(self.fluxes)
        if self.hopf is not None:
            out.append(self.hopf)
        return out

    @property
    def drift(self) -> float:
        return max((v.drift for v in self.values()), default=0.0)

    @property
    def trusted(self) -> bool:
        return self.drift < settings.DRIFT_TRUST_THRESHOLD


@dataclass(frozen=True)
class SectorLabel:
    """Integer sector datum; secondary only when every flux vanishes."""

    fluxes: tuple[int, int, int]
    secondary: int | None = None

    def __post_init__(self) -> None:
        if self.secondary is not None and any(self.fluxes):
            raise ValueError("Secondary invariant is undecided for nonzero fluxes")


@dataclass(frozen=True)
class ChernSimonsTerms:
    """Binomial split of c_G tr(a^a^a) along h_phi and its complement.

    Terms in order: par^3, 3 par^2 perp, 3 par perp^2, perp^3, with the
    integrability exponent each term is controlled in.
    """

    total: float
    integrals: tuple[float, float, float, float]
    l1_norms: tuple[float, float, float, float]
    lp_norms: tuple[float, float, float, float]
    exponents: tuple[float, float, float, float] = field(
        default=(2.0, 6.0 / 5.0, 3.0 / 2.0, 1.0)
    )
