"""Target spaces and lattice maps into them"""

from dataclasses import dataclass
from enum import StrEnum
from typing import Self

import numpy as np
from numpy.typing import NDArray

from config import settings
from lattice.models import BoundaryMode, Grid3
from liecore.models import I, ONE, Quat
from liecore.quaternions import normalize

from .exceptions import TargetMismatch


class TargetSpace(StrEnum):
    """SU(2) itself, or S^2 = SU(2)/U(1) with base point i"""

    SU2 = "su2"
    S2 = "s2"

    @property
    def payload_components(self) -> int:
        """Stored reals per site: (w, x, y, z) or (x, y, z)."""
        return 4 if self is TargetSpace.SU2 else 3

    @property
    def base_point(self) -> Quat:
        return ONE if self is TargetSpace.SU2 else I


@dataclass(frozen=True, eq=False)
class FieldMap:
    """Lattice map from grid sites into SU(2) or S^2.

    values has shape (n, n, n, 4). S^2 values are unit imaginary quaternions
    with w stored as exactly zero.
    """

    grid: Grid3
    target: TargetSpace
    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        if self.values.shape != self.grid.shape + (4,):
            raise ValueError(
                f"Field on a {self.grid.n}^3 grid needs values of shape "
                f"{self.grid.shape + (4,)}, got {self.values.shape}"
            )
        if not np.all(np.isfinite(self.values)):
            raise TargetMismatch("Field contains non-finite values")
        deviation = np.abs(np.linalg.norm(self.values, axis=-1) - 1.0)
        if np.max(deviation) > settings.MEMBERSHIP_TOL:
            raise TargetMismatch(
                f"Field values are not unit quaternions "
                f"(max deviation {float(np.max(deviation)):.3e})"
            )
        if self.target is TargetSpace.S2 and np.any(self.values[..., 0] != 0.0):
            raise TargetMismatch("S^2-valued field has a nonzero real part")
        if self.grid.boundary_mode == BoundaryMode.FIXED:
            faces = self.values[self.grid.boundary_mask()]
            if np.any(faces != self.values[0, 0, 0]):
                raise TargetMismatch("Boundary layer is not clamped to one constant")

    @classmethod
    def from_values(
        cls, grid: Grid3, target: TargetSpace, values: NDArray[np.float64]
    ) -> Self:
        """Retract arbitrary values onto the target and clamp the boundary."""
        values = np.array(values, dtype=np.float64, copy=True)
        if target is TargetSpace.S2:
            values[..., 0] = 0.0
        values = normalize(values)
        if grid.boundary_mode == BoundaryMode.FIXED:
            values = grid.clamp_boundary(values, values[0, 0, 0])
        return cls(grid, target, values)

    @classmethod
    def constant(
        cls, grid: Grid3, target: TargetSpace, value: Quat | None = None
    ) -> Self:
        if value is None:
            value = target.base_point
        value = np.asarray(value, dtype=np.float64)
        return cls.from_values(grid, target, np.broadcast_to(value, grid.shape + (4,)))

    @property
    def boundary_value(self) -> Quat:
        return self.values[0, 0, 0]

    def with_values(self, values: NDArray[np.float64]) -> "FieldMap":
        return FieldMap(self.grid, self.target, values)

    def payload(self) -> NDArray[np.float64]:
        """Per-site stored components."""
        return self.values if self.target is TargetSpace.SU2 else self.values[..., 1:]


@dataclass(frozen=True)
class FlatIdentityReport:
    """L^2 residuals of the flat-potential identities for a pure-gauge a.

    singular_leak is the sup norm of (I - Phi)(a_perp ^ a_perp), which
    vanishes pointwise on a symmetric target.
    """

    curvature_of_parallel: float
    perp_derivative: float
    perp_square_derivative: float
    singular_leak: float


@dataclass(frozen=True)
class AdmissibilityReport:
    perp_l2: float
    perp_square_l2: float
    parallel_w12: float
    admissible: bool
