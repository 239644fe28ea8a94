"""Lattice grid and Lie-algebra-valued discrete forms"""

from dataclasses import dataclass, field
from enum import StrEnum
from math import comb
from typing import Any, Self

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from liecore.models import Quat
from liecore.quaternions import check_unit, imag, inner

from .exceptions import DegreeOverflow, GridMismatch, NonFiniteForm

SITE_AXES = (0, 1, 2)


class BoundaryMode(StrEnum):
    """How the grid closes up"""

    PERIODIC = "periodic"
    FIXED = "fixed"


class Grid3(BaseModel):
    """N^3 grid on a box of side L centred at the origin.

    Site (m0, m1, m2) sits at x_a = m_a h - L/2. In FIXED mode the six face
    layers carry one constant value and differences read the clamped
    neighbour, so the difference out of the last layer is zero.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=4)
    box_length: float = Field(gt=0.0)
    boundary_mode: BoundaryMode = BoundaryMode.PERIODIC

    @property
    def h(self) -> float:
        return self.box_length / self.n

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.n, self.n, self.n)

    @property
    def cell_volume(self) -> float:
        return self.h**3

    @property
    def periodic(self) -> bool:
        return self.boundary_mode == BoundaryMode.PERIODIC

    def axis_coords(self) -> NDArray[np.float64]:
        return np.arange(self.n) * self.h - 0.5 * self.box_length

    def coords(self) -> tuple[NDArray[np.float64], ...]:
        """Site coordinates (x0, x1, x2), each of shape (n, n, n)."""
        x = self.axis_coords()
        return tuple(np.meshgrid(x, x, x, indexing="ij"))

    def shift(self, values: NDArray[Any], axis: int) -> NDArray[Any]:
        """Values at x + e_axis (site axes first)."""
        idx = np.arange(1, self.n + 1)
        idx = idx % self.n if self.periodic else np.minimum(idx, self.n - 1)
        return np.take(values, idx, axis=axis)

    def scatter_back(self, values: NDArray[Any], axis: int) -> NDArray[Any]:
        """Moves a quantity at x to x + e_axis.

        The adjoint of shift, except on the last FIXED layer, whose clamped
        self-read it drops.
        """
        if self.periodic:
            return np.roll(values, 1, axis=axis)
        out = np.zeros_like(values)
        src = [slice(None)] * values.ndim
        dst = [slice(None)] * values.ndim
        src[axis] = slice(0, self.n - 1)
        dst[axis] = slice(1, self.n)
        out[tuple(dst)] = values[tuple(src)]
        return out

    def forward_difference(self, values: NDArray[Any], axis: int) -> NDArray[Any]:
        return (self.shift(values, axis) - values) / self.h

    def boundary_mask(self) -> NDArray[np.bool_]:
        mask = np.zeros(self.shape, dtype=bool)
        for axis in SITE_AXES:
            index: list[Any] = [slice(None)] * 3
            index[axis] = [0, self.n - 1]
            mask[tuple(index)] = True
        return mask

    def clamp_boundary(
        self, values: NDArray[Any], constant: NDArray[Any]
    ) -> NDArray[Any]:
        out = np.array(values, copy=True)
        out[self.boundary_mask()] = constant
        return out

    def reflect(self, values: NDArray[Any]) -> NDArray[Any]:
        """Orientation-reversing reflection m -> n-1-m on all three axes."""
        return np.ascontiguousarray(np.flip(values, axis=SITE_AXES))


@dataclass(frozen=True, eq=False)
class GForm:
    """Quaternion-valued k-form.

    components has shape (binomial(3, k), n, n, n, 4). For k = 1 component a
    is the coefficient of dx^a; for k = 2 component p is the coefficient of
    dx^(p+1) ^ dx^(p+2) (indices mod 3); k = 0 and k = 3 have one component.
    Forms that should be su(2)-valued keep w == 0; wedge products may carry
    a real part until a caller projects it away.
    """

    degree: int
    components: NDArray[np.float64]
    grid: Grid3
    discarded_norm: float = field(default=0.0)

    def __post_init__(self) -> None:
        if not 0 <= self.degree <= 3:
            raise DegreeOverflow(f"Form degree {self.degree} outside 0..3")
        expected = (comb(3, self.degree),) + self.grid.shape + (4,)
        if self.components.shape != expected:
            raise ValueError(
                f"{self.degree}-form needs components of shape {expected}, "
                f"got {self.components.shape}"
            )
        if not np.all(np.isfinite(self.components)):
            raise NonFiniteForm(f"Non-finite values in {self.degree}-form")

    @classmethod
    def zeros(cls, grid: Grid3, degree: int) -> Self:
        if not 0 <= degree <= 3:
            raise DegreeOverflow(f"Form degree {degree} outside 0..3")
        return cls(degree, np.zeros((comb(3, degree),) + grid.shape + (4,)), grid)

    @classmethod
    def constant(cls, grid: Grid3, degree: int, values: Quat) -> Self:
        """Form with the same quaternion per component at every site."""
        values = np.asarray(values, dtype=np.float64).reshape(-1, 4)
        comps = np.broadcast_to(
            values[:, None, None, None, :], (comb(3, degree),) + grid.shape + (4,)
        )
        return cls(degree, np.array(comps), grid)

    @property
    def ncomp(self) -> int:
        return self.components.shape[0]

    def with_components(self, components: NDArray[np.float64]) -> "GForm":
        return GForm(self.degree, components, self.grid)

    def real_part(self) -> NDArray[np.float64]:
        return self.components[..., 0]

    def project_algebra(self) -> "GForm":
        """Drop the real part, recording its L^2 norm."""
        residue = float(
            np.sqrt(np.sum(self.components[..., 0] ** 2) * self.grid.cell_volume)
        )
        return GForm(self.degree, imag(self.components), self.grid, residue)

    def check_compatible(self, other: "GForm") -> None:
        if self.grid != other.grid:
            raise GridMismatch("Forms live on different grids")

    def _same_shape(self, other: "GForm") -> None:
        self.check_compatible(other)
        if self.degree != other.degree:
            raise ValueError(
                f"Cannot combine a {self.degree}-form with a {other.degree}-form"
            )

    def __add__(self, other: "GForm") -> "GForm":
        self._same_shape(other)
        return self.with_components(self.components + other.components)

    def __sub__(self, other: "GForm") -> "GForm":
        self._same_shape(other)
        return self.with_components(self.components - other.components)

    def __neg__(self) -> "GForm":
        return self.with_components(-self.components)

    def __mul__(self, scalar: float) -> "GForm":
        return self.with_components(scalar * self.components)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class ProjectorField:
    """Per-site isotropy projector Phi = pr onto R phi(x)."""

    phi: NDArray[np.float64]
    grid: Grid3

    def __post_init__(self) -> None:
        if self.phi.shape != self.grid.shape + (4,):
            raise ValueError(f"Reference map has shape {self.phi.shape}")
        check_unit(self.phi)

    @classmethod
    def from_map(cls, field_map: Any) -> Self:
        return cls(field_map.values, field_map.grid)

    @classmethod
    def constant(cls, grid: Grid3, phi: Quat) -> Self:
        values = np.broadcast_to(np.asarray(phi, dtype=np.float64), grid.shape + (4,))
        return cls(np.array(values), grid)

    def apply(self, values: NDArray[np.float64]) -> NDArray[np.float64]:
        """Phi applied to a site array (..., n, n, n, 4); real parts are dropped."""
        return inner(values, self.phi)[..., None] * self.phi
