"""Smooth analytic test fields.

An AnalyticField is a bank of random Fourier series drawn once from a
generator. It can then be sampled on any periodic grid, which is what
refinement studies need: the same continuum field at n = 16, 32, 48.
"""

from dataclasses import dataclass
from math import comb

import numpy as np
from numpy.typing import NDArray

from geometry.models import FieldMap, TargetSpace
from lattice.models import GForm, Grid3, ProjectorField
from liecore.models import I
from liecore.quaternions import adjoint, exp_su2

SLOT_WIDTH = 16
SLOTS = 16


@dataclass(frozen=True, eq=False)
class AnalyticField:
    """Random trigonometric series sum_m c_m sin(2 pi k_m.x / L + phase_m).

    Wavevectors have entries in {-1, 0, 1}, so every series is periodic on
    the box whatever its side length. Each sampling method takes a ``slot``;
    different slots read independent series.
    """

    wavevectors: NDArray[np.int64]
    phases: NDArray[np.float64]
    coefficients: NDArray[np.float64]
    amplitude: float

    @classmethod
    def draw(
        cls, rng: np.random.Generator, amplitude: float = 0.6, modes: int = 3
    ) -> "AnalyticField":
        channels = SLOT_WIDTH * SLOTS
        k = rng.integers(-1, 2, size=(channels, modes, 3))
        # a zero wavevector only adds a constant; replace it by e_0
        zero = np.all(k == 0, axis=-1)
        k[zero] = (1, 0, 0)
        phases = rng.uniform(0.0, 2.0 * np.pi, size=(channels, modes))
        coefficients = rng.normal(size=(channels, modes)) / np.sqrt(modes)
        return cls(k, phases, coefficients, amplitude)

    def _channel(self, grid: Grid3, channel: int) -> NDArray[np.float64]:
        x = grid.coords()
        scale = 2.0 * np.pi / grid.box_length
        out = np.zeros(grid.shape)
        for k, phase, c in zip(
            self.wavevectors[channel], self.phases[channel], self.coefficients[channel]
        ):
            arg = scale * (k[0] * x[0] + k[1] * x[1] + k[2] * x[2]) + phase
            out += c * np.sin(arg)
        return self.amplitude * out

    def _base(self, slot: int) -> int:
        if not 0 <= slot < SLOTS:
            raise ValueError(f"slot must be in 0..{SLOTS - 1}, got {slot}")
        return slot * SLOT_WIDTH

    def scalar(self, grid: Grid3, slot: int = 0) -> NDArray[np.float64]:
        return self._channel(grid, self._base(slot))

    def theta(self, grid: Grid3, slot: int = 0) -> NDArray[np.float64]:
        """Rotation angle field for stabilizer sections."""
        return self.scalar(grid, slot)

    def algebra(self, grid: Grid3, slot: int = 0) -> NDArray[np.float64]:
        """su(2)-valued site array, shape (n, n, n, 4)."""
        base = self._base(slot)
        out = np.zeros(grid.shape + (4,))
        for c in range(3):
            out[..., c + 1] = self._channel(grid, base + c)
        return out

    def form(self, grid: Grid3, degree: int, slot: int = 0) -> GForm:
        """su(2)-valued k-form with independent smooth components."""
        base = self._base(slot)
        comps = np.zeros((comb(3, degree),) + grid.shape + (4,))
        for p in range(comb(3, degree)):
            for c in range(3):
                comps[p, ..., c + 1] = self._channel(grid, base + 3 * p + c)
        return GForm(degree, comps, grid)

    def one_form(self, grid: Grid3, slot: int = 0) -> GForm:
        return self.form(grid, 1, slot)

    def su2(self, grid: Grid3, slot: int = 0) -> FieldMap:
        """exp of a smooth algebra field: a smooth, degree-zero SU(2) map."""
        values = exp_su2(self.algebra(grid, slot))
        return FieldMap.from_values(grid, TargetSpace.SU2, values)

    def s2(self, grid: Grid3, slot: int = 0) -> FieldMap:
        """Ad(u) i for a smooth u, so all fluxes and the Hopf number vanish."""
        u = self.su2(grid, slot)
        return FieldMap.from_values(grid, TargetSpace.S2, adjoint(u.values, I))

    def h_valued(self, grid: Grid3, projector: ProjectorField, slot: int = 0) -> GForm:
        """1-form b_a = s_a(x) phi(x) with values in the isotropy algebra."""
        base = self._base(slot)
        comps = np.stack(
            [self._channel(grid, base + a)[..., None] * projector.phi for a in range(3)]
        )
        return GForm(1, comps, grid)
