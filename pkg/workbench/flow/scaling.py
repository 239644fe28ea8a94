"""Energy against charge: E_min / |Q|^(3/4) across runs in different sectors"""

from collections.abc import Sequence
from dataclasses import dataclass

VK_EXPONENT = 0.75


@dataclass(frozen=True)
class ScalingEntry:
    charge: int
    energy: float
    normalized: float


@dataclass(frozen=True)
class ScalingTable:
    entries: tuple[ScalingEntry, ...]

    @property
    def spread(self) -> float:
        """max / min of the normalized energies."""
        values = [entry.normalized for entry in self.entries]
        return max(values) / min(values)


def vk_scaling_probe(results: Sequence[tuple[int, float]]) -> ScalingTable:
    """Normalize each (Q, E_min) pair by |Q|^(3/4)."""
    if not results:
        raise ValueError("Scaling probe needs at least one (charge, energy) pair")
    entries = []
    for charge, energy in results:
        if abs(charge) < 1:
            raise ValueError(f"Charge must satisfy |Q| >= 1, got {charge}")
        if energy <= 0.0:
            raise ValueError(f"Minimal energy must be positive, got {energy}")
        normalized = energy / abs(charge) ** VK_EXPONENT
        entries.append(ScalingEntry(int(charge), float(energy), float(normalized)))
    return ScalingTable(tuple(entries))
