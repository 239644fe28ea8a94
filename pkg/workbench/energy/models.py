from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray


@dataclass(frozen=True, eq=False)
class EnergyReport:
    """Energy terms, their sum and the pointwise density.

    density is the sum of the per-term densities in ``term_densities`` and
    integrates (h^3 times the site sum) to ``total``.
    """

    dirichlet: float
    skyrme: float
    total: float
    density: NDArray[np.float64]
    yang_mills: float | None = None
    term_densities: dict[str, NDArray[np.float64]] = field(default_factory=dict)

    def as_row(self) -> dict[str, float]:
        row = {
            "E_dirichlet": self.dirichlet,
            "E_skyrme": self.skyrme,
            "E_total": self.total,
        }
        if self.yang_mills is not None:
            row["E_yang_mills"] = self.yang_mills
        return row
