"""Legacy ASCII VTK output of scalar densities"""

import logging
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from lattice.models import Grid3

logger = logging.getLogger(__name__)


def density_vtk(grid: Grid3, density: NDArray[np.float64], name: str) -> str:
    """STRUCTURED_POINTS dataset with the first site axis varying fastest."""
    origin = -0.5 * grid.box_length
    lines = [
        "# vtk DataFile Version 3.0",
        name,
        "ASCII",
        "DATASET STRUCTURED_POINTS",
        f"DIMENSIONS {grid.n} {grid.n} {grid.n}",
        f"ORIGIN {origin:.17g} {origin:.17g} {origin:.17g}",
        f"SPACING {grid.h:.17g} {grid.h:.17g} {grid.h:.17g}",
        f"POINT_DATA {grid.n**3}",
        f"SCALARS {name} double 1",
        "LOOKUP_TABLE default",
    ]
    values = np.asarray(density, dtype=np.float64).transpose(2, 1, 0).ravel()
    lines.extend(f"{value:.17g}" for value in values)
    return "\n".join(lines) + "\n"


def write_density_vtk(
    path: Path, grid: Grid3, density: NDArray[np.float64], name: str = "energy"
) -> Path:
    path = Path(path)
    path.write_text(density_vtk(grid, density, name), encoding="ascii")
    logger.debug("Wrote %s density to %s", name, path)
    return path
