"""Recompute the invariant normalizations from the degree-one hedgehog.

The constants frozen in settings are the continuum values; on a finite grid
the recomputed ones approach them as n grows.
"""

import logging

import numpy as np

from config import settings
from geometry.fields import hedgehog, hopf_projection
from lattice.models import Grid3

from .invariants import degree_su2, hopf_invariant

logger = logging.getLogger(__name__)


def calibrate_constants(n: int, box_length: float = 8.0) -> tuple[float, float]:
    """(c_G, hopf_normalization) that make the unit hedgehog and its Hopf
    projection evaluate to exactly +1 on an n^3 grid."""
    grid = Grid3(n=n, box_length=box_length)
    u = hedgehog(grid, k=1)
    degree = degree_su2(u)
    hopf = hopf_invariant(hopf_projection(u))

    c_g = settings.CARTAN_NORMALIZATION / degree
    hopf_norm = settings.HOPF_NORMALIZATION / hopf
    logger.info(
        "Calibration at n=%d: c_G=%.6e (frozen %.6e), hopf=%.6e (frozen %.6e)",
        n,
        c_g,
        settings.CARTAN_NORMALIZATION,
        hopf_norm,
        settings.HOPF_NORMALIZATION,
    )
    if not (np.isfinite(c_g) and np.isfinite(hopf_norm)):
        raise ValueError(f"Calibration failed at n={n}: degree={degree}, hopf={hopf}")
    return c_g, hopf_norm
