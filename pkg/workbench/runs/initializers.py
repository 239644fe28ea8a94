"""Initial fields built from the ``initializer`` section of a run config"""

import logging

import numpy as np

from geometry import fields
from geometry.models import FieldMap
from lattice.models import Grid3

from .schemas import InitializerKind, RunConfig

logger = logging.getLogger(__name__)


def make_grid(cfg: RunConfig) -> Grid3:
    return Grid3(
        n=cfg.grid.n,
        box_length=cfg.grid.box_length,
        boundary_mode=cfg.grid.boundary_mode,
    )


def make_initializer(cfg: RunConfig, grid: Grid3 | None = None) -> FieldMap:
    grid = grid or make_grid(cfg)
    init = cfg.initializer
    logger.info(
        "Initializing %s field on a %d^3 grid with %s",
        cfg.target,
        grid.n,
        init.kind,
    )
    match init.kind:
        case InitializerKind.CONSTANT:
            base = None if init.base is None else np.asarray(init.base)
            return fields.constant(grid, cfg.target, base)
        case InitializerKind.HEDGEHOG:
            return fields.hedgehog(grid, init.k, init.radius, init.center)
        case InitializerKind.HOPF_PROJECTION:
            u = fields.hedgehog(grid, init.k, init.radius, init.center)
            return fields.hopf_projection(u)
        case InitializerKind.TORUS_WRAP:
            return fields.torus_wrap(grid, init.axes, init.winding)
        case InitializerKind.RANDOM_SMOOTH:
            return fields.random_smooth(
                grid,
                cfg.target,
                seed=cfg.seed,
                correlation_length=init.correlation_length,
                amplitude=init.amplitude,
                base=init.base,
            )
    raise ValueError(f"Unknown initializer {init.kind!r}")
