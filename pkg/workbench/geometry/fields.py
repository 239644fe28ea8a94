"""Initial conditions: hedgehogs, their Hopf projections, torus wraps and
band-limited random fields."""

import logging
from collections.abc import Sequence

import numpy as np
import scipy.fft
from numpy.typing import NDArray

from lattice.models import BoundaryMode, Grid3
from liecore.models import I, Quat
from liecore.quaternions import adjoint

from .models import FieldMap, TargetSpace

logger = logging.getLogger(__name__)

TORUS_CORE_FRACTION = 0.4


def default_radius(grid: Grid3) -> float:
    return 0.5 * grid.box_length - grid.h


def hedgehog(
    grid: Grid3,
    k: int = 1,
    radius: float | None = None,
    center: Sequence[float] = (0.0, 0.0, 0.0),
) -> FieldMap:
    """u = cos f(r) + sin f(r) x.(i, j, k) with f(r) = k pi max(0, 1 - r/R).

    u is exactly 1 for r >= R and (-1)^k at the centre.
    """
    radius = default_radius(grid) if radius is None else radius
    if radius <= 0.0:
        raise ValueError(f"Hedgehog radius must be positive, got {radius}")
    rel = np.stack([x - c for x, c in zip(grid.coords(), center)], axis=-1)
    r = np.linalg.norm(rel, axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        unit = np.where(r[..., None] > 0.0, rel / r[..., None], 0.0)
    profile = k * np.pi * np.maximum(0.0, 1.0 - r / radius)
    values = np.empty(grid.shape + (4,))
    values[..., 0] = np.cos(profile)
    values[..., 1:] = np.sin(profile)[..., None] * unit
    values[profile == 0.0] = (1.0, 0.0, 0.0, 0.0)
    return FieldMap.from_values(grid, TargetSpace.SU2, values)


def hopf_projection(u: FieldMap) -> FieldMap:
    """psi = u i u^-1."""
    if u.target is not TargetSpace.SU2:
        raise ValueError("Hopf projection needs an SU(2)-valued map")
    return FieldMap.from_values(u.grid, TargetSpace.S2, adjoint(u.values, I))


def torus_wrap(
    grid: Grid3, axes: tuple[int, int] = (0, 1), winding: int = 1
) -> FieldMap:
    """Degree-``winding`` wrap of the coordinate 2-torus spanned by ``axes``.

    Constant along the third axis and equal to -k outside a disc of radius
    0.4 L, so the map is periodic. The flux lands on the complementary
    component p with +winding whatever the order of ``axes``.
    """
    if not grid.periodic:
        raise ValueError("Torus wraps need a periodic grid")
    a, b = sorted(axes)
    if a == b or not {a, b} <= {0, 1, 2}:
        raise ValueError(f"Invalid axis pair {axes}")
    p = 3 - a - b
    first, second = (p + 1) % 3, (p + 2) % 3

    coords = grid.coords()
    xa, xb = coords[first], coords[second]
    core = TORUS_CORE_FRACTION * grid.box_length
    theta = np.pi * np.minimum(1.0, np.hypot(xa, xb) / core)
    phi = winding * np.arctan2(xb, xa)

    values = np.zeros(grid.shape + (4,))
    values[..., 1] = np.sin(theta) * np.cos(phi)
    values[..., 2] = np.sin(theta) * np.sin(phi)
    values[..., 3] = np.cos(theta)
    return FieldMap.from_values(grid, TargetSpace.S2, values)


def _smooth_noise(
    grid: Grid3, rng: np.random.Generator, correlation_length: float
) -> NDArray[np.float64]:
    noise = rng.standard_normal(grid.shape + (4,))
    k = 2.0 * np.pi * np.fft.fftfreq(grid.n, d=grid.h)
    kx, ky, kz = np.meshgrid(k, k, k, indexing="ij")
    kernel = np.exp(-0.5 * correlation_length**2 * (kx**2 + ky**2 + kz**2))
    spectrum = scipy.fft.fftn(noise, axes=(0, 1, 2)) * kernel[..., None]
    smooth = scipy.fft.ifftn(spectrum, axes=(0, 1, 2)).real
    smooth -= smooth.mean(axis=(0, 1, 2))
    rms = float(np.sqrt(np.mean(np.sum(smooth**2, axis=-1))))
    return smooth / rms if rms > 0.0 else smooth


def _taper(grid: Grid3) -> NDArray[np.float64]:
    window = np.sin(np.pi * np.arange(grid.n) / (grid.n - 1))
    window[[0, -1]] = 0.0
    return window[:, None, None] * window[None, :, None] * window[None, None, :]


def random_smooth(
    grid: Grid3,
    target: TargetSpace,
    seed: int,
    correlation_length: float | None = None,
    amplitude: float = 1.0,
    base: Quat | None = None,
) -> FieldMap:
    """normalize(base + amplitude * noise) for Gaussian-filtered unit-RMS noise.

    On FIXED grids the noise is tapered to zero on the faces, which then
    carry the normalized base value.
    """
    correlation_length = (
        0.25 * grid.box_length if correlation_length is None else correlation_length
    )
    base = target.base_point if base is None else np.asarray(base, dtype=np.float64)
    rng = np.random.default_rng(seed)
    noise = _smooth_noise(grid, rng, correlation_length)
    if grid.boundary_mode == BoundaryMode.FIXED:
        noise *= _taper(grid)[..., None]
    values = base + amplitude * noise
    logger.debug(
        "random_smooth: seed=%d correlation_length=%.3g amplitude=%.3g",
        seed,
        correlation_length,
        amplitude,
    )
    return FieldMap.from_values(grid, target, values)


def constant(grid: Grid3, target: TargetSpace, value: Quat | None = None) -> FieldMap:
    return FieldMap.constant(grid, target, value)


def reflected(field: FieldMap) -> FieldMap:
    """field composed with the orientation-reversing grid reflection."""
    return field.with_values(field.grid.reflect(field.values))
