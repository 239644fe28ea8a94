"""Coulomb-gauge potential for a lattice 2-form by FFT inversion"""

import logging

import numpy as np
import scipy.fft
from numpy.typing import NDArray

from config import settings
from lattice.models import Grid3

from .exceptions import SpectralSolveFailure

logger = logging.getLogger(__name__)


def difference_symbols(grid: Grid3) -> list[NDArray[np.complex128]]:
    """Fourier symbols D_j = (exp(i k_j h) - 1) / h of the forward difference."""
    k = 2.0 * np.pi * np.fft.fftfreq(grid.n, d=grid.h)
    symbol = (np.exp(1j * k * grid.h) - 1.0) / grid.h
    shapes = [(-1, 1, 1), (1, -1, 1), (1, 1, -1)]
    return [symbol.reshape(s) for s in shapes]


def coulomb_potential(
    flux: NDArray[np.float64],
    grid: Grid3,
    workers: int | None = None,
    tol: float | None = settings.FLUX_TOL,
) -> NDArray[np.float64]:
    """Solve dA = B for A with zero discrete divergence.

    flux holds the three dual components B_p of a 2-form (shape (3, n, n, n)).
    The k = 0 coefficient is dropped; a mean flux larger than ``tol`` (in
    units of 4 pi / L^2) cannot be represented and is refused. Callers that
    already gated the mean pass ``tol=None``.
    """
    workers = settings.THREADS if workers is None else workers
    mean_flux = flux.mean(axis=(1, 2, 3)) * grid.box_length**2 / (4.0 * np.pi)
    logger.debug("coulomb_potential: dropped mean %s", np.round(mean_flux, 4))
    if tol is not None and np.any(np.abs(mean_flux) > tol):
        raise SpectralSolveFailure(
            f"Flux density has nonzero mean {np.round(mean_flux, 4).tolist()}"
        )

    b_hat = scipy.fft.fftn(flux, axes=(1, 2, 3), workers=workers)
    dx, dy, dz = difference_symbols(grid)
    dc = [np.conj(dx), np.conj(dy), np.conj(dz)]
    d_sq = np.abs(dx) ** 2 + np.abs(dy) ** 2 + np.abs(dz) ** 2
    d_sq[0, 0, 0] = 1.0

    # A = -(conj(D) x B) / |D|^2
    a_hat = -np.stack(
        [
            dc[1] * b_hat[2] - dc[2] * b_hat[1],
            dc[2] * b_hat[0] - dc[0] * b_hat[2],
            dc[0] * b_hat[1] - dc[1] * b_hat[0],
        ]
    ) / d_sq
    a_hat[:, 0, 0, 0] = 0.0

    potential = scipy.fft.ifftn(a_hat, axes=(1, 2, 3), workers=workers)
    imag_leak = float(np.max(np.abs(potential.imag)))
    logger.debug("coulomb_potential: imaginary leakage %.3e", imag_leak)
    return np.ascontiguousarray(potential.real)
