"""SU(2) as unit quaternions and su(2) as imaginary quaternions.

All functions accept batches (any leading shape, last axis 4) as well as
single quaternions, in (w, x, y, z) order.
"""

import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray

from config import settings

from .exceptions import AntipodeSingular, InvalidBasePoint
from .models import TRACE_FORM_SCALE, QUAT_TRACE_SCALE, AlgebraVec, Quat

logger = logging.getLogger(__name__)

_CONJ = np.array([1.0, -1.0, -1.0, -1.0])


def _as_quat(q: ArrayLike) -> Quat:
    q = np.asarray(q, dtype=np.float64)
    if q.shape[-1] != 4:
        raise ValueError(f"Expected last axis of length 4, got shape {q.shape}")
    return q


def quat_mul(a: ArrayLike, b: ArrayLike) -> Quat:
    """Hamilton product, broadcast over leading axes."""
    a = _as_quat(a)
    b = _as_quat(b)

    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]

    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def conj(q: ArrayLike) -> Quat:
    return _as_quat(q) * _CONJ


def norm(q: ArrayLike) -> NDArray[np.float64]:
    return np.linalg.norm(_as_quat(q), axis=-1)


def inv(q: ArrayLike) -> Quat:
    q = _as_quat(q)
    return conj(q) / np.sum(q * q, axis=-1, keepdims=True)


def normalize(q: ArrayLike) -> Quat:
    """Retract onto the unit sphere; a zero quaternion has no retraction."""
    q = _as_quat(q)
    n = norm(q)
    if np.any(n == 0.0):
        raise InvalidBasePoint("Cannot normalize a zero quaternion")
    return q / n[..., None]


def adjoint(q: ArrayLike, xi: ArrayLike) -> AlgebraVec:
    """Ad(q) xi = q xi q^-1 for unit q."""
    return quat_mul(quat_mul(q, xi), conj(q))


def inner(a: ArrayLike, b: ArrayLike) -> NDArray[np.float64]:
    """Euclidean inner product on R^4; restricts to <xi, eta> on Im H."""
    return np.sum(_as_quat(a) * _as_quat(b), axis=-1)


def trace_form(xi: ArrayLike, eta: ArrayLike) -> NDArray[np.float64]:
    """tr(xi eta) of the matrix model, i.e. -2 <xi, eta> on su(2)."""
    return TRACE_FORM_SCALE * inner(xi, eta)


def quat_trace(q: ArrayLike) -> NDArray[np.float64]:
    return QUAT_TRACE_SCALE * _as_quat(q)[..., 0]


def cross(a: ArrayLike, b: ArrayLike) -> AlgebraVec:
    """Cross product of vector parts, returned as an imaginary quaternion."""
    a = _as_quat(a)
    b = _as_quat(b)
    v = np.cross(a[..., 1:], b[..., 1:])
    return np.concatenate([np.zeros(v.shape[:-1] + (1,)), v], axis=-1)


def bracket(xi: ArrayLike, eta: ArrayLike) -> AlgebraVec:
    """[xi, eta] = xi eta - eta xi = 2 (xi x eta)."""
    return 2.0 * cross(xi, eta)


def imag(q: ArrayLike) -> AlgebraVec:
    """Drop the real part."""
    out = np.array(_as_quat(q), dtype=np.float64, copy=True)
    out[..., 0] = 0.0
    return out


def exp_su2(xi: ArrayLike) -> Quat:
    """exp(xi) = cos|xi| + sin|xi| xi/|xi|."""
    xi = _as_quat(xi)
    theta = np.linalg.norm(xi[..., 1:], axis=-1)
    # np.sinc(x) = sin(pi x)/(pi x)
    scale = np.sinc(theta / np.pi)
    out = xi * scale[..., None]
    out[..., 0] = np.cos(theta)
    return out


def log_su2(q: ArrayLike) -> AlgebraVec:
    """Inverse of exp_su2 on |xi| < pi; raises at the antipode."""
    q = _as_quat(q)
    w = q[..., 0]
    vnorm = np.linalg.norm(q[..., 1:], axis=-1)
    at_antipode = (vnorm <= settings.ANTIPODE_LOG_TOL) & (w < 0.0)
    if np.any(at_antipode):
        raise AntipodeSingular(
            f"log_su2 undefined at -1 ({int(np.count_nonzero(at_antipode))} site(s))"
        )
    theta = np.arctan2(vnorm, w)
    with np.errstate(invalid="ignore", divide="ignore"):
        scale = np.where(vnorm > 0.0, theta / vnorm, 1.0)
    out = q * scale[..., None]
    out[..., 0] = 0.0
    return out


def check_unit(phi: ArrayLike, tol: float = settings.MEMBERSHIP_TOL) -> AlgebraVec:
    """Validate a unit imaginary base point (or batch of them)."""
    phi = _as_quat(phi)
    deviation = np.abs(norm(phi) - 1.0)
    if np.any(deviation > tol) or np.any(np.abs(phi[..., 0]) > tol):
        raise InvalidBasePoint(
            f"Base point must be a unit imaginary quaternion "
            f"(max norm deviation {float(np.max(deviation)):.3e})"
        )
    return phi


def proj_isotropy(xi: ArrayLike, phi: ArrayLike) -> tuple[AlgebraVec, AlgebraVec]:
    """Split xi into the isotropy line h_phi = R phi and its complement.

    par = <xi, phi> phi and perp = xi - par, which equals (1/2) phi [xi, phi]
    for unit imaginary phi. par + perp gives back xi up to rounding, within
    ALGEBRAIC_TOL times |xi|.
    """
    phi = check_unit(phi)
    xi = imag(xi)
    par = inner(xi, phi)[..., None] * phi
    perp = xi - par
    return par, perp


def stabilizer_element(theta: ArrayLike, phi: ArrayLike) -> Quat:
    """cos(theta) + sin(theta) phi, the generic element of H_phi."""
    phi = check_unit(phi)
    theta = np.asarray(theta, dtype=np.float64)
    out = np.sin(theta)[..., None] * phi
    out[..., 0] = np.cos(theta)
    return out
