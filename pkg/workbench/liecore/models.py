"""Quaternion value types.

Quaternions are float64 arrays whose last axis holds (w, x, y, z). A group
element of SU(2) is a unit quaternion; an su(2) element is an imaginary
quaternion (w == 0). Arrays of any leading shape are accepted everywhere,
so a whole lattice field is just an (n, n, n, 4) array.
"""

import numpy as np
from numpy.typing import ArrayLike, NDArray

Quat = NDArray[np.float64]
AlgebraVec = NDArray[np.float64]

ONE: Quat = np.array([1.0, 0.0, 0.0, 0.0])
I: Quat = np.array([0.0, 1.0, 0.0, 0.0])
J: Quat = np.array([0.0, 0.0, 1.0, 0.0])
K: Quat = np.array([0.0, 0.0, 0.0, 1.0])

# tr(xi eta) of the 2x2 matrix model equals TRACE_FORM_SCALE * <xi, eta>,
# and tr(q) equals QUAT_TRACE_SCALE * Re q.
TRACE_FORM_SCALE = -2.0
QUAT_TRACE_SCALE = 2.0


def quat(w: float, x: float, y: float, z: float) -> Quat:
    return np.array([w, x, y, z], dtype=np.float64)


def algebra(x: ArrayLike, y: ArrayLike, z: ArrayLike) -> AlgebraVec:
    """Imaginary quaternion(s) from (i, j, k) coefficients."""
    x, y, z = np.broadcast_arrays(
        np.asarray(x, dtype=np.float64),
        np.asarray(y, dtype=np.float64),
        np.asarray(z, dtype=np.float64),
    )
    return np.stack([np.zeros_like(x), x, y, z], axis=-1)


def from_vector(v: ArrayLike) -> AlgebraVec:
    """Embed R^3 vectors (last axis 3) as imaginary quaternions."""
    v = np.asarray(v, dtype=np.float64)
    return np.concatenate([np.zeros(v.shape[:-1] + (1,)), v], axis=-1)
