"""FSKYRME1 field snapshots.

A snapshot is a short text header, one ``key=value`` per line, closed by an
``end_header`` line, followed by the payload: little-endian float64 values,
(w, x, y, z) per site for SU(2) and (x, y, z) for S^2, with the third site
axis varying slowest and the first fastest.
"""

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from geometry.models import FieldMap, TargetSpace
from lattice.models import BoundaryMode, Grid3

from .exceptions import SnapshotFormatError

logger = logging.getLogger(__name__)

MAGIC = "FSKYRME1"
END_HEADER = "end_header"
PAYLOAD_DTYPE = np.dtype("<f8")


@dataclass(frozen=True, eq=False)
class Snapshot:
    field: FieldMap
    iteration: int
    energy: float


def _header(field: FieldMap, iteration: int, energy: float) -> bytes:
    lines = [
        MAGIC,
        f"target={field.target}",
        f"n={field.grid.n}",
        f"box_length={field.grid.box_length:.17g}",
        f"boundary_mode={field.grid.boundary_mode}",
        f"iteration={iteration}",
        f"energy={energy:.17g}",
        END_HEADER,
    ]
    return ("\n".join(lines) + "\n").encode("ascii")


def encode_snapshot(field: FieldMap, iteration: int = 0, energy: float = 0.0) -> bytes:
    payload = np.ascontiguousarray(
        field.payload().transpose(2, 1, 0, 3), dtype=PAYLOAD_DTYPE
    )
    return _header(field, iteration, energy) + payload.tobytes()


def write_snapshot(
    path: Path, field: FieldMap, iteration: int = 0, energy: float = 0.0
) -> Path:
    path = Path(path)
    path.write_bytes(encode_snapshot(field, iteration, energy))
    logger.debug("Wrote snapshot %s (iteration %d)", path, iteration)
    return path


def _split_header(data: bytes) -> tuple[dict[str, str], bytes]:
    marker = ("\n" + END_HEADER + "\n").encode("ascii")
    end = data.find(marker)
    if end < 0:
        raise SnapshotFormatError("Snapshot header is not terminated by end_header")
    lines = data[:end].decode("ascii").split("\n")
    if lines[0] != MAGIC:
        raise SnapshotFormatError(f"Bad magic {lines[0]!r}, expected {MAGIC}")
    header = {}
    for line in lines[1:]:
        key, sep, value = line.partition("=")
        if not sep:
            raise SnapshotFormatError(f"Malformed header line {line!r}")
        header[key] = value
    return header, data[end + len(marker) :]


def decode_snapshot(data: bytes) -> Snapshot:
    header, payload = _split_header(data)
    try:
        target = TargetSpace(header["target"])
        grid = Grid3(
            n=int(header["n"]),
            box_length=float(header["box_length"]),
            boundary_mode=BoundaryMode(header["boundary_mode"]),
        )
        iteration = int(header["iteration"])
        energy = float(header["energy"])
    except (KeyError, ValueError) as exc:
        raise SnapshotFormatError(f"Invalid snapshot header: {exc}") from exc

    components = target.payload_components
    expected = grid.n**3 * components * PAYLOAD_DTYPE.itemsize
    if len(payload) != expected:
        raise SnapshotFormatError(
            f"Payload has {len(payload)} bytes, expected {expected}"
        )
    stored = np.frombuffer(payload, dtype=PAYLOAD_DTYPE).reshape(
        (grid.n, grid.n, grid.n, components)
    )
    values = np.zeros(grid.shape + (4,))
    values[..., 4 - components :] = stored.transpose(2, 1, 0, 3)
    return Snapshot(FieldMap(grid, target, values), iteration, energy)


def read_snapshot(path: Path) -> Snapshot:
    path = Path(path)
    snapshot = decode_snapshot(path.read_bytes())
    logger.debug("Read snapshot %s", path)
    return snapshot
