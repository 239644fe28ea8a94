"""Test FSKYRME1 snapshot files"""

import numpy as np
import pytest

from geometry.fields import hedgehog, random_smooth
from geometry.models import TargetSpace
from lattice.models import BoundaryMode, Grid3
from runs.exceptions import SnapshotFormatError
from runs.snapshots import (
    END_HEADER,
    MAGIC,
    decode_snapshot,
    encode_snapshot,
    read_snapshot,
    write_snapshot,
)


@pytest.fixture
def s2_field():
    grid = Grid3(n=6, box_length=3.0)
    return random_smooth(grid, TargetSpace.S2, seed=1, amplitude=0.7)


class TestSnapshot:
    """Test writing and reading snapshots"""

    def test_bitwise_round_trip(self, tmp_path, s2_field):
        path = write_snapshot(tmp_path / "a.fsk", s2_field, 17, 1.0 / 3.0)
        snapshot = read_snapshot(path)
        assert snapshot.iteration == 17
        assert snapshot.energy == 1.0 / 3.0
        assert snapshot.field.grid == s2_field.grid
        assert snapshot.field.target is TargetSpace.S2
        np.testing.assert_array_equal(snapshot.field.values, s2_field.values)

    def test_su2_fixed_round_trip(self):
        grid = Grid3(n=6, box_length=4.0, boundary_mode=BoundaryMode.FIXED)
        u = hedgehog(grid)
        snapshot = decode_snapshot(encode_snapshot(u))
        assert snapshot.field.grid.boundary_mode is BoundaryMode.FIXED
        np.testing.assert_array_equal(snapshot.field.values, u.values)

    def test_layout(self, s2_field):
        data = encode_snapshot(s2_field, 2, 0.5)
        header, _, payload = data.partition(f"\n{END_HEADER}\n".encode())
        lines = header.decode("ascii").split("\n")
        assert lines[0] == MAGIC
        assert "target=s2" in lines
        assert "n=6" in lines
        assert "iteration=2" in lines
        assert len(payload) == 6**3 * 3 * 8
        stored = np.frombuffer(payload, dtype="<f8")
        # first site axis varies fastest
        np.testing.assert_array_equal(stored[:3], s2_field.values[0, 0, 0, 1:])
        np.testing.assert_array_equal(stored[3:6], s2_field.values[1, 0, 0, 1:])


class TestSnapshotErrors:
    """Test rejection of malformed files"""

    def test_bad_magic(self, s2_field):
        data = encode_snapshot(s2_field).replace(MAGIC.encode(), b"FSKYRME0", 1)
        with pytest.raises(SnapshotFormatError, match="magic"):
            decode_snapshot(data)

    def test_truncated_payload(self, s2_field):
        with pytest.raises(SnapshotFormatError, match="bytes"):
            decode_snapshot(encode_snapshot(s2_field)[:-8])

    def test_missing_end_header(self):
        with pytest.raises(SnapshotFormatError, match="end_header"):
            decode_snapshot(b"FSKYRME1\ntarget=s2\n")

    def test_bad_header_value(self, s2_field):
        data = encode_snapshot(s2_field).replace(b"target=s2", b"target=s3", 1)
        with pytest.raises(SnapshotFormatError, match="header"):
            decode_snapshot(data)

    def test_malformed_header_line(self, s2_field):
        data = encode_snapshot(s2_field).replace(b"n=6\n", b"n 6\n", 1)
        with pytest.raises(SnapshotFormatError, match="Malformed"):
            decode_snapshot(data)
