"""Test the energy ledger and VTK density files"""

from datetime import datetime, timezone

import numpy as np
import pytest

from flow.models import FlowTrace, TraceRow
from lattice.models import Grid3
from runs.ledger import FIELDNAMES, read_energy_csv, write_energy_csv
from runs.vtk import density_vtk, write_density_vtk
from topology.models import InvariantReport, Rounded


@pytest.fixture
def trace():
    return FlowTrace(
        rows=[
            TraceRow(0, 1.5, 0.5, 2.0, 0.25, InvariantReport(hopf=Rounded.of(0.9))),
            TraceRow(1, 1.0, 0.1, 1.1, 0.125),
        ],
        accepted=[1.1],
        iterations=1,
    )


class TestEnergyCsv:
    """Test energy.csv"""

    def test_columns_and_values(self, tmp_path, trace):
        path = write_energy_csv(tmp_path / "energy.csv", trace)
        rows = read_energy_csv(path)
        assert list(rows[0]) == FIELDNAMES
        assert rows[0] == {
            "iter": "0",
            "E_dirichlet": "1.5",
            "E_skyrme": "0.5",
            "E_total": "2",
            "grad_norm": "0.25",
            "hopf_or_degree": "0.90000000000000002",
        }
        assert rows[1]["hopf_or_degree"] == ""
        assert float(rows[1]["E_total"]) == 1.1

    def test_generated_comment(self, tmp_path, trace):
        stamp = datetime(2024, 1, 2, 3, 4, 5, tzinfo=timezone.utc)
        path = write_energy_csv(tmp_path / "energy.csv", trace, generated=stamp)
        first = path.read_text(encoding="utf-8").splitlines()[0]
        assert first == "# generated 2024-01-02T03:04:05+00:00"


class TestDensityVtk:
    """Test legacy VTK output"""

    def test_header(self):
        grid = Grid3(n=4, box_length=2.0)
        lines = density_vtk(grid, np.zeros(grid.shape), "energy").splitlines()
        assert lines[0] == "# vtk DataFile Version 3.0"
        assert "DATASET STRUCTURED_POINTS" in lines
        assert "DIMENSIONS 4 4 4" in lines
        assert "ORIGIN -1 -1 -1" in lines
        assert "SPACING 0.5 0.5 0.5" in lines
        assert "POINT_DATA 64" in lines
        assert "SCALARS energy double 1" in lines
        assert len(lines) == 10 + 64

    def test_first_axis_fastest(self, tmp_path):
        grid = Grid3(n=4, box_length=2.0)
        density = np.zeros(grid.shape)
        density[1, 0, 0] = 5.0
        density[0, 1, 0] = 7.0
        path = write_density_vtk(tmp_path / "d.vtk", grid, density)
        values = path.read_text(encoding="ascii").splitlines()[10:]
        assert values[1] == "5"
        assert values[4] == "7"
