"""Test the run entry points behind the subcommands"""

import json

import numpy as np
import pytest

from runs import api
from runs.exceptions import CommandError
from runs.initializers import make_initializer
from runs.ledger import read_energy_csv
from runs.parser import load_config, parse_config
from runs.snapshots import read_snapshot
from topology.models import InvariantReport, Rounded


def artifacts(out):
    return sorted(path.name for path in out.iterdir())


class TestMinimize:
    """Test descent runs and their artifacts"""

    def test_constant_map(self, fixtures_dir, tmp_path):
        cfg = load_config(fixtures_dir / "constant_s2.conf")
        assert api.run(cfg, "minimize", tmp_path) == api.EXIT_OK
        rows = read_energy_csv(tmp_path / "energy.csv")
        assert len(rows) == 1
        assert rows[0]["iter"] == "0"
        assert rows[0]["E_total"] == "0"
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["trace"]["termination"] == "grad_tol"
        assert report["trace"]["iterations"] == 0
        assert report["energy"]["total"] == 0.0

    def test_artifacts(self, small_run, tmp_path):
        cfg = small_run.model_copy(
            update={
                "outputs": small_run.outputs.model_copy(
                    update={"snapshot_every": 2, "emit_vtk": True}
                )
            }
        )
        assert api.run_minimize(cfg, tmp_path) == api.EXIT_OK
        assert artifacts(tmp_path) == [
            "energy.csv",
            "energy_density.vtk",
            "final.fsk",
            "report.json",
            "snapshot_000002.fsk",
            "snapshot_000004.fsk",
        ]
        final = read_snapshot(tmp_path / "final.fsk")
        assert final.iteration == 4
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["trace"]["monotone"] is True
        assert report["energy"]["total"] == pytest.approx(final.energy)

    def test_reproducible_ledger(self, small_run, tmp_path):
        api.run_minimize(small_run, tmp_path / "a")
        api.run_minimize(small_run, tmp_path / "b")
        first = (tmp_path / "a" / "energy.csv").read_text().splitlines()[1:]
        second = (tmp_path / "b" / "energy.csv").read_text().splitlines()[1:]
        assert first == second
        assert len(first) == 1 + 5

    def test_halted_run_keeps_last_safe_field(self, small_run, tmp_path, monkeypatch):
        calls = []

        def jumping(psi, method=None, workers=None):
            calls.append(psi)
            return InvariantReport(hopf=Rounded.of(0.0 if len(calls) == 1 else 1.0))

        monkeypatch.setattr(api, "invariant_report", jumping)
        cfg = small_run.model_copy(
            update={
                "flow": small_run.flow.model_copy(update={"invariant_check_every": 1})
            }
        )
        assert api.run_minimize(cfg, tmp_path) == api.EXIT_HALTED
        final = read_snapshot(tmp_path / "final.fsk")
        np.testing.assert_array_equal(
            final.field.values, make_initializer(small_run).values
        )
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["trace"]["termination"] == "sector_jump"


class TestInvariants:
    """Test invariant reports"""

    def test_torus_wrap(self, fixtures_dir, tmp_path):
        cfg = load_config(fixtures_dir / "torus_wrap.conf")
        assert api.run(cfg, "invariants", tmp_path) == api.EXIT_OK
        report = json.loads((tmp_path / "report.json").read_text())
        assert [f["rounded"] for f in report["invariants"]["fluxes"]] == [0, 0, 1]
        assert report["invariants"]["hopf"] is None
        assert report["trace"] is None

    def test_constant_su2(self, tmp_path):
        cfg = parse_config("grid.n = 8\ntarget = su2\n")
        assert api.run_invariants(cfg, tmp_path) == api.EXIT_OK
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["invariants"]["degree"]["raw"] == 0.0


class TestIdentitiesAndConvergence:
    """Test the identity table and convergence study"""

    def test_identities(self, tmp_path):
        cfg = parse_config(
            "grid.n = 8\ntarget = s2\nidentities.sizes = 16 32\n"
            "identities.samples = 2\n"
        )
        status = api.run_identities(cfg, tmp_path)
        table = (tmp_path / "identities.txt").read_text()
        assert "flatness" in table
        assert "wedge_square" in table
        assert (status == api.EXIT_OK) == ("FAIL" not in table)

    def test_convergence(self, tmp_path):
        cfg = parse_config(
            "grid.n = 8\ngrid.box_length = 6.0\ntarget = s2\n"
            "initializer = torus_wrap\nconvergence.sizes = 8 12\n"
        )
        assert api.run_convergence(cfg, tmp_path) == api.EXIT_OK
        lines = (tmp_path / "convergence.txt").read_text().splitlines()
        assert lines[0].startswith("n")
        assert [line.split()[0] for line in lines[1:]] == ["8", "12"]


class TestRun:
    """Test subcommand dispatch"""

    def test_unknown_subcommand(self, small_run, tmp_path):
        with pytest.raises(CommandError):
            api.run(small_run, "relax", tmp_path)

    def test_unwritable_output(self, small_run, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        with pytest.raises(CommandError, match="output directory"):
            api.run(small_run, "invariants", blocker / "out")
