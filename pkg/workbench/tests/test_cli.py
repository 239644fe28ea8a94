"""End-to-end checks of the fskyrme command line"""

import json

import pytest

from runs import api
from runs.cli import main
from topology.models import InvariantReport, Rounded


class TestMain:
    """Test dispatch, exit statuses and error reporting"""

    def test_usage(self, capsys):
        assert main([]) == 1
        assert "usage: fskyrme" in capsys.readouterr().out

    def test_help(self, capsys):
        assert main(["--help"]) == 0
        assert "minimize" in capsys.readouterr().out

    def test_unknown_subcommand(self, capsys):
        assert main(["relax", "--config", "x.conf"]) == 1
        assert "Unknown subcommand 'relax'" in capsys.readouterr().err

    def test_minimize(self, fixtures_dir, tmp_path):
        config = str(fixtures_dir / "constant_s2.conf")
        assert main(["minimize", "--config", config, "--out", str(tmp_path)]) == 0
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["trace"]["termination"] == "grad_tol"

    def test_invariants(self, fixtures_dir, tmp_path, capsys):
        config = str(fixtures_dir / "torus_wrap.conf")
        assert main(["invariants", "--config", config, "--out", str(tmp_path)]) == 0
        assert "invariants: ok" in capsys.readouterr().out

    def test_invalid_config_names_line(self, tmp_path, capsys):
        path = tmp_path / "bad.conf"
        path.write_text("grid.n = 16\ntarget = s2\ngrid.bogus = 1\n")
        assert main(["invariants", "--config", str(path)]) == 1
        err = capsys.readouterr().err
        assert "invalid configuration" in err
        assert "line 3" in err

    def test_incompatible_initializer(self, tmp_path, capsys):
        path = tmp_path / "bad.conf"
        path.write_text("grid.n = 16\ntarget = s2\ninitializer = hedgehog\n")
        assert main(["minimize", "--config", str(path)]) == 1
        assert "line 3" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path, capsys):
        path = tmp_path / "absent.conf"
        assert main(["invariants", "--config", str(path)]) == 1
        assert str(path) in capsys.readouterr().err

    def test_halted_descent_exit_status(
        self, fixtures_dir, tmp_path, monkeypatch, capsys
    ):
        calls = []

        def jumping(psi, method=None, workers=None):
            calls.append(psi)
            return InvariantReport(hopf=Rounded.of(0.0 if len(calls) == 1 else 1.0))

        monkeypatch.setattr(api, "invariant_report", jumping)
        path = tmp_path / "run.conf"
        path.write_text(
            (fixtures_dir / "random_smooth.conf").read_text()
            + "flow.invariant_check_every = 1\n"
        )
        status = main(["minimize", "--config", str(path), "--out", str(tmp_path)])
        assert status == 2
        assert "halted" in capsys.readouterr().err

    def test_threads_flag_reaches_run(self, fixtures_dir, tmp_path, monkeypatch):
        seen = []

        def recording(cfg, subcommand, out, workers):
            seen.append(workers)
            return 0

        monkeypatch.setattr(api, "run", recording)
        config = str(fixtures_dir / "constant_s2.conf")
        args = ["invariants", "--config", config, "--out", str(tmp_path)]
        assert main(args + ["--threads", "-1"]) == 0
        assert seen == [-1]

    def test_zero_threads_refused(self, fixtures_dir, tmp_path, monkeypatch, capsys):
        monkeypatch.setattr(api, "run", lambda *args: 0)
        config = str(fixtures_dir / "constant_s2.conf")
        args = ["invariants", "--config", config, "--out", str(tmp_path)]
        assert main(args + ["--threads", "0"]) == 1
        assert "--threads must be nonzero" in capsys.readouterr().err

    @pytest.mark.slow
    def test_identities(self, fixtures_dir, tmp_path):
        config = str(fixtures_dir / "identities.conf")
        status = main(["identities", "--config", config, "--out", str(tmp_path)])
        assert status == 0
        assert (tmp_path / "identities.txt").exists()
