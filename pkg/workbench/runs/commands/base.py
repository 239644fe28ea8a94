"""Command base class for the ``fskyrme`` subcommands"""

import argparse
import sys
from pathlib import Path
from typing import TextIO

import config
from config import settings
from runs import api
from runs.exceptions import CommandError
from runs.parser import load_config
from runs.schemas import RunConfig


class OutputWrapper:
    """Line-oriented writer around a text stream."""

    def __init__(self, stream: TextIO, ending: str = "\n"):
        self._stream = stream
        self.ending = ending

    def write(self, msg: str = "") -> None:
        if self.ending and not msg.endswith(self.ending):
            msg += self.ending
        self._stream.write(msg)

    def flush(self) -> None:
        self._stream.flush()


class BaseCommand:
    help = ""

    def __init__(self, stdout: TextIO | None = None, stderr: TextIO | None = None):
        self.stdout = OutputWrapper(stdout or sys.stdout)
        self.stderr = OutputWrapper(stderr or sys.stderr)

    def create_parser(self, prog: str, subcommand: str) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog=f"{prog} {subcommand}", description=self.help or None
        )
        self.add_arguments(parser)
        return parser

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        pass

    def run_from_argv(self, prog: str, subcommand: str, argv: list[str]) -> int:
        options = vars(self.create_parser(prog, subcommand).parse_args(argv))
        return self.execute(**options)

    def execute(self, **options) -> int:
        config.setup(options.get("log_level"))
        return self.handle(**options) or 0

    def handle(self, **options) -> int | None:
        raise NotImplementedError("subclasses of BaseCommand must provide handle()")


class RunCommand(BaseCommand):
    """Subcommand driven by a run configuration file."""

    name = ""

    def add_arguments(self, parser):
        parser.add_argument(
            "--config",
            required=True,
            type=Path,
            help="Run configuration file (key = value lines)",
        )
        parser.add_argument(
            "--out",
            type=Path,
            default=None,
            help="Output directory (default: outputs.dir from the config)",
        )
        parser.add_argument(
            "--threads",
            type=int,
            default=None,
            help="FFT worker count (default: FSKYRME_THREADS)",
        )
        parser.add_argument("--log-level", dest="log_level", default=None)

    def handle(self, **options):
        cfg = load_config(options["config"])
        out = options["out"] or cfg.outputs.dir
        workers = settings.THREADS if options["threads"] is None else options["threads"]
        if workers == 0:
            raise CommandError(
                "--threads must be nonzero (negative counts from the CPU total)"
            )
        status = api.run(cfg, self.name, out, workers)
        self.report(cfg, Path(out), status)
        return status

    def report(self, cfg: RunConfig, out: Path, status: int) -> None:
        verdict = "ok" if status == 0 else f"exit status {status}"
        self.stdout.write(f"{self.name}: {verdict}; outputs in {out}")
