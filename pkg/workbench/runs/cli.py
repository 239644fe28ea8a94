"""``fskyrme <subcommand> --config <path> [--out <dir>] [--threads <k>]``"""

import importlib
import sys

from liecore.exceptions import WorkbenchError

from .api import SUBCOMMANDS
from .exceptions import CommandError, ConfigError

PROG = "fskyrme"


def usage() -> str:
    return (
        f"usage: {PROG} <subcommand> --config <path> [--out <dir>] [--threads <k>]\n"
        f"subcommands: {', '.join(SUBCOMMANDS)}"
    )


def load_command(name: str):
    if name not in SUBCOMMANDS:
        raise CommandError(f"Unknown subcommand {name!r}\n{usage()}")
    module = importlib.import_module(f"runs.commands.{name}")
    return module.Command()


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if not argv or argv[0] in ("-h", "--help"):
        print(usage())
        return 0 if argv else 1
    try:
        command = load_command(argv[0])
        return command.run_from_argv(PROG, argv[0], argv[1:])
    except ConfigError as exc:
        print(f"{PROG}: invalid configuration: {exc}", file=sys.stderr)
    except OSError as exc:
        path = exc.filename or ""
        print(f"{PROG}: {path}: {exc.strerror or exc}", file=sys.stderr)
    except (CommandError, WorkbenchError) as exc:
        print(f"{PROG}: {exc}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
