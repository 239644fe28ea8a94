from liecore.exceptions import WorkbenchError


class ConfigError(WorkbenchError):
    """Invalid run configuration; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, key: str | None = None):
        self.line = line
        self.key = key
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class UnknownKey(ConfigError):
    pass


class TypeMismatch(ConfigError):
    pass


class InvalidValue(ConfigError):
    pass


class IncompatibleInitializer(ConfigError):
    pass


class SnapshotFormatError(WorkbenchError):
    """A snapshot file does not follow the FSKYRME1 layout."""


class CommandError(WorkbenchError):
    """A CLI command cannot complete; reported on stderr with exit status 1."""

    def __init__(self, message: str, returncode: int = 1):
        self.returncode = returncode
        super().__init__(message)
