"""Exception hierarchy shared by every workbench app."""


class WorkbenchError(Exception):
    """Base class for all fskyrme errors."""


class AntipodeSingular(WorkbenchError):
    """log_su2 evaluated at (or numerically at) the antipode -1."""


class InvalidBasePoint(WorkbenchError):
    """A reference value that must be a unit vector is not."""
