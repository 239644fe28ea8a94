from liecore.exceptions import WorkbenchError


class DegreeOverflow(WorkbenchError):
    """The requested operation would produce a form of degree above 3."""


class GridMismatch(WorkbenchError):
    """Two operands live on different grids."""


class NonFiniteForm(WorkbenchError):
    """A form contains NaN or Inf values."""
