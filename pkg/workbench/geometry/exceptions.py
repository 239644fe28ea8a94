from liecore.exceptions import WorkbenchError


class TargetMismatch(WorkbenchError):
    """Field values do not lie on the declared target."""


class NotInStabilizer(WorkbenchError):
    """A gauge section leaves the stabilizer of the reference map."""
