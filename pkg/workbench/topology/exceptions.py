from liecore.exceptions import WorkbenchError


class NonzeroPrimaryFlux(WorkbenchError):
    """The Hopf number is requested for a map with nonzero 2-cycle fluxes."""

    def __init__(self, fluxes):
        self.fluxes = tuple(float(f) for f in fluxes)
        super().__init__(
            "Primary fluxes must vanish for a secondary invariant, got "
            + ", ".join(f"{f:.4f}" for f in self.fluxes)
        )


class SpectralSolveFailure(WorkbenchError):
    """The flux density has a mean the periodic Poisson solve cannot absorb."""


class AntipodeHit(WorkbenchError):
    """The explicit Hopf lift meets the antipode of the base point.

    Raised either at a site within the angular cap of -i or, with ``jump``
    set, at a link where neighbouring lift values are discontinuous.
    """

    def __init__(self, site, angle, jump=None):
        self.site = tuple(int(s) for s in site)
        self.angle = float(angle)
        self.jump = None if jump is None else float(jump)
        if self.jump is None:
            message = f"Field comes within {self.angle:.2e} rad of -i at site "
        else:
            message = (
                f"Lift jumps by {self.jump:.3f} next to -i "
                f"({self.angle:.2e} rad) at site "
            )
        super().__init__(message + str(self.site))
