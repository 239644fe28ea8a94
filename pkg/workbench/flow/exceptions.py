from liecore.exceptions import WorkbenchError


class FlowHalted(WorkbenchError):
    """A descent run stopped early. Carries the trace so far and the last
    field that passed every check."""

    def __init__(self, message, trace, field):
        self.trace = trace
        self.field = field
        super().__init__(message)


class SectorJump(FlowHalted):
    """A monitored invariant moved by more than the jump threshold."""

    def __init__(self, trace, field, before, after, iteration):
        self.before = before
        self.after = after
        self.iteration = iteration
        super().__init__(
            f"Topological sector changed at iteration {iteration}: "
            f"{before} -> {after}",
            trace,
            field,
        )


class StepUnderflow(FlowHalted):
    """Backtracking shrank the step below the floor without an energy decrease."""

    def __init__(self, trace, field, step, iteration):
        self.step = float(step)
        self.iteration = iteration
        super().__init__(
            f"Step {self.step:.3e} underflowed at iteration {iteration}",
            trace,
            field,
        )
