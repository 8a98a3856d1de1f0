"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Invalid input: bad shapes, out-of-range parameters, malformed configs."""


class NumericalError(RuntimeError):
    """A computation diverged, failed to stabilize, or degenerated."""
