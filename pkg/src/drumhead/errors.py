"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """Raised for out-of-range model, grid or scan parameters."""


class SolverError(RuntimeError):
    """Raised when the eigensolver fails or returns unusable eigenvalues."""
