"""Exception hierarchy shared across the package."""


class ValidationError(ValueError):
    """Bad user input: malformed scenarios, invalid trits, inconsistent sizes."""


class NumericalError(RuntimeError):
    """A numerical invariant failed: norm drift, construction mismatch,
    quadrature non-convergence, or a rejected finite-difference estimate."""
