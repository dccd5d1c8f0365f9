"""Exception types shared across the package."""


class NumericalError(RuntimeError):
    """A numerical invariant was violated (unitarity loss, eigensolver
    failure, norm drift).  Distinct from ValueError so callers can map
    configuration mistakes and numerical breakdowns to different exits."""
