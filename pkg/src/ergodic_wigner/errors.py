"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A process or ensemble parameter is outside its admissible range."""


class DomainError(ValueError):
    """An argument is outside the domain of the operation."""


class ResourceError(RuntimeError):
    """An enumeration would exceed its configured budget."""


class InputError(ValueError):
    """Input data is malformed (e.g. non-finite matrix entries)."""


class NumericalError(ArithmeticError):
    """A numerical routine failed to converge."""


class UnsupportedOracleError(NotImplementedError):
    """The exact Gaussian oracle was asked about a non-Gaussian process."""
