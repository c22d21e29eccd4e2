"""Exception hierarchy.

Every error raised deliberately by the package derives from
:class:`AlmostNorlundError`. Numeric failures derive from
:class:`NumericError`; the CLI maps them to exit status 3, while
:class:`ConfigError` maps to exit status 2.
"""


class AlmostNorlundError(Exception):
    """Base class for all package errors."""


class ConfigError(AlmostNorlundError, ValueError):
    """Malformed or inconsistent run configuration."""


class NumericError(AlmostNorlundError):
    """Base class for failures of a numerical operation."""


class ParameterError(NumericError, ValueError):
    """A numerical parameter lies outside its admissible range."""


class InvalidWeightError(NumericError, ValueError):
    """A weight sequence produced a negative or non-finite value."""


class DegenerateSequenceError(NumericError, ZeroDivisionError):
    """A zero sequence value appeared in a denominator."""


class ZeroNormalizerError(NumericError, ZeroDivisionError):
    """The convolution normalizer R_n vanished."""


class AliasingError(NumericError, ValueError):
    """The quadrature grid is too coarse for the requested truncation order."""


class TruncationOrderError(NumericError, IndexError):
    """A partial sum was requested beyond the stored expansion order."""


class PVDivergenceError(NumericError):
    """Principal-value integrals did not settle as the cutoff shrank."""


class SingularityError(NumericError, ZeroDivisionError):
    """A kernel was evaluated at its singular point."""


class InsufficientDataError(NumericError, ValueError):
    """Too few distinct points to fit a convergence slope."""
