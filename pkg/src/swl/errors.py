"""Exception types shared across the package.

Every failure mode that callers are expected to catch gets its own class so
the CLI can map error categories onto exit codes.
"""


class SwlError(Exception):
    """Base class for all package-specific errors."""


class NotHermitian(SwlError):
    """Embedded matrix deviates from its conjugate transpose beyond tolerance."""


class PairMismatch(SwlError):
    """Embedding eigenvalues fail to pair into Kramers doublets."""


class DomainError(SwlError):
    """Argument outside the supported domain of a special function or solver."""


class SizeError(SwlError):
    """Requested size outside the supported range."""


class RangeError(SwlError):
    """Parameter outside the numerically validated range."""


class DegenerateParam(SwlError):
    """Spiked-basis construction requested at the degenerate white point a = 0."""


class ContourError(SwlError):
    """Contour quadrature failed its reality check (bad radius or node count)."""


class NegativeDeterminant(SwlError):
    """Fredholm determinant came out significantly negative (discretization failure)."""


class ConvergenceError(SwlError):
    """Node-doubling stability test failed for a reported value."""


class RegimeError(SwlError):
    """Rescaling map requested for a regime incompatible with the parameters."""
