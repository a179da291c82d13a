"""Exception types shared across the package."""


class SympwaveError(Exception):
    """Base class for all package-specific errors."""


class GammaPoleError(SympwaveError):
    """Log-gamma evaluated at a nonpositive integer."""


class DivergenceError(SympwaveError):
    """An integral required to be finite diverges."""


class UnsupportedOrderError(SympwaveError):
    """Derivative order beyond the supported cap."""


class OutOfRangeError(SympwaveError):
    """Argument outside the documented domain."""


class ResolutionError(SympwaveError):
    """Spectral proxy too coarse for the requested derivatives."""


class NormalizationError(SympwaveError):
    """Vector expected to be normalized is not."""


class UsageError(SympwaveError):
    """Malformed sweep specification or CLI input."""
