"""Exception and warning types raised by morsekit."""


class DomainError(ValueError):
    """A parameter lies outside the region where a formula is defined."""


class UnsupportedOrderError(ValueError):
    """A polynomial or derivative order exceeds the documented limit."""


class DivergenceError(DomainError):
    """The requested quantity is an integral that does not converge."""


class ScaleOutOfBandError(ValueError):
    """A wavelet scale places the passband above the Nyquist frequency."""


class ConvergenceError(ArithmeticError):
    """An iterative or adaptive numerical procedure failed to converge."""


class AliasingWarning(UserWarning):
    """Sampled data is not decayed at the edges of its periodic window."""


class TruncationBiasWarning(UserWarning):
    """A moment over a finite scale grid is biased by truncation."""
