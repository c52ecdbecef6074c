"""Exception types shared across the package."""


class EulerchiError(Exception):
    """Base class for all package-specific errors."""


class OrdinarityError(EulerchiError):
    """Raised when an operation requires good ordinary reduction at p."""


class PrecisionExhausted(EulerchiError):
    """A power series vanished (or lost all digits) at working precision."""


class OrderTooLow(EulerchiError):
    """A series has a nonzero coefficient below the expected order of vanishing."""


class BadReduction(EulerchiError):
    """Raised when a prime of bad reduction is passed where good reduction is required."""


class CutoffExceeded(EulerchiError):
    """A prime is above the configured point-counting cutoff."""


class BadAtP(EulerchiError):
    """A curve has bad reduction at the working prime p."""


class NotCoprime(EulerchiError):
    """A false-Tate parameter m shares a factor with p or a conductor."""


class MissingInput(EulerchiError):
    """Required externally-supplied arithmetic data is absent or unusable."""


class NegativeValuation(EulerchiError):
    """A computed Euler-characteristic valuation came out negative.

    This never happens for consistent input data, so it signals that the
    supplied rank / regulator / Sha valuations contradict each other.
    """


class HypothesisFailed(EulerchiError):
    """A theorem hypothesis failed for the given pair of curves."""

    def __init__(self, message, witnesses=()):
        super().__init__(message)
        self.witnesses = list(witnesses)


class SchemaError(EulerchiError):
    """A curve record does not satisfy the input schema."""


class UnknownLabel(EulerchiError):
    """A curve label does not resolve against the embedded dataset."""
