"""Exception types shared across the package."""


class PosmatError(Exception):
    """Base class for all errors raised by posmat."""


class DimensionError(PosmatError, ValueError):
    """Matrix shapes or index universes do not fit together."""


class IndexSetError(PosmatError, ValueError):
    """An index set is empty, out of range, or not a proper subset."""


class ParseError(PosmatError, ValueError):
    """Malformed matrix, pattern, graph or partition text."""


class HypothesisError(PosmatError):
    """The preconditions of an operation or theorem are not met.

    Kept distinct from a ``False`` answer: an inapplicable instance is not
    evidence against a theorem.
    """


class CapExceeded(PosmatError):
    """An exponential enumeration would exceed its size cap."""

    def __init__(self, what, size, cap):
        super().__init__(
            f"{what}: size {size} exceeds the enumeration cap {cap}; "
            f"raise it with --max-n or the POSMAT_MAX_N environment variable"
        )
        self.size = size
        self.cap = cap


class TheoremViolation(AssertionError):
    """A proven implication failed on a concrete instance.

    This always indicates a bug in the library, never bad input.
    """


class RangeError(PosmatError, ValueError):
    """A scalar parameter (k, n, an exponent) is outside its allowed range."""
