"""Exception types shared across the library.

Pole hits during randomized verification are signalled with
``ZeroDivisionError`` (what ``fractions.Fraction`` and the prime-field
elements raise naturally); the verification engine treats any
``ZeroDivisionError`` as "resample this tuple".  ``SingularMatrixError``
subclasses it so a singular matrix inversion is handled the same way.
"""


class SamplingExhausted(Exception):
    """The avoid-predicate rejected every candidate within the retry budget."""


class SingularMatrixError(ZeroDivisionError):
    """Inverse of a matrix with zero determinant."""


class UnknownQuasigroupError(LookupError):
    """No builtin quasigroup with that name."""


class UnknownEntryError(LookupError):
    """No catalog entry with that name."""


class IncompatibleStructureError(ValueError):
    """The verifier's kind does not fit the supplied algebraic structure."""


class UnsupportedOrderError(ValueError):
    """Matrix construction only implemented for order 2."""


class PreconditionFailedError(Exception):
    """A construction's sampled precondition did not pass.

    Carries the failing :class:`~ybmaps.core.VerificationReport` in
    ``report`` so callers can inspect the witness.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ParseError(ValueError):
    """Definition-file syntax error, with position and expected tokens."""

    def __init__(self, message, line=None, col=None, expected=()):
        self.line = line
        self.col = col
        self.expected = tuple(sorted(expected))
        loc = f" at line {line}, column {col}" if line is not None else ""
        exp = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message}{loc}{exp}")


class UndeclaredSymbolError(ParseError):
    """Expression uses a symbol not declared in the params/vars lines."""


class ArityMismatchError(ParseError):
    """Parameter list cannot be split into the two per-factor halves."""


class UnboundSymbolError(KeyError):
    """Evaluation met a symbol with no binding."""
