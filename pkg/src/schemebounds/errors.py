"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SchemeBoundsError(Exception):
    """Base class for all errors raised by schemebounds."""


# scheme validation


class SchemeError(SchemeBoundsError, ValueError):
    pass


class NotReflexive(SchemeError):
    pass


class NotTransposeClosed(SchemeError):
    pass


class InconsistentIntersection(SchemeError):
    """Some intersection number depends on the chosen pair.

    ``witnesses`` holds the two pairs ``(x, y)`` and ``(x2, y2)`` of the same
    color that disagree, together with the offending ``(r, s, t)``.
    """

    def __init__(self, message: str, witnesses=None):
        super().__init__(message)
        self.witnesses = witnesses


class OrderTooSmall(SchemeError):
    pass


class SchemeFormatError(SchemeError):
    pass


# generators


class ParameterOutOfRange(SchemeBoundsError, ValueError):
    pass


class NotPrime(ParameterOutOfRange):
    pass


class NotADivisor(ParameterOutOfRange):
    pass


class NotAGroup(ParameterOutOfRange):
    pass


# finite fields


class TooLarge(ParameterOutOfRange):
    pass


class BudgetExceeded(SchemeBoundsError):
    """Raised only on request; carries the best-so-far report."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


# spectral data


class SpectralError(SchemeBoundsError):
    pass


class ExactPathUnavailable(SpectralError):
    pass


class IllConditioned(SpectralError):
    pass


class NonIntegerParameter(SpectralError):
    pass


class NonIntegral(SpectralError):
    pass


class NotRational(SpectralError):
    pass


class SemisimplicityViolated(SpectralError):
    pass


class DenominatorDivisible(SpectralError):
    """An idempotent entry has a denominator divisible by the prime.

    Never expected for a semisimple reduction; treated as an internal error.
    """


class NotPrimitive(SchemeBoundsError):
    pass
