"""Exception hierarchy shared by all hilbsam modules."""

from __future__ import annotations


class HilbsamError(Exception):
    """Base class for all errors raised by this package."""


class InputError(HilbsamError):
    """Malformed user input (problem files, CLI arguments, bad names)."""


class PolySyntaxError(InputError):
    """Polynomial text does not conform to the grammar.

    Carries the 0-based position of the offending character.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariable(InputError):
    """Polynomial text references a variable not in the ring."""


class MixedFields(HilbsamError):
    """Operands belong to different coefficient fields."""


class MixedRings(HilbsamError):
    """Operands belong to different polynomial rings."""


class DivisionByZero(HilbsamError):
    """Field division or inversion by zero."""


class ZeroPolynomial(HilbsamError):
    """Operation undefined on the zero polynomial (e.g. leading term)."""


class ZeroDivisor(HilbsamError):
    """Colon by the zero element requested."""


class ResourceLimit(HilbsamError):
    """A configured computational budget was exhausted (pair budget,
    saturation iteration cap, ...)."""


class NotLocallyFinite(ResourceLimit):
    """Truncated colengths did not stabilize: the ideal is not primary to
    the irrelevant maximal ideal locally at the origin, or the cutoff cap
    is too small."""


class NotFinite(ResourceLimit):
    """A saturation-quotient length did not stabilize."""


class NoPolynomialTail(HilbsamError):
    """Sampled values never became polynomial: request more samples."""


class NonIntegerCoefficient(HilbsamError):
    """The binomial-basis fit produced a non-integer coefficient; signals a
    bug or a wrong declared dimension."""


class BoundViolation(HilbsamError):
    """A proven inequality failed; signals a bug."""


class SamplingExhausted(HilbsamError):
    """Random reduction sampling used up its retry budget."""
