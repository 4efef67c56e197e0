"""Exception hierarchy shared by all modules."""


class DCCError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(DCCError, ValueError):
    pass


class NotPrimitiveModulus(DCCError, ValueError):
    pass


class FieldMismatch(DCCError, ValueError):
    pass


class CharDividesN(DCCError, ValueError):
    pass


class ContextMismatch(DCCError, ValueError):
    pass


class NotAnAutomorphism(DCCError, ValueError):
    pass


class AutomorphismMismatch(DCCError, ValueError):
    pass


class InternalInconsistency(DCCError, RuntimeError):
    pass


class SpecInvalid(DCCError, ValueError):
    """A code specification violates the disjointness condition or a range.

    ``witness`` carries the first offending ``(j, index)`` pair when the
    failure is a collision between ``S`` and ``sigma^j(S)``.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class RangeError(DCCError, ValueError):
    pass


class KTooLarge(DCCError, ValueError):
    pass


class NNotDividing(DCCError, ValueError):
    pass


class NotRSConfig(DCCError, ValueError):
    pass


class RankDeficient(DCCError, ValueError):
    pass


class NotUniformRowDegrees(DCCError, ValueError):
    pass


class StateSpaceTooLarge(DCCError, RuntimeError):
    """The trellis would exceed the configured state cap."""

    def __init__(self, required, cap):
        super().__init__(
            f"state space of {required} states exceeds the cap of {cap}"
        )
        self.required = required
        self.cap = cap


class TooLarge(DCCError, RuntimeError):
    pass


class LengthMismatch(DCCError, ValueError):
    pass


class SpecFileError(DCCError, ValueError):
    """Parse or validation failure in a spec file, with its line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
