"""Exception hierarchy shared by every module of the package."""


class RTSSError(Exception):
    """Base class for all errors raised by rtsss."""


# -- field / linear algebra -------------------------------------------------

class NotPrime(RTSSError, ValueError):
    pass


class NotIrreducible(RTSSError, ValueError):
    pass


class DegreeMismatch(RTSSError, ValueError):
    pass


class FieldMismatch(RTSSError, ValueError):
    pass


class DivisionByZero(RTSSError, ZeroDivisionError):
    pass


class DimensionMismatch(RTSSError, ValueError):
    pass


class NoSolution(RTSSError, ArithmeticError):
    pass


class Underdetermined(RTSSError, ArithmeticError):
    pass


# -- linearized polynomials -------------------------------------------------

class DegreeTooLarge(RTSSError, ValueError):
    pass


class DependentPoints(RTSSError, ValueError):
    pass


class LengthMismatch(RTSSError, ValueError):
    pass


# -- codes and scheme -------------------------------------------------------

class BadParams(RTSSError, ValueError):
    pass


class FieldTooSmall(RTSSError, ValueError):
    pass


class ParamsUnsatisfiable(RTSSError, ValueError):
    pass


class InsufficientShares(RTSSError, ValueError):
    pass


class InconsistentShares(RTSSError, ValueError):
    pass


class NotInRepairSet(RTSSError, ValueError):
    pass


class NoRepairTableEntry(RTSSError, KeyError):
    pass


class WrongContributionCount(RTSSError, ValueError):
    pass


class WrongPacketSet(RTSSError, ValueError):
    pass


class ModeMismatch(RTSSError, ValueError):
    pass


class MixedSchemes(RTSSError, ValueError):
    pass


# -- audit / io -------------------------------------------------------------

class TooLargeToEnumerate(RTSSError, ValueError):
    pass


class FormatError(RTSSError, ValueError):
    """Malformed metadata, share or packet file (including CRC failures)."""
