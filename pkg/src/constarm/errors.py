"""Exception types raised across the toolkit.

Everything derives from ValueError so callers that do not care about the
fine-grained kind can catch the usual thing.
"""


class ConstarmError(ValueError):
    pass


# field construction
class NonPrimeP(ConstarmError):
    pass


class FieldTooLarge(ConstarmError):
    pass


class ExtensionTooLarge(ConstarmError):
    pass


class RNotDivisor(ConstarmError):
    pass


class ZeroElement(ConstarmError):
    pass


# polynomial algebra
class DimensionMismatch(ConstarmError):
    pass


class ZeroPolynomial(ConstarmError):
    pass


class ZeroScalar(ConstarmError):
    pass


class SingularMatrix(ConstarmError):
    pass


class MixedResidue(ConstarmError):
    pass


# parameter handling
class NotAdmissible(ConstarmError):
    pass


class NotIntermediate(ConstarmError):
    pass


class WrongResidue(ConstarmError):
    pass


class BadResidue(ConstarmError):
    pass


class ResidueMismatch(ConstarmError):
    pass


class InvalidRange(ConstarmError):
    pass


# witnesses
class TooFewVariables(ConstarmError):
    pass


class DuplicateTheta(ConstarmError):
    pass


class BadFlag(ConstarmError):
    pass


# distance machinery
class ExponentOutOfRange(ConstarmError):
    pass


class BudgetExceeded(ConstarmError):
    pass


class NoNonzeroWords(ConstarmError):
    pass
