"""Exception hierarchy shared by all modules."""


class ModmatError(Exception):
    pass


# exact arithmetic kernel
class DivisionByNonUnit(ModmatError, ZeroDivisionError):
    pass


class ExpOfUnit(ModmatError, ValueError):
    pass


class NoSolution(ModmatError, ValueError):
    """Raised by linear_solve for an inconsistent system."""


class DimensionMismatch(ModmatError, ValueError):
    pass


# matroids and configurations
class LabelOutOfRange(ModmatError, IndexError):
    pass


class SizeMismatch(ModmatError, ValueError):
    pass


class DegenerateFrame(ModmatError, ValueError):
    pass


class ExcludedParameter(ModmatError, ValueError):
    pass


class NotEquivalent(ModmatError, ValueError):
    pass


class NoFrame(ModmatError, ValueError):
    pass


# point chain and cubic
class DegenerateIntersection(ModmatError, ValueError):
    pass


class DenominatorVanishes(ModmatError, ZeroDivisionError):
    pass


class PoleOfParametrization(ModmatError, ZeroDivisionError):
    pass


class NotOnCurve(ModmatError, ValueError):
    pass


class SingularInput(ModmatError, ValueError):
    pass


class NonFlexNeutral(ModmatError, ValueError):
    pass


# cusp configurations
class NotAUnit(ModmatError, ValueError):
    pass


class LevelTooSmall(ModmatError, ValueError):
    pass


class ZeroIndex(ModmatError, ValueError):
    pass


class DegenerateLevel(ModmatError, ValueError):
    pass


class NoReduction(ModmatError, RuntimeError):
    pass


# q-expansions
class IndexDivisibleByN(ModmatError, ValueError):
    pass


class IndexConstraintViolated(ModmatError, ValueError):
    pass


class NonconvergentInput(ModmatError, ValueError):
    pass


class DenominatorNotUnit(ModmatError, ArithmeticError):
    pass


class FrameMismatch(ModmatError, ValueError):
    pass


class NoSolutionAtPrecision(ModmatError, RuntimeError):
    pass
