"""Exception types raised across the package."""


class ThreeOrbitError(Exception):
    """Base class for all package errors."""


class NotPrime(ThreeOrbitError, ValueError):
    pass


class ReducibleModulus(ThreeOrbitError, ValueError):
    pass


class NoPrimitiveElement(ThreeOrbitError, RuntimeError):
    """Raised when no primitive element is found; indicates an arithmetic bug."""


class FieldMismatch(ThreeOrbitError, ValueError):
    pass


class NotADivisor(ThreeOrbitError, ValueError):
    pass


class WrongLength(ThreeOrbitError, ValueError):
    pass


class Singular(ThreeOrbitError, ArithmeticError):
    pass


class DimensionMismatch(ThreeOrbitError, ValueError):
    pass


class BoundExceeded(ThreeOrbitError, RuntimeError):
    pass


class ZeroPolynomial(ThreeOrbitError, ValueError):
    pass


class TooLarge(ThreeOrbitError, ValueError):
    pass


class GroupMismatch(ThreeOrbitError, ValueError):
    pass


class WNotProper(ThreeOrbitError, ValueError):
    pass


class EvenCharacteristic(ThreeOrbitError, ValueError):
    pass


class CenterMismatch(ThreeOrbitError, ValueError):
    pass


class NoTraceOneElement(ThreeOrbitError, RuntimeError):
    pass


class NotPrimitiveDivisor(ThreeOrbitError, ValueError):
    pass


class NotSpecialQuotient(ThreeOrbitError, ValueError):
    pass


class DegenerateForm(ThreeOrbitError, ValueError):
    pass


class OddDimension(ThreeOrbitError, ValueError):
    pass


class InvalidPair(ThreeOrbitError, ValueError):
    pass


class BudgetExhausted(ThreeOrbitError, RuntimeError):
    def __init__(self, message, nodes=None):
        super().__init__(message)
        self.nodes = nodes


class LiftFailure(ThreeOrbitError, RuntimeError):
    def __init__(self, message, generator=None):
        super().__init__(message)
        self.generator = generator


class UnknownFamily(ThreeOrbitError, KeyError):
    pass


class BudgetExceeded(ThreeOrbitError, ValueError):
    """A requested construction is outside the linear-algebra budget."""


class ConstructionFailed(ThreeOrbitError, RuntimeError):
    pass


class PreconditionFailed(ThreeOrbitError, ValueError):
    pass
