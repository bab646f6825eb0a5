"""Exception hierarchy.

Two families matter to callers (and to the CLI exit codes): a
``HypothesisError`` means the mathematics refuses the input (a theorem's
precondition fails), an ``InputError`` means the input itself is malformed.
"""


class CyclofactorError(Exception):
    """Base class for every error raised by this package."""


class HypothesisError(CyclofactorError):
    """A mathematical precondition does not hold."""


class InputError(CyclofactorError):
    """Malformed or unsupported input."""


class InternalError(CyclofactorError):
    """A certified invariant failed; always a bug."""


# -- field layer -------------------------------------------------------------

class CompositeCharacteristic(InputError):
    pass


class ZeroElement(HypothesisError):
    pass


class CharacteristicDividesOrder(HypothesisError):
    pass


class CharacteristicDividesIndex(CharacteristicDividesOrder):
    pass


class NonResidue(HypothesisError):
    pass


class SizeLimitExceeded(InputError):
    """The group order to factor exceeds the desk-scale bound."""


class EvenCharacteristic(HypothesisError):
    pass


# -- polynomials -------------------------------------------------------------

class DivisionByZeroPoly(InputError, ZeroDivisionError):
    pass


class MixedLevels(InputError):
    pass


class ZeroConstantTerm(HypothesisError):
    pass


class DescentFailure(InternalError):
    pass


# -- composed products -------------------------------------------------------

class RootOutsideDomain(HypothesisError):
    pass


# -- cyclotomic factorization ------------------------------------------------

class BadParity(HypothesisError):
    pass


class GcdViolation(HypothesisError):
    pass


class OrdersNotCoprime(HypothesisError):
    pass


class NotPrimitiveRoot(HypothesisError):
    pass


class DegreeGrowth(HypothesisError):
    pass


# -- constructions -----------------------------------------------------------

class HypothesisViolation(HypothesisError):
    def __init__(self, name, detail=""):
        self.name = name
        super().__init__(f"{name}: {detail}" if detail else name)


class NonDivisibility(HypothesisError):
    pass


# -- sequences ---------------------------------------------------------------

class LengthMismatch(InputError):
    pass
