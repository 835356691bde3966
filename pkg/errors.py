"""
Exception hierarchy for field arithmetic, design verification, constructions and certificates
"""
from typing import Optional, Sequence


class HeffterError(Exception):
    """Base class for every error raised by the toolkit"""


# Field errors

class NotPrime(HeffterError):
    pass


class NotIrreducible(HeffterError):
    pass


class NotPrimitivePolynomial(HeffterError):
    pass


class NotPrimitiveElement(HeffterError):
    pass


class DivisionByZero(HeffterError, ZeroDivisionError):
    pass


class ZeroArgument(HeffterError):
    pass


class NotADivisor(HeffterError):
    pass


class IndexOutOfRange(HeffterError):
    pass


# Design errors

class NotAHalfSet(HeffterError):
    def __init__(self, message: str, pair: Optional[Sequence[int]] = None):
        super().__init__(message)
        self.pair = tuple(pair) if pair is not None else None


class WrongCongruence(HeffterError):
    pass


class MismatchedHalfSets(HeffterError):
    pass


class NotZeroSum(HeffterError):
    pass


class NotSimple(HeffterError):
    def __init__(self, message: str, block: Optional[Sequence[int]] = None, index: Optional[int] = None):
        super().__init__(message)
        self.block = tuple(block) if block is not None else None
        self.index = index


class NotOrthogonal(HeffterError):
    pass


class ArrayConditionViolated(HeffterError):
    def __init__(self, condition: str, detail: str):
        super().__init__(f"array condition ({condition}) fails: {detail}")
        self.condition = condition
        self.detail = detail


class InvalidSpace(HeffterError):
    pass


# Construction errors

class NotCoprime(HeffterError):
    pass


class WrongProduct(HeffterError):
    pass


class InvalidPacking(HeffterError):
    pass


class NotConstantBlockSize(HeffterError):
    pass


class SeedInvariantViolated(HeffterError):
    def __init__(self, which: str, detail: str = ""):
        super().__init__(f"net seed invariant {which} fails" + (f": {detail}" if detail else ""))
        self.which = which


class IdentityViolated(HeffterError):
    def __init__(self, slope, detail: str = ""):
        super().__init__(f"slope identity fails for s={slope}" + (f": {detail}" if detail else ""))
        self.slope = slope


class WrongForm(HeffterError):
    pass


# Search errors

class ElementNotSquare(HeffterError):
    pass


class NoDivisibility(HeffterError):
    pass


# Cycle errors

class BaseCyclesInvalid(HeffterError):
    pass


class VertexSetMismatch(HeffterError):
    pass


class NotAnSTS(HeffterError):
    pass


# Certificates

class CertificateParseError(HeffterError):
    def __init__(self, message: str, line_number: Optional[int] = None):
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(prefix + message)
        self.line_number = line_number
