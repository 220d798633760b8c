class ChainRingError(ValueError):
    pass


class InvalidRingSpec(ChainRingError):
    pass


class NonPrimeP(InvalidRingSpec):
    pass


class ReduciblePolynomial(InvalidRingSpec):
    pass


class CapExceeded(ChainRingError):
    pass


class UnsupportedSize(CapExceeded):
    pass


class SizeCapExceeded(CapExceeded):
    pass


class EnumerationCapExceeded(CapExceeded):
    pass


class MixedRings(ChainRingError):
    pass


class EmptyVector(ChainRingError):
    pass


class IndexOutOfRange(ChainRingError):
    pass


class InvalidTypeVector(ChainRingError):
    pass


class UnsupportedK(ChainRingError):
    pass


class DegenerateDistribution(ChainRingError):
    pass


class ZeroCodeword(ChainRingError):
    pass


class NotZps(ChainRingError):
    pass


class ParseError(ChainRingError):
    pass


class VerificationMismatch(ChainRingError):
    """Raised when an exhaustive count disagrees with its closed form.

    `first_weight` is the smallest weight whose counts differ.
    """

    def __init__(self, message: str, first_weight=None):
        super().__init__(message)
        self.first_weight = first_weight


class UnknownOption(ChainRingError):
    pass


class UnsupportedFamily(ChainRingError):
    pass
