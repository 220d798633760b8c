from enum import Enum, IntEnum


class RingFamily(Enum):
    ZPS = 'zps'
    GALOIS_RING = 'gr'
    FQU = 'fqu'

    @classmethod
    def names(cls) -> list:
        return [member.value for member in cls]


class CodeFamily(Enum):
    ALPHA = 'alpha'
    BETA = 'beta'
    GH_A = 'gh_A'
    CUSTOM = 'custom'

    @classmethod
    def simplex(cls) -> list:
        return [cls.ALPHA.value, cls.BETA.value]


class WeightKind(Enum):
    HAMMING = 'hamming'
    HOMOGENEOUS = 'homogeneous'


class OutputFormat(Enum):
    CSV = 'csv'
    STRUCTURED = 'structured'
    TEXT = 'text'


class ExitCode(IntEnum):
    OK = 0
    CHECK_FAILED = 1
    INVALID_SPEC = 2
    CAP_EXCEEDED = 3
    MISMATCH = 4


# modulus coefficients, low-to-high
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),     # x^2 + x + 1
    (3, 2): (2, 1, 1),     # x^2 + x + 2
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
}
LINEAR_MODULUS = (0, 1)  # x, for r = 1

MAX_ELEMENTS = 2 ** 16
MAX_COLUMNS = 2 ** 24
MAX_CODEWORDS = 2 ** 24
TABLE_ELEMENTS = 1024

ELEMENT_LIST_TRUNCATION = 64
