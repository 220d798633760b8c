"""Generator matrices of the simplex codes of type alpha and beta over a chain ring.

Matrices hold element ranks (see chainring.ring.ring) in a (k, n) int64
array. Codewords are enumerated as coefficient vectors of R^k in ascending
rank order, the last coordinate running fastest.
"""
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from common.constants import CodeFamily, RingFamily
from chainring.config import DEFAULT_LIMITS, Limits, parse_option
from chainring.errors import (
    EnumerationCapExceeded,
    IndexOutOfRange,
    InvalidTypeVector,
    NotZps,
    SizeCapExceeded,
    UnsupportedFamily,
    UnsupportedK,
)
from chainring.ring.poly import to_base
from chainring.ring.ring import Ring, RingElement, RingSpec, make_ring

logger = logging.getLogger(__name__)

# upper bound on batch_size * n when enumerating
BATCH_ENTRIES = 2 ** 20


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    ring: Ring
    entries: np.ndarray
    family: CodeFamily

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.int64, ndmin=2)
        entries.setflags(write=False)
        object.__setattr__(self, 'entries', entries)
        object.__setattr__(self, 'family', parse_option(CodeFamily, self.family))

    @property
    def k(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    def rows(self) -> List[List[RingElement]]:
        return [[RingElement(self.ring, int(x)) for x in row] for row in self.entries]

    def column(self, j: int) -> List[RingElement]:
        if not 0 <= j < self.n:
            raise IndexOutOfRange(f'Column {j} is outside 0..{self.n - 1}')
        return [RingElement(self.ring, int(x)) for x in self.entries[:, j]]

    def __eq__(self, other) -> bool:
        return (isinstance(other, GeneratorMatrix) and self.ring == other.ring
                and np.array_equal(self.entries, other.entries))

    def __repr__(self) -> str:
        return f'GeneratorMatrix({self.family.value}, {self.ring.name}, {self.k}x{self.n})'


@dataclass(frozen=True)
class SimplexCode:
    generator: GeneratorMatrix

    @property
    def ring(self) -> Ring:
        return self.generator.ring

    @property
    def family(self) -> CodeFamily:
        return self.generator.family

    @property
    def n(self) -> int:
        return self.generator.n

    @property
    def k(self) -> int:
        return self.generator.k

    @property
    def q(self) -> int:
        return self.ring.q

    @property
    def s(self) -> int:
        return self.ring.s

    @property
    def size(self) -> int:
        """Number of codewords, q^{sk} for a free code of rank k."""
        return self.ring.size ** self.k

    def __repr__(self) -> str:
        return f'SimplexCode({self.family.value}, {self.ring.name}, n={self.n}, k={self.k})'


def beta_length(q: int, s: int, k: int) -> int:
    if k < 0:
        raise UnsupportedK(f'k must be non-negative, got {k}')
    if k == 0:
        return 0
    return q ** ((s - 1) * (k - 1)) * (q ** k - 1) // (q - 1)


def _check_k(k: int) -> None:
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise UnsupportedK(f'k must be a positive integer, got {k!r}')


def _check_columns(n: int, limits: Limits, what: str) -> None:
    if n > limits.max_columns:
        raise SizeCapExceeded(f'{what} has {n:,} columns, above the cap of {limits.max_columns:,}')


def _alpha_entries(ring: Ring, k: int) -> np.ndarray:
    elements = np.arange(ring.size, dtype=np.int64)
    entries = elements[None, :]
    for _ in range(k - 1):
        # block-constant row over q^s copies of the previous matrix
        top = np.repeat(elements, entries.shape[1])
        entries = np.vstack([top, np.tile(entries, ring.size)])
    return entries


def simplex_alpha_matrix(ring: Ring, k: int, limits: Optional[Limits] = None) -> GeneratorMatrix:
    _check_k(k)
    limits = limits or ring.limits
    _check_columns(ring.size ** k, limits, f'G_{k}^alpha over {ring.name}')
    logger.debug(f'Building G_{k}^alpha over {ring.name} with {ring.size ** k} columns')
    return GeneratorMatrix(ring, _alpha_entries(ring, k), CodeFamily.ALPHA)


def simplex_beta_matrix(ring: Ring, k: int, limits: Optional[Limits] = None) -> GeneratorMatrix:
    _check_k(k)
    limits = limits or ring.limits
    _check_columns(beta_length(ring.q, ring.s, k), limits, f'G_{k}^beta over {ring.name}')
    gamma_multiples = ring.ideal_ranks(1)
    entries = np.array([[ring.one.rank]], dtype=np.int64)
    for m in range(2, k + 1):
        alpha = _alpha_entries(ring, m - 1)
        top = np.concatenate([
            np.full(alpha.shape[1], ring.one.rank, dtype=np.int64),
            np.repeat(gamma_multiples, entries.shape[1]),
        ])
        bottom = np.hstack([alpha, np.tile(entries, len(gamma_multiples))])
        entries = np.vstack([top, bottom])
    logger.debug(f'Built G_{k}^beta over {ring.name} with {entries.shape[1]} columns')
    return GeneratorMatrix(ring, entries, CodeFamily.BETA)


def simplex_code(ring: Ring, family, k: int, limits: Optional[Limits] = None) -> SimplexCode:
    family = parse_option(CodeFamily, family)
    if family is CodeFamily.ALPHA:
        return SimplexCode(simplex_alpha_matrix(ring, k, limits))
    if family is CodeFamily.BETA:
        return SimplexCode(simplex_beta_matrix(ring, k, limits))
    raise UnsupportedFamily(f'{family.value} is not a simplex family, expected one of {CodeFamily.simplex()}')


def alpha_row_closed_form(ring: Ring, k: int, i: int) -> np.ndarray:
    """Row i (1-based) of G_k^alpha: every element repeated q^{s(k-i)} times, the whole tiled q^{s(i-1)} times."""
    if not 1 <= i <= k:
        raise IndexOutOfRange(f'Row {i} is outside 1..{k}')
    elements = np.arange(ring.size, dtype=np.int64)
    return np.tile(np.repeat(elements, ring.size ** (k - i)), ring.size ** (i - 1))


def code_type(code: SimplexCode) -> str:
    return f'({code.n}; ' + ', '.join([str(code.k)] + ['0'] * (code.s - 1)) + ')'


@dataclass(frozen=True)
class ColumnDistinctness:
    distinct: bool
    # (i, j, lambda rank) with column i = lambda * column j
    counterexample: Optional[Tuple[int, int, int]] = None

    def __bool__(self) -> bool:
        return self.distinct


def verify_column_distinctness(generator: GeneratorMatrix) -> ColumnDistinctness:
    ring = generator.ring
    columns = {}
    for i, column in enumerate(np.ascontiguousarray(generator.entries.T)):
        columns.setdefault(column.tobytes(), []).append(i)
    for lam in range(ring.size):
        scaled = np.ascontiguousarray(ring.mul(lam, generator.entries).T)
        for j, column in enumerate(scaled):
            for i in columns.get(column.tobytes(), ()):
                if lam != ring.one.rank or i != j:
                    return ColumnDistinctness(False, (i, j, lam))
    return ColumnDistinctness(True)


##################
# codeword enumeration
##################

def coefficient_vectors(ring: Ring, k: int, start: int, stop: int) -> np.ndarray:
    """Coefficient vectors with ranks start..stop-1, first coordinate most significant."""
    ranks = np.arange(start, stop, dtype=np.int64)
    return to_base(ranks, ring.size, k)[:, ::-1]


def encode(generator: GeneratorMatrix, coefficients) -> np.ndarray:
    """Codewords sum_i a_i g_i for a (batch, k) array of coefficient ranks."""
    ring = generator.ring
    coefficients = np.asarray(coefficients, dtype=np.int64)
    words = np.zeros(coefficients.shape[:-1] + (generator.n,), dtype=np.int64)
    for i in range(generator.k):
        words = ring.add(words, ring.mul(coefficients[..., i, None], generator.entries[i]))
    return words


def _enumeration_range(code: SimplexCode, start: int, stop: Optional[int], limits: Limits) -> Tuple[int, int]:
    if code.size > limits.max_codewords:
        raise EnumerationCapExceeded(
            f'{code} has {code.size:,} codewords, above the cap of {limits.max_codewords:,}')
    stop = code.size if stop is None else stop
    if not 0 <= start <= stop <= code.size:
        raise IndexOutOfRange(f'Enumeration range [{start}, {stop}) is outside [0, {code.size})')
    return start, stop


def codeword_batches(code: SimplexCode, start: int = 0, stop: Optional[int] = None,
                     limits: Optional[Limits] = None) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """Yields (coefficients, codewords) arrays of shape (batch, k) and (batch, n)."""
    start, stop = _enumeration_range(code, start, stop, limits or code.ring.limits)
    batch = max(1, BATCH_ENTRIES // max(code.n, 1))
    for lo in range(start, stop, batch):
        hi = min(lo + batch, stop)
        coefficients = coefficient_vectors(code.ring, code.k, lo, hi)
        yield coefficients, encode(code.generator, coefficients)


def enumerate_codewords(code: SimplexCode, start: int = 0, stop: Optional[int] = None,
                        limits: Optional[Limits] = None) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    for coefficients, words in codeword_batches(code, start, stop, limits):
        yield from zip(coefficients, words)


def codeword_valuation_check(code: SimplexCode, limits: Optional[Limits] = None) -> bool:
    ring = code.ring
    for coefficients, words in codeword_batches(code, limits=limits):
        if np.any(ring.vector_valuations(words) != ring.vector_valuations(coefficients)):
            return False
    return True


##################
# Z_{p^s} generalized Hadamard matrices
##################

def gh_A_matrix(p: int, s: int, t: Sequence[int], limits: Optional[Limits] = None) -> GeneratorMatrix:
    """A^{t_1,...,t_s} over Z_{p^s}, grown from A^{1,0,...,0} = (1).

    Step i prepends the row (0, p^{i-1}, ..., (p^{s-i+1}-1) p^{i-1}), each value
    spanning one copy of the current matrix; all t_1 steps come first.
    """
    t = tuple(int(ti) for ti in t)
    if len(t) != s:
        raise InvalidTypeVector(f'Type vector {t} must have s={s} entries')
    if t[0] < 1 or any(ti < 0 for ti in t):
        raise InvalidTypeVector(f'Type vector {t} needs t_1 >= 1 and t_i >= 0')
    limits = limits or DEFAULT_LIMITS
    ring = make_ring(RingSpec(RingFamily.ZPS, p, s), limits)
    steps = [1] * (t[0] - 1) + [i for i in range(2, s + 1) for _ in range(t[i - 1])]
    n = 1
    for i in steps:
        n *= p ** (s - i + 1)
    _check_columns(n, limits, f'A^{t} over {ring.name}')
    entries = np.array([[ring.one.rank]], dtype=np.int64)
    for i in steps:
        values = np.arange(p ** (s - i + 1), dtype=np.int64) * p ** (i - 1)
        top = np.repeat(values, entries.shape[1])
        entries = np.vstack([top, np.tile(entries, len(values))])
    return GeneratorMatrix(ring, entries, CodeFamily.GH_A)


def require_zps(ring: Ring) -> None:
    if ring.family is not RingFamily.ZPS:
        raise NotZps(f'Only defined over Z_(p^s), got {ring.name}')


def gh_A_matrix_over(ring: Ring, t: Sequence[int]) -> GeneratorMatrix:
    require_zps(ring)
    return gh_A_matrix(ring.p, ring.s, t, ring.limits)


def alpha_equals_trimmed_A(ring: Ring, k: int) -> bool:
    """G_k^alpha equals A^{k+1,0,...,0} with its last (all-one) row removed."""
    require_zps(ring)
    trimmed = gh_A_matrix_over(ring, (k + 1,) + (0,) * (ring.s - 1)).entries[:-1]
    return np.array_equal(trimmed, simplex_alpha_matrix(ring, k).entries)
