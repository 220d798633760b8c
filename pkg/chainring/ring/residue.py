"""Residue field F_q = R/<gamma> and the generalized Gray map.

Field elements are identified by their index in the canonical field order
(base-p value of the coefficient vector), which is also the digit index the
ring uses for its representatives, so the residue of an element is simply
its lowest digit.
"""
import functools
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from chainring.errors import MixedRings
from chainring.helpers.checks import CheckResult, failed, passed, skipped
from chainring.ring.poly import poly_mulmod, to_base
from chainring.ring.ring import PAIR_SWEEP_ELEMENTS, Ring, RingElement

logger = logging.getLogger(__name__)

# Gray images are checked for the generalized Hadamard property up to this length
HADAMARD_CHECK_LENGTH = 64

FieldVector = np.ndarray


class ResidueField:
    def __init__(self, p: int, r: int, modulus: Sequence[int]):
        self.p, self.r = p, r
        self.q = p ** r
        self.modulus = tuple(modulus)
        coeffs = to_base(np.arange(self.q), p, r)
        a, b = coeffs[:, None, :], coeffs[None, :, :]
        powers = p ** np.arange(r)
        self.add_table = (((a + b) % p) * powers).sum(axis=-1)
        self.sub_table = (((a - b) % p) * powers).sum(axis=-1)
        self.mul_table = (poly_mulmod(a, b, self.modulus, p) * powers).sum(axis=-1)
        self.inverse_table = np.zeros(self.q, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == 1)
        self.inverse_table[rows] = cols

    def __eq__(self, other) -> bool:
        return isinstance(other, ResidueField) and (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.r, self.modulus))

    def __repr__(self) -> str:
        return f'ResidueField(F_{self.q})'

    def element(self, index: int) -> 'FieldElement':
        return FieldElement(self, int(index))

    def add(self, a, b) -> np.ndarray:
        return self.add_table[a, b]

    def sub(self, a, b) -> np.ndarray:
        return self.sub_table[a, b]

    def mul(self, a, b) -> np.ndarray:
        return self.mul_table[a, b]


@dataclass(frozen=True)
class FieldElement:
    field: ResidueField
    index: int

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return tuple(int(c) for c in to_base(self.index, self.field.p, self.field.r))

    def _same_field(self, other: 'FieldElement') -> None:
        if other.field != self.field:
            raise MixedRings(f'Cannot combine elements of {self.field} and {other.field}')

    def __add__(self, other: 'FieldElement') -> 'FieldElement':
        self._same_field(other)
        return FieldElement(self.field, int(self.field.add_table[self.index, other.index]))

    def __sub__(self, other: 'FieldElement') -> 'FieldElement':
        self._same_field(other)
        return FieldElement(self.field, int(self.field.sub_table[self.index, other.index]))

    def __mul__(self, other: 'FieldElement') -> 'FieldElement':
        self._same_field(other)
        return FieldElement(self.field, int(self.field.mul_table[self.index, other.index]))

    def inverse(self) -> 'FieldElement':
        if self.index == 0:
            raise ZeroDivisionError('0 has no inverse')
        return FieldElement(self.field, int(self.field.inverse_table[self.index]))

    def __str__(self) -> str:
        return str(self.index)


@functools.lru_cache(maxsize=None)
def residue_field(ring: Ring) -> ResidueField:
    return ResidueField(ring.p, ring.r, ring.modulus)


def residue(x: RingElement) -> FieldElement:
    return FieldElement(residue_field(x.ring), x.rank % x.ring.q)


@dataclass(frozen=True, eq=False)
class GrayMatrix:
    """s x q^{s-1} generator matrix of the first order Reed-Muller code over F_q.

    Column c is the point (y_0, ..., y_{s-2}) with c = sum y_i q^i; rows
    0..s-2 evaluate the coordinates and row s-1 is all-ones.
    """
    field: ResidueField
    rows: np.ndarray

    @property
    def length(self) -> int:
        return self.rows.shape[1]

    def __eq__(self, other) -> bool:
        return isinstance(other, GrayMatrix) and self.field == other.field and np.array_equal(self.rows, other.rows)


@functools.lru_cache(maxsize=None)
def gray_matrix(ring: Ring) -> GrayMatrix:
    length = ring.q ** (ring.s - 1)
    points = to_base(np.arange(length), ring.q, ring.s - 1)
    rows = [points[:, i] for i in range(ring.s - 1)] + [np.ones(length, dtype=np.int64)]
    return GrayMatrix(residue_field(ring), np.vstack(rows).astype(np.int64))


@functools.lru_cache(maxsize=None)
def gray_table(ring: Ring) -> np.ndarray:
    """Gray image of every element, shape (q^s, q^{s-1})."""
    field = residue_field(ring)
    matrix = gray_matrix(ring).rows
    digits = ring.digit_indices
    images = np.zeros((ring.size, matrix.shape[1]), dtype=np.int64)
    for i in range(ring.s):
        images = field.add(images, field.mul(digits[:, i][:, None], matrix[i][None, :]))
    logger.debug(f'Built Gray images of length {matrix.shape[1]} for {ring.name}')
    return images


def gray_map(x: RingElement) -> FieldVector:
    return gray_table(x.ring)[x.rank].copy()


def gray_images(ring: Ring, vectors) -> np.ndarray:
    """Concatenated Gray images of rank vectors along the last axis."""
    vectors = np.asarray(vectors, dtype=np.int64)
    images = gray_table(ring)[vectors]
    return images.reshape(vectors.shape[:-1] + (-1,))


def gray_map_vector(v: Sequence[RingElement]) -> FieldVector:
    if len(v) == 0:
        return np.zeros(0, dtype=np.int64)
    ring = v[0].ring
    for x in v[1:]:
        v[0]._same_ring(x)
    return gray_images(ring, [x.rank for x in v])


def hamming_weight(v: Union[Sequence, np.ndarray]) -> int:
    if isinstance(v, np.ndarray):
        return int(np.count_nonzero(v))
    return sum(1 for x in v if _is_nonzero(x))


def _is_nonzero(x) -> bool:
    if isinstance(x, RingElement):
        return x.rank != 0
    if isinstance(x, FieldElement):
        return x.index != 0
    return x != 0


def gray_hadamard_matrix(ring: Ring) -> np.ndarray:
    """Images of the elements with zero top digit: a q^{s-1} x q^{s-1} matrix over F_q."""
    length = ring.q ** (ring.s - 1)
    return gray_table(ring)[:length].copy()


def is_generalized_hadamard(matrix: np.ndarray, field: ResidueField, lam: int) -> bool:
    """Every difference of two distinct rows hits each field element exactly lam times."""
    matrix = np.asarray(matrix, dtype=np.int64)
    for i in range(len(matrix) - 1):
        diffs = field.sub(matrix[i][None, :], matrix[i + 1:])
        for value in range(field.q):
            if np.any((diffs == value).sum(axis=1) != lam):
                return False
    return True


##################
# exhaustive invariant checks
##################

def check_gray_isometry(ring: Ring) -> CheckResult:
    name = 'gray isometry'
    images = gray_table(ring)
    weights = np.count_nonzero(images, axis=1)
    bad = np.flatnonzero(weights != ring.homogeneous_weights)
    if len(bad):
        x = int(bad[0])
        return failed(name, f'w_H(Phi({ring.label(x)})) = {weights[x]} != w_Hom = {ring.homogeneous_weights[x]}')
    return passed(name, f'weights of {ring.size:,} elements')


def check_gray_distances(ring: Ring) -> CheckResult:
    name = 'gray distances'
    if ring.size > PAIR_SWEEP_ELEMENTS:
        return skipped(name, f'{ring.size:,} elements exceeds the pair sweep limit {PAIR_SWEEP_ELEMENTS:,}')
    images = gray_table(ring)
    elements = np.arange(ring.size, dtype=np.int64)
    for x in range(ring.size):
        distances = np.count_nonzero(images[x][None, :] != images, axis=1)
        if np.any(distances != ring.homogeneous_weights[ring.sub(x, elements)]):
            return failed(name, f'd_H(Phi({ring.label(x)}), Phi(y)) != w_Hom(x - y) for some y')
    return passed(name, f'{ring.size ** 2:,} pairs')


def check_gray_injective(ring: Ring) -> CheckResult:
    name = 'gray injective'
    distinct = len(np.unique(gray_table(ring), axis=0))
    if distinct != ring.size:
        return failed(name, f'{distinct} distinct images for {ring.size} elements')
    return passed(name)


def check_gray_hadamard(ring: Ring) -> CheckResult:
    name = 'gray generalized Hadamard'
    length = ring.q ** (ring.s - 1)
    if ring.s < 2:
        return skipped(name, 's = 1: the image is the trivial repetition case')
    if length > HADAMARD_CHECK_LENGTH:
        return skipped(name, f'length {length} exceeds {HADAMARD_CHECK_LENGTH}')
    field = residue_field(ring)
    hadamard = gray_hadamard_matrix(ring)
    lam = ring.q ** (ring.s - 2)
    if not is_generalized_hadamard(hadamard, field, lam):
        return failed(name, f'H is not a GH({ring.q}, {lam}) matrix')
    # the image is the union of the translates of H by constant vectors
    translates = field.add(hadamard[None, :, :], np.arange(ring.q)[:, None, None]).reshape(-1, length)
    expected = {row.tobytes() for row in translates}
    actual = {row.tobytes() for row in gray_table(ring)}
    if expected != actual:
        return failed(name, 'Phi(R) is not the union of the translates of H')
    return passed(name, f'GH({ring.q}, {lam})')


def gray_checks(ring: Ring) -> list:
    return [check_gray_isometry(ring), check_gray_distances(ring), check_gray_injective(ring),
            check_gray_hadamard(ring)]
