"""Empirical and closed-form weight distributions of the simplex codes.

Closed forms depend only on (q, s, k). The homogeneous distribution of a
code is the Hamming distribution of its Gray image, so its length is taken
as n q^{s-1}.
"""
import logging
import multiprocessing
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple

import numpy as np
import sympy
from tqdm import tqdm

from common.constants import CodeFamily, WeightKind
from chainring.config import Limits, parse_option
from chainring.errors import (
    ChainRingError,
    DegenerateDistribution,
    UnsupportedFamily,
    UnsupportedK,
    VerificationMismatch,
    ZeroCodeword,
)
from chainring.codes.simplex import (
    SimplexCode,
    beta_length,
    codeword_batches,
    require_zps,
    simplex_code,
)
from chainring.ring.residue import gray_images
from chainring.ring.ring import Ring

logger = logging.getLogger(__name__)

X, Y = sympy.symbols('X Y')


@dataclass(frozen=True)
class WeightDistribution:
    kind: WeightKind
    counts: Mapping[int, int]
    n: int
    trivial: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'kind', parse_option(WeightKind, self.kind))
        counts = {int(w): int(c) for w, c in sorted(self.counts.items()) if c}
        if any(w < 0 for w in counts) or any(c < 0 for c in counts.values()):
            raise ChainRingError(f'Weights and counts must be non-negative, got {counts}')
        object.__setattr__(self, 'counts', counts)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def min_distance(self) -> int:
        return min_distance(self)

    def first_difference(self, other: 'WeightDistribution') -> Optional[int]:
        """Smallest weight whose counts differ, or None."""
        for w in sorted(set(self.counts) | set(other.counts)):
            if self.counts.get(w, 0) != other.counts.get(w, 0):
                return w
        return None

    def enumerator(self) -> sympy.Expr:
        return sympy.Add(*[c * X ** (self.n - w) * Y ** w for w, c in self.counts.items()])

    def enumerator_text(self) -> str:
        return ' + '.join(f'{c} X^{self.n - w} Y^{w}' for w, c in self.counts.items())

    def __str__(self) -> str:
        return '{' + ', '.join(f'{w}:{c}' for w, c in self.counts.items()) + '}'


def min_distance(distribution: WeightDistribution) -> int:
    nonzero = [w for w in distribution.counts if w > 0]
    if not nonzero:
        raise DegenerateDistribution(f'{distribution} has no nonzero weight')
    return min(nonzero)


##################
# empirical distributions
##################

def codeword_weights(ring: Ring, words: np.ndarray, kind) -> np.ndarray:
    if parse_option(WeightKind, kind) is WeightKind.HAMMING:
        return np.count_nonzero(words, axis=-1)
    return ring.homogeneous_weights[words].sum(axis=-1)


def _tally(code: SimplexCode, kind: WeightKind, start: int, stop: int, limits: Optional[Limits]) -> Counter:
    tally = Counter()
    for _, words in codeword_batches(code, start, stop, limits):
        weights, counts = np.unique(codeword_weights(code.ring, words, kind), return_counts=True)
        tally.update(dict(zip(weights.tolist(), counts.tolist())))
    return tally


def partition_ranges(total: int, partitions: int) -> list:
    bounds = np.linspace(0, total, max(1, partitions) + 1).astype(np.int64)
    return [(int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]


def empirical_distribution(code: SimplexCode, kind, limits: Optional[Limits] = None, partitions: int = 1,
                           workers: int = 1, progress: bool = False) -> WeightDistribution:
    """Counts over every codeword; any partitioning gives the same tallies."""
    kind = parse_option(WeightKind, kind)
    limits = limits or code.ring.limits
    ranges = partition_ranges(code.size, max(partitions, workers))
    logger.debug(f'Counting {kind.value} weights of {code} over {len(ranges)} partition(s)')
    tally = Counter()
    if workers > 1 and len(ranges) > 1:
        with multiprocessing.Pool(workers) as pool:
            parts = pool.starmap(_tally, [(code, kind, lo, hi, limits) for lo, hi in ranges])
    else:
        parts = (_tally(code, kind, lo, hi, limits) for lo, hi in ranges)
    for part in tqdm(parts, f'Counting {kind.value} weights', total=len(ranges), disable=not progress):
        tally.update(part)
    return WeightDistribution(kind, tally, _metric_length(code.n, code.q, code.s, kind),
                              trivial=code.family is CodeFamily.BETA and code.k == 1)


##################
# closed forms
##################

def _metric_length(n: int, q: int, s: int, kind: WeightKind) -> int:
    return n if kind is WeightKind.HAMMING else n * q ** (s - 1)


def code_length(family, q: int, s: int, k: int) -> int:
    family = parse_option(CodeFamily, family)
    if family is CodeFamily.ALPHA:
        return q ** (s * k)
    if family is CodeFamily.BETA:
        return beta_length(q, s, k)
    raise UnsupportedFamily(f'{family.value} is not a simplex family, expected one of {CodeFamily.simplex()}')


def valuation_census(q: int, s: int, k: int) -> Dict[int, int]:
    """Number of codewords of each finite valuation j."""
    return {j: q ** (k * (s - j)) - q ** (k * (s - j - 1)) for j in range(s)}


def predicted_distribution(family, kind, q: int, s: int, k: int) -> WeightDistribution:
    family, kind = parse_option(CodeFamily, family), parse_option(WeightKind, kind)
    if k < 1:
        raise UnsupportedK(f'k must be positive, got {k}')
    n = code_length(family, q, s, k)
    counts = Counter({0: 1})
    if kind is WeightKind.HAMMING:
        for j, count in valuation_census(q, s, k).items():
            if family is CodeFamily.ALPHA:
                weight = q ** (s * k) - q ** (s * (k - 1) + j)
            else:
                weight = beta_length(q, s, k) - q ** j * beta_length(q, s, k - 1)
            counts[weight] += count
    elif family is CodeFamily.ALPHA:
        counts[q ** (s * (k + 1) - 2) * (q - 1)] += q ** (s * k) - 1
    else:
        counts[q ** (s * k - 1)] += q ** k - 1
        # empty when s = 1
        if q ** (s * k) - q ** k:
            counts[q ** (s * k - k - 1) * (q ** k - 1)] += q ** (s * k) - q ** k
    return WeightDistribution(kind, counts, _metric_length(n, q, s, kind),
                              trivial=family is CodeFamily.BETA and k == 1)


def predicted_min_distance(family, kind, q: int, s: int, k: int) -> int:
    family, kind = parse_option(CodeFamily, family), parse_option(WeightKind, kind)
    if kind is WeightKind.HAMMING:
        if family is CodeFamily.ALPHA:
            return (q - 1) * q ** (s * k - 1)
        return q ** (s * (k - 1))
    if family is CodeFamily.ALPHA:
        return q ** (s * (k + 1) - 2) * (q - 1)
    if s == 1:
        return q ** (k - 1)
    return q ** (s * k - k - 1) * (q ** k - 1)


@dataclass(frozen=True)
class DistanceComparison:
    d_beta: int
    d_alpha: int

    @property
    def equal(self) -> bool:
        return self.d_beta == self.d_alpha

    def holds(self, q: int, s: int) -> bool:
        """d_beta <= d_alpha, with equality exactly for q = 2, s = 1."""
        return self.d_beta <= self.d_alpha and self.equal == ((q, s) == (2, 1))


def distance_comparison(q: int, s: int, k: int) -> DistanceComparison:
    return DistanceComparison(predicted_min_distance(CodeFamily.BETA, WeightKind.HAMMING, q, s, k),
                              predicted_min_distance(CodeFamily.ALPHA, WeightKind.HAMMING, q, s, k))


def classical_simplex_parameters(q: int, k: int) -> Tuple[int, int, int]:
    """[n, k, d] of the classical q-ary simplex code."""
    return (q ** k - 1) // (q - 1), k, q ** (k - 1)


##################
# Gray images
##################

@dataclass(frozen=True)
class GrayImageParameters:
    n: int
    size: int
    d: int
    distribution: Optional[WeightDistribution] = None

    @property
    def triple(self) -> Tuple[int, int, int]:
        return self.n, self.size, self.d

    def __str__(self) -> str:
        return f'({self.n}, {self.size}, {self.d})'


def gray_image_parameters(family, ring: Ring, k: int, verify: bool = False,
                          limits: Optional[Limits] = None) -> GrayImageParameters:
    family = parse_option(CodeFamily, family)
    if family is CodeFamily.BETA and k < 2:
        raise UnsupportedK('Gray image parameters of the beta code need k >= 2')
    q, s = ring.q, ring.s
    predicted = predicted_distribution(family, WeightKind.HOMOGENEOUS, q, s, k)
    n = code_length(family, q, s, k) * q ** (s - 1)
    expected = GrayImageParameters(n, q ** (s * k), min_distance(predicted))
    if not verify:
        return expected

    code = simplex_code(ring, family, k, limits)
    tally, distinct, length = Counter(), set(), None
    for _, words in codeword_batches(code, limits=limits):
        images = gray_images(ring, words)
        length = images.shape[1]
        weights = np.count_nonzero(images, axis=1)
        if np.any(weights != codeword_weights(ring, words, WeightKind.HOMOGENEOUS)):
            raise VerificationMismatch(f'w_H(Phi(c)) != w_Hom(c) for some codeword of {code}')
        distinct.update(image.tobytes() for image in images)
        values, counts = np.unique(weights, return_counts=True)
        tally.update(dict(zip(values.tolist(), counts.tolist())))
    empirical = WeightDistribution(WeightKind.HAMMING, tally, length)
    first = empirical.first_difference(predicted)
    if first is not None:
        raise VerificationMismatch(f'Gray image distribution {empirical} != predicted {predicted}', first)
    actual = GrayImageParameters(length, len(distinct), min_distance(empirical), empirical)
    if actual.triple != expected.triple:
        raise VerificationMismatch(f'Gray image parameters {actual} != predicted {expected}')
    return actual


##################
# Griesmer bound
##################

@dataclass(frozen=True)
class GriesmerReport:
    n: int
    k: int
    d: int
    bound: int

    @property
    def slack(self) -> int:
        return self.n - self.bound

    @property
    def optimal(self) -> bool:
        return self.slack == 0


def griesmer_report(n: int, k: int, d: int, q: int) -> GriesmerReport:
    if d < 1 or k < 1:
        raise ChainRingError(f'Griesmer bound needs d >= 1 and k >= 1, got d={d}, k={k}')
    bound = sum(-(-d // q ** i) for i in range(k))
    return GriesmerReport(n, k, d, bound)


def simplex_griesmer(family, ring: Ring, k: int) -> GriesmerReport:
    q, s = ring.q, ring.s
    return griesmer_report(code_length(family, q, s, k), k,
                           predicted_min_distance(family, WeightKind.HAMMING, q, s, k), q)


##################
# Z_{p^s} order form
##################

def additive_order(ring: Ring, c) -> int:
    """Smallest m > 0 with m c = 0."""
    c = np.asarray(c, dtype=np.int64)
    for m in range(1, ring.size + 1):
        if not np.any(ring.mul(m % ring.size, c)):
            return m
    return ring.size


def order_form_weights(ring: Ring, code: SimplexCode, c) -> Tuple[int, int]:
    require_zps(ring)
    c = np.asarray(c, dtype=np.int64)
    if not np.any(c):
        raise ZeroCodeword('The order form needs a nonzero codeword')
    p, s, k = ring.p, ring.s, code.k
    order = additive_order(ring, c)
    valuation = int(ring.vector_valuations(c))
    if order != p ** (s - valuation):
        raise VerificationMismatch(f'ord(c) = {order} != p^(s - v(c)) = {p ** (s - valuation)}')
    if code.family is CodeFamily.ALPHA:
        weight = p ** (s * k) - (p ** s // order) * p ** (s * (k - 1))
    elif code.family is CodeFamily.BETA:
        weight = beta_length(p, s, k) - (p ** s // order) * beta_length(p, s, k - 1)
    else:
        raise UnsupportedFamily(f'No order form for {code.family.value} codes')
    actual = int(np.count_nonzero(c))
    if weight != actual:
        raise VerificationMismatch(f'order-form weight {weight} != w_H(c) = {actual}', min(weight, actual))
    return order, weight


def order_form_homogeneous(ring: Ring, code: SimplexCode, c) -> Tuple[int, int]:
    """Order of c and its homogeneous weight, read off the order alone."""
    require_zps(ring)
    c = np.asarray(c, dtype=np.int64)
    if not np.any(c):
        raise ZeroCodeword('The order form needs a nonzero codeword')
    p, s, k = ring.p, ring.s, code.k
    order = additive_order(ring, c)
    if code.family is CodeFamily.ALPHA:
        weight = p ** (s * (k + 1) - 2) * (p - 1)
    elif code.family is CodeFamily.BETA:
        weight = p ** (s * k - 1) if order == p else p ** (s * k - k - 1) * (p ** k - 1)
    else:
        raise UnsupportedFamily(f'No order form for {code.family.value} codes')
    actual = int(ring.homogeneous_weights[c].sum())
    if weight != actual:
        raise VerificationMismatch(f'order-form weight {weight} != w_Hom(c) = {actual}', min(weight, actual))
    return order, weight


def order_census(p: int, s: int, k: int) -> Dict[int, int]:
    """Number of codewords of each additive order p^i, i = 1..s."""
    return {p ** i: p ** (k * i) - p ** (k * (i - 1)) for i in range(1, s + 1)}
