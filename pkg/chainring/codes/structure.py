"""Exhaustive checks of the row, column and codeword structure of the simplex codes."""
import logging
from typing import List, Optional

import numpy as np

from common.constants import CodeFamily, RingFamily
from chainring.config import Limits
from chainring.codes.simplex import (
    BATCH_ENTRIES,
    SimplexCode,
    alpha_equals_trimmed_A,
    alpha_row_closed_form,
    beta_length,
    code_type,
    codeword_batches,
    codeword_valuation_check,
    simplex_alpha_matrix,
    simplex_beta_matrix,
    verify_column_distinctness,
)
from chainring.codes.weights import valuation_census
from chainring.helpers.checks import CheckResult, failed, passed, skipped
from chainring.ring.ring import Ring

logger = logging.getLogger(__name__)


def element_counts(words: np.ndarray, size: int) -> np.ndarray:
    """Per-row occurrence counts of every element, shape (batch, size)."""
    words = np.asarray(words, dtype=np.int64)
    counts = np.empty((len(words), size), dtype=np.int64)
    chunk = max(1, BATCH_ENTRIES // size)
    for lo in range(0, len(words), chunk):
        block = words[lo:lo + chunk]
        offsets = np.arange(len(block), dtype=np.int64)[:, None] * size
        counts[lo:lo + chunk] = np.bincount((block + offsets).ravel(), minlength=len(block) * size).reshape(-1, size)
    return counts


def check_alpha_rows(ring: Ring, k: int) -> CheckResult:
    name = 'alpha row closed form'
    entries = simplex_alpha_matrix(ring, k).entries
    for i in range(1, k + 1):
        if not np.array_equal(entries[i - 1], alpha_row_closed_form(ring, k, i)):
            return failed(name, f'row {i} differs from the closed form')
    return passed(name, f'{k} rows')


def check_gamma_multiple_rows(ring: Ring, k: int) -> CheckResult:
    """gamma^j times a row of G_k^alpha holds every element of <gamma^j> q^{j+s(k-1)} times."""
    name = 'gamma-multiple rows'
    entries = simplex_alpha_matrix(ring, k).entries
    n = entries.shape[1]
    for j in range(ring.s + 1):
        expected = ring.q ** (j + ring.s * (k - 1))
        ideal = np.zeros(ring.size, dtype=bool)
        ideal[ring.ideal_ranks(j)] = True
        scaled = ring.mul(ring.gamma_power_rank(j), entries)
        counts = element_counts(scaled, ring.size)
        if np.any(counts[:, ideal] != expected) or np.any(counts[:, ~ideal] != 0):
            return failed(name, f'gamma^{j} s_i does not cover <gamma^{j}> {expected} times')
        weights = np.count_nonzero(scaled, axis=1)
        if np.any(weights != n - expected):
            return failed(name, f'w_H(gamma^{j} s_i) != {n - expected}')
    return passed(name, f'j = 0..{ring.s}')


def check_beta_rows(ring: Ring, k: int) -> CheckResult:
    name = 'beta row content'
    if k < 2:
        return skipped(name, 'k = 1')
    entries = simplex_beta_matrix(ring, k).entries
    counts = element_counts(entries, ring.size)
    repeats = beta_length(ring.q, ring.s, k - 1)
    units = ring.q ** (ring.s * (k - 1))
    if np.any(counts[:, ring.ideal_ranks(1)] != repeats):
        return failed(name, f'some row does not hold each element of <gamma> {repeats} times')
    if np.any(counts[:, ring.unit_ranks()].sum(axis=1) != units):
        return failed(name, f'some row does not hold {units} units')
    return passed(name, f'{k} rows')


def check_column_distinctness(code: SimplexCode) -> CheckResult:
    name = 'column distinctness'
    result = verify_column_distinctness(code.generator)
    expected = code.family is CodeFamily.BETA
    if result.distinct != expected:
        detail = f'counterexample {result.counterexample}' if result.counterexample else 'no counterexample found'
        return failed(name, f'expected distinct={expected} for {code.family.value}, {detail}')
    return passed(name, f'distinct={result.distinct}')


def check_alpha_codewords(code: SimplexCode, limits: Optional[Limits] = None) -> CheckResult:
    """Every nonzero codeword is a permutation of gamma^v s_1 with v its valuation."""
    name = 'alpha codeword content'
    ring = code.ring
    first_row = code.generator.entries[0]
    references = np.stack([np.sort(ring.mul(ring.gamma_power_rank(v), first_row)) for v in range(ring.s + 1)])
    for _, words in codeword_batches(code, limits=limits):
        valuations = ring.vector_valuations(words)
        if np.any(np.sort(words, axis=1) != references[valuations]):
            return failed(name, 'some codeword is not a permutation of gamma^v s_1')
    return passed(name, f'{code.size:,} codewords')


def check_beta_codewords(code: SimplexCode, limits: Optional[Limits] = None) -> CheckResult:
    name = 'beta codeword content'
    ring = code.ring
    repeats = beta_length(ring.q, ring.s, code.k - 1)
    units = ring.q ** (ring.s * (code.k - 1))
    for _, words in codeword_batches(code, limits=limits):
        valuations = ring.vector_valuations(words)
        counts = element_counts(words, ring.size)
        for v in range(ring.s):
            rows = counts[valuations == v]
            if not len(rows):
                continue
            if np.any(rows[:, ring.ideal_ranks(v + 1)] != ring.q ** v * repeats):
                return failed(name, f'valuation {v}: <gamma^{v + 1}> is not repeated {ring.q ** v * repeats} times')
            if np.any(rows[:, ring.valuations == v].sum(axis=1) != units):
                return failed(name, f'valuation {v}: not {units} coordinates of valuation exactly {v}')
    return passed(name, f'{code.size:,} codewords')


def check_code_type(code: SimplexCode, limits: Optional[Limits] = None) -> CheckResult:
    name = 'code type'
    distinct = set()
    for _, words in codeword_batches(code, limits=limits):
        distinct.update(word.tobytes() for word in words)
    if len(distinct) != code.size:
        return failed(name, f'{len(distinct):,} distinct codewords, expected {code.size:,}')
    columns = {column.tobytes() for column in np.ascontiguousarray(code.generator.entries.T)}
    for i, unit_vector in enumerate(np.eye(code.k, dtype=np.int64) * code.ring.one.rank):
        if unit_vector.tobytes() not in columns:
            return failed(name, f'e_{i + 1} is not a column of the generator matrix')
    return passed(name, code_type(code))


def check_valuation_census(code: SimplexCode, limits: Optional[Limits] = None) -> CheckResult:
    name = 'valuation census'
    ring = code.ring
    tally = np.zeros(ring.s + 1, dtype=np.int64)
    for _, words in codeword_batches(code, limits=limits):
        tally += np.bincount(ring.vector_valuations(words), minlength=ring.s + 1)
    expected = valuation_census(ring.q, ring.s, code.k)
    for j, count in expected.items():
        if tally[j] != count:
            return failed(name, f'{tally[j]} codewords of valuation {j}, expected {count}')
    if tally[ring.s] != 1:
        return failed(name, f'{tally[ring.s]} codewords of infinite valuation')
    return passed(name, ', '.join(f'{j}:{count}' for j, count in expected.items()))


def check_codeword_valuations(code: SimplexCode, limits: Optional[Limits] = None) -> CheckResult:
    name = 'codeword valuations'
    if not codeword_valuation_check(code, limits):
        return failed(name, 'v(c) != min v(a_i) for some codeword')
    return passed(name, f'{code.size:,} codewords')


def check_alpha_trimmed_A(ring: Ring, k: int) -> CheckResult:
    name = 'alpha = trimmed A'
    if ring.family is not RingFamily.ZPS:
        return skipped(name, f'{ring.name} is not Z_(p^s)')
    if not alpha_equals_trimmed_A(ring, k):
        return failed(name, f'G_{k}^alpha differs from A^({k + 1},0,...) without its last row')
    return passed(name)


def structure_checks(code: SimplexCode, limits: Optional[Limits] = None) -> List[CheckResult]:
    ring, k = code.ring, code.k
    results = [check_column_distinctness(code), check_code_type(code, limits),
               check_valuation_census(code, limits), check_codeword_valuations(code, limits)]
    if code.family is CodeFamily.ALPHA:
        results += [check_alpha_rows(ring, k), check_gamma_multiple_rows(ring, k),
                    check_alpha_codewords(code, limits), check_alpha_trimmed_A(ring, k)]
    else:
        results += [check_beta_rows(ring, k), check_beta_codewords(code, limits)]
    logger.debug(f'Ran {len(results)} structure checks on {code}')
    return results
