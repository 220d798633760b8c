"""The verification suite: every exhaustive check over a sweep of rings and k values."""
import logging
from collections import Counter, defaultdict
from typing import Dict, List, Optional, Sequence

import numpy as np
from tabulate import tabulate
from tqdm import tqdm

from common.constants import CodeFamily, RingFamily, WeightKind
from chainring.config import Limits, SweepEntry
from chainring.errors import CapExceeded, ChainRingError
from chainring.codes.simplex import SimplexCode, codeword_batches, simplex_code
from chainring.codes.structure import structure_checks
from chainring.codes.weights import (
    WeightDistribution,
    classical_simplex_parameters,
    distance_comparison,
    empirical_distribution,
    gray_image_parameters,
    order_census,
    order_form_homogeneous,
    order_form_weights,
    predicted_distribution,
    simplex_griesmer,
)
from chainring.helpers.checks import CheckResult, failed, passed, skipped
from chainring.ring.residue import gray_checks
from chainring.ring.ring import Ring, make_ring, ring_checks

logger = logging.getLogger(__name__)

DEFAULT_SWEEP = [
    SweepEntry({'family': 'zps', 'p': 2, 's': 2}, (1, 2, 3)),
    SweepEntry({'family': 'zps', 'p': 2, 's': 3}, (1, 2)),
    SweepEntry({'family': 'zps', 'p': 3, 's': 2}, (1, 2)),
    SweepEntry({'family': 'zps', 'p': 3, 's': 3}, (1,)),
    SweepEntry({'family': 'gr', 'p': 2, 'r': 2, 's': 2}, (1, 2)),
    SweepEntry({'family': 'fqu', 'p': 2, 's': 2}, (1, 2, 3)),
    SweepEntry({'family': 'fqu', 'p': 2, 'r': 2, 's': 2}, (1,)),
    SweepEntry({'family': 'zps', 'p': 3, 's': 1}, (1, 2, 3)),
]


def check_oracle(code: SimplexCode, kind: WeightKind, limits: Optional[Limits],
                 empirical: Optional[WeightDistribution] = None) -> CheckResult:
    name = f'{kind.value} distribution'
    empirical = empirical or empirical_distribution(code, kind, limits)
    predicted = predicted_distribution(code.family, kind, code.q, code.s, code.k)
    first = empirical.first_difference(predicted)
    if first is not None:
        return failed(name, f'empirical {empirical} != predicted {predicted}, first differing weight {first}')
    if empirical.total != code.size:
        return failed(name, f'{empirical.total} codewords, expected {code.size}')
    return passed(name, ('trivial ' if predicted.trivial else '') + str(predicted))


def check_gray_image(code: SimplexCode, limits: Optional[Limits]) -> CheckResult:
    name = 'gray image parameters'
    if code.family is CodeFamily.BETA and code.k < 2:
        return skipped(name, 'k = 1')
    try:
        parameters = gray_image_parameters(code.family, code.ring, code.k, verify=True, limits=limits)
    except ChainRingError as e:
        return failed(name, str(e))
    return passed(name, str(parameters))


def check_griesmer(code: SimplexCode) -> CheckResult:
    name = 'griesmer'
    report = simplex_griesmer(code.family, code.ring, code.k)
    if code.family is CodeFamily.BETA:
        expected = 0
    else:
        expected = code.q ** ((code.s - 1) * code.k)
    if report.slack != expected:
        return failed(name, f'slack {report.slack}, expected {expected}')
    return passed(name, f'bound {report.bound}, n {report.n}, slack {report.slack}')


def check_order_form(code: SimplexCode, limits: Optional[Limits]) -> CheckResult:
    name = 'order form'
    if code.ring.family is not RingFamily.ZPS:
        return skipped(name, f'{code.ring.name} is not Z_(p^s)')
    orders = Counter()
    try:
        for _, words in codeword_batches(code, limits=limits):
            for word in words[np.any(words, axis=1)]:
                order, _ = order_form_weights(code.ring, code, word)
                order_form_homogeneous(code.ring, code, word)
                orders[order] += 1
    except ChainRingError as e:
        return failed(name, str(e))
    census = order_census(code.ring.p, code.s, code.k)
    if orders != census:
        return failed(name, f'orders {dict(sorted(orders.items()))} != {census}')
    return passed(name, f'{sum(orders.values()):,} nonzero codewords, both weights')


def check_distance_comparison(ring: Ring, k: int) -> CheckResult:
    name = 'beta/alpha distance'
    comparison = distance_comparison(ring.q, ring.s, k)
    if not comparison.holds(ring.q, ring.s):
        return failed(name, f'd_beta={comparison.d_beta}, d_alpha={comparison.d_alpha}')
    relation = '=' if comparison.equal else '<'
    return passed(name, f'{comparison.d_beta} {relation} {comparison.d_alpha}')


def check_classical_anchor(code: SimplexCode, distribution: WeightDistribution) -> CheckResult:
    name = 'classical simplex'
    if code.s != 1:
        return skipped(name, 's > 1')
    expected = classical_simplex_parameters(code.q, code.k)
    actual = (code.n, code.k, distribution.min_distance())
    if actual != expected:
        return failed(name, f'[n, k, d] = {list(actual)}, expected {list(expected)}')
    return passed(name, str(list(actual)))


def check_ring_independence(records: Dict[tuple, list]) -> List[CheckResult]:
    """Rings sharing (q, s) must give identical distributions."""
    results = []
    for (q, s, family, kind, k), entries in sorted(records.items(), key=lambda item: str(item[0])):
        if len(entries) < 2:
            continue
        name, context = 'ring independence', f'q={q} s={s} {family.value} k={k} {kind.value}'
        (first_ring, first), *others = entries
        mismatched = [ring for ring, distribution in others if distribution.first_difference(first) is not None]
        if mismatched:
            results.append(failed(name, f'{", ".join(mismatched)} differ from {first_ring}').with_context(context))
        else:
            results.append(passed(name, ', '.join(ring for ring, _ in entries)).with_context(context))
    return results


def verify_code(code: SimplexCode, limits: Optional[Limits], records: Dict[tuple, list]) -> List[CheckResult]:
    results = structure_checks(code, limits)
    for kind in WeightKind:
        distribution = empirical_distribution(code, kind, limits)
        records[(code.q, code.s, code.family, kind, code.k)].append((code.ring.name, distribution))
        results.append(check_oracle(code, kind, limits, distribution))
        if kind is WeightKind.HAMMING and code.family is CodeFamily.BETA:
            results.append(check_classical_anchor(code, distribution))
    results += [check_gray_image(code, limits), check_griesmer(code), check_order_form(code, limits)]
    return results


def run_sweep(entries: Sequence[SweepEntry], limits: Optional[Limits] = None,
              progress: bool = False) -> List[CheckResult]:
    results = []
    records = defaultdict(list)
    tasks = [(entry, k) for entry in entries for k in entry.ks]
    rings = {}
    for entry, k in tqdm(tasks, 'Verifying', disable=not progress):
        key = str(sorted(entry.ring.items()))
        if key not in rings:
            ring = make_ring(entry.ring, limits)
            rings[key] = ring
            results += [r.with_context(ring.name) for r in ring_checks(ring) + gray_checks(ring)]
        ring = rings[key]
        results.append(check_distance_comparison(ring, k).with_context(f'{ring.name} k={k}'))
        for family in CodeFamily.simplex():
            context = f'{ring.name} {family} k={k}'
            try:
                code = simplex_code(ring, family, k, limits)
                results += [r.with_context(context) for r in verify_code(code, limits, records)]
            except CapExceeded as e:
                results.append(skipped('code', str(e)).with_context(context))
    results += check_ring_independence(records)
    logger.info(f'{sum(r.passed for r in results)}/{len(results)} checks passed')
    return results


def format_report(results: Sequence[CheckResult]) -> str:
    rows = [[r.context or '', r.name, r.status, r.detail] for r in results]
    return tabulate(rows, headers=['Instance', 'Check', 'Status', 'Detail'], tablefmt='simple')
