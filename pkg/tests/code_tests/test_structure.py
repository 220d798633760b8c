import numpy as np
import pytest

from chainring.codes.simplex import simplex_code
from chainring.codes.structure import (
    check_alpha_trimmed_A,
    check_beta_rows,
    check_gamma_multiple_rows,
    element_counts,
    structure_checks,
)
from chainring.ring.ring import make_ring

##########
# FIXTURES
##########

CODES = [
    ({'p': 2, 's': 2}, 'alpha', 1),
    ({'p': 2, 's': 2}, 'alpha', 3),
    ({'p': 2, 's': 2}, 'beta', 1),
    ({'p': 2, 's': 2}, 'beta', 3),
    ({'p': 2, 's': 3}, 'alpha', 2),
    ({'p': 2, 's': 3}, 'beta', 2),
    ({'p': 3, 's': 2}, 'alpha', 2),
    ({'p': 3, 's': 2}, 'beta', 2),
    ({'p': 3, 's': 3}, 'beta', 1),
    ({'family': 'gr', 'p': 2, 'r': 2, 's': 2}, 'alpha', 2),
    ({'family': 'gr', 'p': 2, 'r': 2, 's': 2}, 'beta', 2),
    ({'family': 'fqu', 'p': 2, 's': 2}, 'beta', 3),
    ({'family': 'fqu', 'p': 2, 'r': 2, 's': 2}, 'alpha', 1),
    ({'p': 3, 's': 1}, 'alpha', 2),
    ({'p': 3, 's': 1}, 'beta', 3),
]


#######
# TESTS
#######

@pytest.mark.parametrize('config,family,k', CODES)
def test_structure_checks_pass(config, family, k):
    code = simplex_code(make_ring(config), family, k)
    for result in structure_checks(code):
        assert result.passed, f'{code}: {result.name} {result.detail}'


def test_element_counts():
    counts = element_counts(np.array([[0, 1, 1, 3], [2, 2, 2, 2]]), 4)
    assert counts.tolist() == [[1, 2, 0, 1], [0, 0, 4, 0]]


def test_beta_rows_skipped_for_k1():
    result = check_beta_rows(make_ring({'p': 2, 's': 2}), 1)
    assert result.skipped and result.status == 'SKIP'


def test_gamma_multiple_rows_z9():
    result = check_gamma_multiple_rows(make_ring({'p': 3, 's': 2}), 2)
    assert result.passed and not result.skipped


def test_trimmed_A_skipped_off_zps():
    result = check_alpha_trimmed_A(make_ring({'family': 'fqu', 'p': 2, 's': 2}), 1)
    assert result.skipped
