import numpy as np
import pytest

from common.constants import RingFamily
from chainring.config import Limits
from chainring.errors import (
    EmptyVector,
    IndexOutOfRange,
    InvalidRingSpec,
    MixedRings,
    NonPrimeP,
    ParseError,
    ReduciblePolynomial,
    UnknownOption,
    UnsupportedSize,
)
from chainring.ring.ring import (
    INFINITY,
    RingSpec,
    Valuation,
    arithmetic,
    homogeneous_weight,
    ideal_elements,
    make_ring,
    ring_checks,
    vector_valuation,
)

##########
# FIXTURES
##########

RING_CONFIGS = [
    {'family': 'zps', 'p': 2, 's': 2},
    {'family': 'zps', 'p': 2, 's': 3},
    {'family': 'zps', 'p': 3, 's': 2},
    {'family': 'zps', 'p': 3, 's': 3},
    {'family': 'zps', 'p': 3, 's': 1},
    {'family': 'gr', 'p': 2, 'r': 2, 's': 2},
    {'family': 'fqu', 'p': 2, 's': 2},
    {'family': 'fqu', 'p': 2, 'r': 2, 's': 2},
]


@pytest.fixture
def z9():
    return make_ring({'family': 'zps', 'p': 3, 's': 2})


@pytest.fixture
def gr42():
    return make_ring({'family': 'gr', 'p': 2, 'r': 2, 's': 2, 'modulus': [1, 1, 1]})


@pytest.fixture
def f2u2():
    return make_ring({'family': 'fqu', 'p': 2, 's': 2})


#######
# TESTS
#######

def test_zps_parameters(z9):
    assert (z9.p, z9.r, z9.q, z9.s, z9.size) == (3, 1, 3, 2, 9)
    assert z9.name == 'Z_9'
    assert z9.ideal_chain() == [9, 3, 1]


def test_zps_rank_is_integer_value(z9):
    assert int(z9.mul(5, 7)) == 35 % 9
    assert int(z9.add(5, 7)) == 3
    assert int(z9.sub(2, 7)) == 4
    assert str(z9.element(5) * z9.element(7)) == '8'


def test_galois_ring_multiplication(gr42):
    # w has rank 2, 3 + 3w has rank 15
    w = gr42.element(2)
    assert gr42.label(w.rank) == 'w'
    assert (w * w).rank == 15
    assert gr42.label(15) == '3+3w'


def test_galois_ring_gamma_multiples_in_order(gr42):
    labels = [gr42.label(x) for x in gr42.ideal_ranks(1)]
    assert labels == ['0', '2', '2w', '2+2w']


def test_fqu_truncates(f2u2):
    u = f2u2.gamma
    assert u.rank == 2
    assert (u * u).rank == 0
    one_plus_u = f2u2.element(3)
    assert (one_plus_u * one_plus_u) == f2u2.one


@pytest.mark.parametrize('config', RING_CONFIGS)
def test_ring_checks_pass(config):
    ring = make_ring(config)
    for result in ring_checks(ring):
        assert result.passed, f'{ring.name}: {result.name} {result.detail}'


@pytest.mark.parametrize('config', RING_CONFIGS)
def test_unit_count(config):
    ring = make_ring(config)
    assert len(ring.units()) == ring.q ** ring.s - ring.q ** (ring.s - 1)
    assert all(x.is_unit for x in ring.units())


def test_valuations(z9):
    assert z9.element(0).valuation == INFINITY
    assert z9.element(3).valuation == 1
    assert z9.element(6).valuation == 1
    assert z9.element(4).valuation == 0
    assert [x.rank for x in ideal_elements(z9, 1)] == [0, 3, 6]


def test_valuation_saturates():
    assert Valuation(1, 3) + Valuation(2, 3) == INFINITY
    assert Valuation(1, 3) + Valuation(1, 3) == 2
    assert Valuation(0, 3) < Valuation(INFINITY, 3)
    with pytest.raises(OverflowError):
        int(Valuation(INFINITY, 3))


def test_vector_valuation(z9):
    assert vector_valuation([z9.element(3), z9.element(6)]) == 1
    assert vector_valuation([z9.element(0), z9.element(0)]) == INFINITY
    with pytest.raises(EmptyVector):
        vector_valuation([])


def test_gamma_power(z9):
    assert z9.gamma_power(0) == z9.one
    assert z9.gamma_power(1).rank == 3
    assert z9.gamma_power(2) == z9.zero
    with pytest.raises(IndexOutOfRange):
        z9.gamma_power(-1)


def test_homogeneous_weights():
    z4 = make_ring({'p': 2, 's': 2})
    assert z4.homogeneous_weights.tolist() == [0, 1, 2, 1]
    z9 = make_ring({'p': 3, 's': 2})
    assert homogeneous_weight([z9.element(3), z9.element(1), z9.element(0)]) == 3 + 2
    f3 = make_ring({'p': 3, 's': 1})
    assert f3.homogeneous_weights.tolist() == [0, 1, 1]


def test_mixed_rings(z9, f2u2):
    with pytest.raises(MixedRings):
        z9.one + f2u2.one
    with pytest.raises(UnknownOption):
        arithmetic(z9.one, z9.one, 'div')


def test_ideal_out_of_range(z9):
    with pytest.raises(IndexOutOfRange):
        z9.ideal_ranks(3)
    with pytest.raises(IndexOutOfRange):
        z9.element(9)


@pytest.mark.parametrize('config,error', [
    ({'family': 'zps', 'p': 4, 's': 2}, NonPrimeP),
    ({'family': 'gr', 'p': 2, 'r': 2, 's': 2, 'modulus': [1, 0, 1]}, ReduciblePolynomial),
    ({'family': 'gr', 'p': 2, 'r': 2, 's': 2, 'modulus': [1, 1, 0]}, InvalidRingSpec),
    ({'family': 'gr', 'p': 5, 'r': 3, 's': 2}, InvalidRingSpec),
    ({'family': 'zps', 'p': 2, 'r': 2, 's': 2}, InvalidRingSpec),
    ({'family': 'field', 'p': 2, 's': 2}, InvalidRingSpec),
    ({'family': 'zps', 'p': 2}, InvalidRingSpec),
])
def test_invalid_specs(config, error):
    with pytest.raises(error):
        make_ring(config)


def test_size_cap():
    with pytest.raises(UnsupportedSize):
        make_ring({'p': 3, 's': 2}, Limits(max_elements=8))


def test_operations_without_tables_match_tables(gr42):
    # force the on-the-fly path and compare against the materialised tables
    slow = make_ring(gr42.spec, Limits(table_elements=4))
    a, b = np.meshgrid(np.arange(16), np.arange(16))
    for op in ('add', 'sub', 'mul'):
        assert np.array_equal(getattr(slow, op)(a, b), getattr(gr42, op)(a, b))


def test_token_round_trip(gr42):
    token = gr42.spec.token()
    assert token == 'gr:p=2:r=2:s=2:f=1,1,1'
    assert RingSpec.from_token(token) == gr42.spec
    assert RingSpec.from_token('zps:p=3:r=1:s=2').family is RingFamily.ZPS
    with pytest.raises(ParseError):
        RingSpec.from_token('zps:p3')


def test_serialize_and_parse(z9, gr42):
    assert z9.serialize(5) == '5'
    assert z9.parse('5') == 5
    assert gr42.serialize(15) == '3:3'
    assert gr42.parse('3:3') == 15
    with pytest.raises(ParseError):
        gr42.parse('4:0')
    with pytest.raises(ParseError):
        z9.parse('9')


def test_names():
    assert make_ring({'p': 2, 's': 1}).name == 'F_2'
    assert make_ring({'family': 'gr', 'p': 2, 'r': 2, 's': 2}).name == 'GR(4,2)'
    assert make_ring({'family': 'fqu', 'p': 2, 'r': 2, 's': 2}).name == 'F_4[u]/(u^2)'


def test_dict_round_trip_and_negation(gr42):
    assert RingSpec.from_dict(gr42.spec.to_dict()) == gr42.spec
    assert len(gr42) == 16
    w = gr42.element(2)
    assert (w + -w) == gr42.zero


def test_default_modulus_is_the_same_ring(gr42):
    implicit = make_ring({'family': 'gr', 'p': 2, 'r': 2, 's': 2})
    assert implicit == gr42
    assert hash(implicit) == hash(gr42)
    assert implicit.spec.modulus == (1, 1, 1)
    assert (implicit.one + gr42.one).rank == 2
    assert RingSpec.from_token(implicit.spec.token()) == implicit.spec
    assert make_ring({'p': 3, 's': 2}).spec.modulus is None
