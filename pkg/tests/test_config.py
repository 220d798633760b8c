import json

import pytest

from common.constants import MAX_CODEWORDS
from chainring.config import Limits, load_ring_config, load_sweep, parse_sweep
from chainring.errors import ChainRingError, InvalidRingSpec


def test_limits_from_env(monkeypatch):
    monkeypatch.setenv('CHAINRING_MAX_CODEWORDS', '1000')
    monkeypatch.delenv('CHAINRING_MAX_ELEMENTS', raising=False)
    limits = Limits.from_env()
    assert limits.max_codewords == 1000
    assert Limits.from_env(max_codewords=5, max_elements=None).max_codewords == 5


def test_limits_defaults(monkeypatch):
    monkeypatch.delenv('CHAINRING_MAX_CODEWORDS', raising=False)
    assert Limits.from_env().max_codewords == MAX_CODEWORDS


@pytest.mark.parametrize('kwargs', [{'max_codewords': 0}, {'max_elements': -1}, {'table_elements': 1.5}])
def test_limits_must_be_positive(kwargs):
    with pytest.raises(ChainRingError):
        Limits(**kwargs)


def test_limits_bad_env(monkeypatch):
    monkeypatch.setenv('CHAINRING_MAX_ELEMENTS', 'lots')
    with pytest.raises(ChainRingError):
        Limits.from_env()


def test_parse_sweep():
    sweep = parse_sweep([{'ring': {'p': 2, 's': 2}, 'k': 3}, {'ring': {'p': 3, 's': 1}, 'k': [2]},
                         {'ring': {'p': 5, 's': 1}}])
    assert [entry.ks for entry in sweep] == [(1, 2, 3), (2,), (1,)]


@pytest.mark.parametrize('entries', [{}, [{'k': 1}], [{'ring': {'p': 2, 's': 2}, 'k': [0]}], [{'ring': {}, 'k': []}]])
def test_parse_sweep_errors(entries):
    with pytest.raises(InvalidRingSpec):
        parse_sweep(entries)


def test_config_files(tmp_path):
    ring_path = tmp_path / 'ring.json'
    ring_path.write_text(json.dumps({'family': 'gr', 'p': 2, 'r': 2, 's': 2}))
    assert load_ring_config(ring_path)['family'] == 'gr'
    sweep_path = tmp_path / 'sweep.json'
    sweep_path.write_text(json.dumps([{'ring': {'p': 2, 's': 2}, 'k': [1, 2]}]))
    assert load_sweep(sweep_path)[0].ks == (1, 2)
    bad = tmp_path / 'bad.json'
    bad.write_text('{')
    with pytest.raises(InvalidRingSpec):
        load_ring_config(bad)
    bad.write_text('[]')
    with pytest.raises(InvalidRingSpec):
        load_ring_config(bad)
