import json
import os
import pathlib
from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Optional, Sequence, Type, TypeVar

from common.constants import MAX_CODEWORDS, MAX_COLUMNS, MAX_ELEMENTS, TABLE_ELEMENTS
from chainring.errors import ChainRingError, InvalidRingSpec, UnknownOption

MAX_CODEWORDS_ENV = 'CHAINRING_MAX_CODEWORDS'
MAX_ELEMENTS_ENV = 'CHAINRING_MAX_ELEMENTS'

Option = TypeVar('Option', bound=Enum)


def parse_option(kind: Type[Option], value) -> Option:
    if isinstance(value, kind):
        return value
    try:
        return kind(value)
    except ValueError:
        choices = [member.value for member in kind]
        raise UnknownOption(f'Unknown {kind.__name__} {value!r}, expected one of {choices}') from None


@dataclass(frozen=True)
class Limits:
    max_elements: int = MAX_ELEMENTS
    max_columns: int = MAX_COLUMNS
    max_codewords: int = MAX_CODEWORDS
    table_elements: int = TABLE_ELEMENTS

    def __post_init__(self):
        for name in ('max_elements', 'max_columns', 'max_codewords', 'table_elements'):
            value = getattr(self, name)
            if not isinstance(value, int) or value <= 0:
                raise ChainRingError(f'{name} must be a positive integer, got {value!r}')

    @classmethod
    def from_env(cls, **overrides) -> 'Limits':
        limits = cls()
        env_values = {
            'max_codewords': os.getenv(MAX_CODEWORDS_ENV),
            'max_elements': os.getenv(MAX_ELEMENTS_ENV),
        }
        for name, raw in env_values.items():
            if raw is None:
                continue
            try:
                limits = replace(limits, **{name: int(raw)})
            except ValueError as e:
                raise ChainRingError(f'Invalid value {raw!r} for {name} from the environment') from e
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return replace(limits, **overrides)


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class SweepEntry:
    ring: dict
    ks: Sequence[int]


def load_json(path) -> object:
    path = pathlib.Path(path)
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise InvalidRingSpec(f'{path} is not valid JSON: {e}') from e


def load_ring_config(path) -> dict:
    config = load_json(path)
    if not isinstance(config, dict):
        raise InvalidRingSpec(f'Ring specification file {path} must hold a JSON object')
    return config


def parse_sweep(entries: object, source: Optional[str] = None) -> List[SweepEntry]:
    where = f' in {source}' if source else ''
    if not isinstance(entries, list):
        raise InvalidRingSpec(f'A sweep must be a JSON list{where}')
    sweep = []
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict) or 'ring' not in entry:
            raise InvalidRingSpec(f'Sweep entry {i}{where} needs a "ring" object')
        ks = entry.get('k', [1])
        if isinstance(ks, int):
            ks = list(range(1, ks + 1))
        if not ks or any(not isinstance(k, int) or k < 1 for k in ks):
            raise InvalidRingSpec(f'Sweep entry {i}{where} has invalid k values {ks!r}')
        sweep.append(SweepEntry(ring=dict(entry['ring']), ks=tuple(ks)))
    return sweep


def load_sweep(path) -> List[SweepEntry]:
    return parse_sweep(load_json(path), source=str(path))
