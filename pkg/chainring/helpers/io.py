"""Readers and writers for generator matrices, Gray images, codeword dumps and distributions."""
import json
import logging
import pathlib
from typing import TextIO, Union

import numpy as np
import pandas as pd
from safetensors import safe_open
from safetensors.numpy import load_file, save_file

from common.constants import CodeFamily, OutputFormat
from chainring.codes.simplex import GeneratorMatrix, SimplexCode, codeword_batches
from chainring.codes.weights import WeightDistribution
from chainring.config import Limits, parse_option
from chainring.errors import DegenerateDistribution, ParseError
from chainring.ring.residue import gray_images
from chainring.ring.ring import Ring, RingSpec, make_ring

logger = logging.getLogger(__name__)

PathLike = Union[str, pathlib.Path]


##################
# generator matrices
##################

def matrix_header(generator: GeneratorMatrix) -> str:
    return f'{generator.family.value} {generator.k} {generator.n} {generator.ring.spec.token()}'


def format_matrix(generator: GeneratorMatrix) -> str:
    ring = generator.ring
    lines = [matrix_header(generator)]
    lines += [' '.join(ring.serialize(x) for x in row) for row in generator.entries]
    return '\n'.join(lines) + '\n'


def write_matrix(generator: GeneratorMatrix, path: PathLike) -> None:
    pathlib.Path(path).write_text(format_matrix(generator))
    logger.info(f'Wrote {generator} to {path}')


def parse_matrix(text: str, limits: Limits = None) -> GeneratorMatrix:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ParseError('Empty matrix file')
    header = lines[0].split()
    if len(header) != 4:
        raise ParseError(f'Malformed header {lines[0]!r}, expected "family k n ring"')
    family, k, n, token = header
    try:
        family, k, n = parse_option(CodeFamily, family), int(k), int(n)
    except ValueError as e:
        raise ParseError(f'Malformed header {lines[0]!r}') from e
    ring = make_ring(RingSpec.from_token(token), limits)
    rows = [line.split() for line in lines[1:]]
    if len(rows) != k or any(len(row) != n for row in rows):
        raise ParseError(f'Expected {k} rows of {n} entries')
    entries = np.array([[ring.parse(x) for x in row] for row in rows], dtype=np.int64)
    return GeneratorMatrix(ring, entries, family)


def read_matrix(path: PathLike, limits: Limits = None) -> GeneratorMatrix:
    return parse_matrix(pathlib.Path(path).read_text(), limits)


def save_matrix(generator: GeneratorMatrix, path: PathLike) -> None:
    metadata = {
        'family': generator.family.value,
        'ring': generator.ring.spec.token(),
        'k': str(generator.k),
        'n': str(generator.n),
    }
    save_file({'entries': np.ascontiguousarray(generator.entries)}, str(path), metadata=metadata)
    logger.info(f'Saved {generator} to {path}')


def load_matrix(path: PathLike, limits: Limits = None) -> GeneratorMatrix:
    with safe_open(str(path), framework='np') as f:
        metadata = f.metadata()
    if metadata is None or 'ring' not in metadata:
        raise ParseError(f'{path} has no ring metadata')
    ring = make_ring(RingSpec.from_token(metadata['ring']), limits)
    entries = load_file(str(path))['entries']
    return GeneratorMatrix(ring, entries, parse_option(CodeFamily, metadata['family']))


##################
# codeword streams
##################

def write_gray_image(code: SimplexCode, stream: TextIO, limits: Limits = None) -> int:
    """One Gray image per line as field indices; returns the number of lines."""
    lines = 0
    for _, words in codeword_batches(code, limits=limits):
        for image in gray_images(code.ring, words):
            stream.write(' '.join(str(x) for x in image) + '\n')
            lines += 1
    return lines


def write_codewords(code: SimplexCode, stream: TextIO, limits: Limits = None) -> int:
    """One codeword per line, prefixed by its coefficient vector."""
    ring = code.ring
    lines = 0
    for coefficients, words in codeword_batches(code, limits=limits):
        for a, c in zip(coefficients, words):
            stream.write(' '.join(ring.serialize(x) for x in a) + ' | ' + ' '.join(ring.serialize(x) for x in c) + '\n')
            lines += 1
    return lines


##################
# distributions
##################

def distribution_record(distribution: WeightDistribution, ring: Ring, family, k: int) -> dict:
    try:
        d = distribution.min_distance()
    except DegenerateDistribution:
        d = None
    return {
        'ring': ring.spec.token(),
        'family': parse_option(CodeFamily, family).value,
        'k': k,
        'kind': distribution.kind.value,
        'counts': [[w, c] for w, c in distribution.counts.items()],
        'min_distance': d,
    }


def distribution_frame(distribution: WeightDistribution) -> pd.DataFrame:
    return pd.DataFrame(list(distribution.counts.items()), columns=['weight', 'count'])


def format_distribution(distribution: WeightDistribution, fmt, ring: Ring, family, k: int) -> str:
    fmt = parse_option(OutputFormat, fmt)
    if fmt is OutputFormat.CSV:
        return distribution_frame(distribution).to_csv(index=False)
    if fmt is OutputFormat.STRUCTURED:
        return json.dumps(distribution_record(distribution, ring, family, k)) + '\n'
    return f'{distribution}\nW(X,Y) = {distribution.enumerator_text()}\n'


def read_distribution_csv(path: PathLike, kind, n: int) -> WeightDistribution:
    frame = pd.read_csv(path)
    if list(frame.columns) != ['weight', 'count']:
        raise ParseError(f'{path} must have the columns weight,count')
    return WeightDistribution(kind, dict(zip(frame['weight'].tolist(), frame['count'].tolist())), n)


def write_text(text: str, path: PathLike = None, stream: TextIO = None) -> None:
    if path is not None:
        pathlib.Path(path).write_text(text)
        logger.info(f'Wrote {path}')
    elif stream is not None:
        stream.write(text)
