import io
import json
import os
import tempfile

import pytest

from chainring.codes.simplex import gh_A_matrix, simplex_code
from chainring.codes.weights import WeightDistribution, empirical_distribution
from chainring.errors import ParseError
from chainring.helpers.io import (
    distribution_record,
    format_distribution,
    format_matrix,
    load_matrix,
    parse_matrix,
    read_distribution_csv,
    read_matrix,
    save_matrix,
    write_codewords,
    write_gray_image,
    write_matrix,
)
from chainring.ring.ring import make_ring

##########
# FIXTURES
##########


@pytest.fixture
def z4():
    return make_ring({'p': 2, 's': 2})


@pytest.fixture
def gr42():
    return make_ring({'family': 'gr', 'p': 2, 'r': 2, 's': 2})


#######
# TESTS
#######

def test_matrix_text_format():
    z9 = make_ring({'p': 3, 's': 2})
    text = format_matrix(simplex_code(z9, 'beta', 2).generator)
    lines = text.splitlines()
    assert lines[0] == 'beta 2 12 zps:p=3:r=1:s=2'
    assert lines[1] == '1 1 1 1 1 1 1 1 1 0 3 6'
    assert lines[2] == '0 1 2 3 4 5 6 7 8 1 1 1'


def test_matrix_text_file(gr42, tmp_path):
    generator = simplex_code(gr42, 'beta', 2).generator
    path = tmp_path / 'beta.txt'
    write_matrix(generator, path)
    loaded = read_matrix(path)
    assert loaded == generator
    assert loaded.family == generator.family
    assert path.read_text().splitlines()[0] == 'beta 2 20 gr:p=2:r=2:s=2:f=1,1,1'


@pytest.mark.parametrize('text', [
    '',
    'beta 2 zps:p=3:r=1:s=2\n1 1\n',
    'beta 1 2 zps:p=2:r=1:s=2\n1\n',
    'beta 1 2 zps:p=2:r=1:s=2\n1 7\n',
    'delta 1 1 zps:p=2:r=1:s=2\n1\n',
])
def test_matrix_parse_errors(text):
    with pytest.raises(ParseError):
        parse_matrix(text)


def test_safetensors_persistence(z4):
    generator = gh_A_matrix(2, 2, (2, 1))
    with tempfile.NamedTemporaryFile(suffix='.safetensors', delete=False) as f:
        saved_path = f.name
    save_matrix(generator, saved_path)
    loaded = load_matrix(saved_path)
    os.unlink(saved_path)

    assert loaded == generator
    assert loaded.family == generator.family
    assert loaded.ring == z4


def test_gray_image_dump(z4):
    out = io.StringIO()
    assert write_gray_image(simplex_code(z4, 'alpha', 1), out) == 4
    lines = out.getvalue().splitlines()
    assert lines[0] == '0 0 0 0 0 0 0 0'
    assert all(len(line.split()) == 8 for line in lines)
    assert all(line.split().count('1') == 4 for line in lines[1:])


def test_codeword_dump(gr42):
    out = io.StringIO()
    assert write_codewords(simplex_code(gr42, 'alpha', 1), out) == 16
    assert out.getvalue().splitlines()[1].startswith('1:0 | 0:0 1:0 2:0')


def test_distribution_formats(z4, tmp_path):
    distribution = empirical_distribution(simplex_code(z4, 'alpha', 1), 'hamming')
    csv = format_distribution(distribution, 'csv', z4, 'alpha', 1)
    assert csv.splitlines() == ['weight,count', '0,1', '2,1', '3,2']

    record = json.loads(format_distribution(distribution, 'structured', z4, 'alpha', 1))
    assert record == {
        'ring': 'zps:p=2:r=1:s=2',
        'family': 'alpha',
        'k': 1,
        'kind': 'hamming',
        'counts': [[0, 1], [2, 1], [3, 2]],
        'min_distance': 2,
    }

    text = format_distribution(distribution, 'text', z4, 'alpha', 1)
    assert text.splitlines() == ['{0:1, 2:1, 3:2}', 'W(X,Y) = 1 X^4 Y^0 + 1 X^2 Y^2 + 2 X^1 Y^3']

    path = tmp_path / 'dist.csv'
    path.write_text(csv)
    assert read_distribution_csv(path, 'hamming', 4) == distribution


def test_record_of_degenerate_distribution(z4):
    record = distribution_record(WeightDistribution('hamming', {0: 1}, 1), z4, 'beta', 1)
    assert record['min_distance'] is None
    assert record['counts'] == [[0, 1]]
