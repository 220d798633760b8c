import json

import pytest

from common.constants import ExitCode
from chainring.cli import main
from chainring.helpers.io import load_matrix

##########
# FIXTURES
##########

Z9 = ['--family', 'zps', '-p', '3', '-s', '2']
Z4 = ['-p', '2', '-s', '2']


#######
# TESTS
#######

def test_ring_summary(capsys):
    assert main(['ring'] + Z9) == ExitCode.OK
    out = capsys.readouterr().out
    assert 'q=3 s=2 |R|=9' in out
    assert 'ideals: 9 ⊃ 3 ⊃ 1' in out
    assert 'elements: 0 1 2 3 4 5 6 7 8' in out


def test_ring_field(capsys):
    assert main(['ring', '--family', 'zps', '-p', '2', '-s', '1']) == ExitCode.OK
    assert 'ring: F_2' in capsys.readouterr().out


def test_ring_galois(capsys):
    assert main(['ring', '--family', 'gr', '-p', '2', '-r', '2', '-s', '2']) == ExitCode.OK
    out = capsys.readouterr().out
    assert 'q=4' in out and '|R|=16' in out


def test_ring_truncates_long_lists(capsys):
    assert main(['ring', '-p', '3', '-s', '4']) == ExitCode.OK
    assert '(17 more)' in capsys.readouterr().out


def test_ring_from_config(tmp_path, capsys):
    path = tmp_path / 'ring.json'
    path.write_text(json.dumps({'family': 'fqu', 'p': 2, 'r': 2, 's': 2, 'modulus': [1, 1, 1]}))
    assert main(['ring', '--config', str(path)]) == ExitCode.OK
    assert 'F_4[u]/(u^2)' in capsys.readouterr().out


@pytest.mark.parametrize('argv', [
    ['ring', '-p', '4', '-s', '2'],
    ['ring', '--family', 'gr', '-p', '2', '-r', '2', '-s', '2', '--modulus', '1,0,1'],
    ['ring', '-p', '2'],
    ['ring', '--config', 'does-not-exist.json'],
    ['construct', 'gh_A', '--family', 'fqu', '-p', '2', '-s', '2'],
    ['gray', 'beta', '-k', '1'] + Z4,
])
def test_invalid_specs(argv):
    assert main(argv) == ExitCode.INVALID_SPEC


def test_construct_beta(capsys):
    assert main(['construct', 'beta', '-k', '2'] + Z9) == ExitCode.OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == 'beta 2 12 zps:p=3:r=1:s=2'
    assert out[1] == '1 1 1 1 1 1 1 1 1 0 3 6'
    assert out[-1] == 'type: (12; 2, 0)'


def test_construct_beta_k1(capsys):
    assert main(['construct', 'beta', '-k', '1'] + Z9) == ExitCode.OK
    assert capsys.readouterr().out.splitlines()[1] == '1'


def test_construct_alpha_to_files(tmp_path, capsys):
    text = tmp_path / 'alpha.txt'
    assert main(['construct', 'alpha', '-k', '2', '--out', str(text)] + Z4) == ExitCode.OK
    assert text.read_text().splitlines()[0] == 'alpha 2 16 zps:p=2:r=1:s=2'
    binary = tmp_path / 'alpha.safetensors'
    assert main(['construct', 'alpha', '-k', '2', '--out', str(binary)] + Z4) == ExitCode.OK
    assert load_matrix(binary).entries.shape == (2, 16)
    assert 'type: (16; 2, 0)' in capsys.readouterr().out


def test_construct_cap():
    assert main(['--max-columns', '8', 'construct', 'alpha', '-k', '2'] + Z4) == ExitCode.CAP_EXCEEDED


def test_weights_both_match(capsys):
    assert main(['weights', 'alpha', '-k', '2', '--kind', 'hamming', '--both'] + Z9) == ExitCode.OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == '{0:1, 54:8, 72:72}'
    assert out[-1] == 'MATCH'


def test_weights_beta_homogeneous(capsys):
    assert main(['weights', 'beta', '-k', '2', '--kind', 'homogeneous', '--both'] + Z4) == ExitCode.OK
    out = capsys.readouterr().out
    assert '{0:1, 6:12, 8:3}' in out and 'MATCH' in out


def test_weights_beta_k1_is_trivial(capsys):
    assert main(['weights', 'beta', '-k', '1'] + Z9) == ExitCode.OK
    assert 'trivial for k=1' in capsys.readouterr().out


def test_weights_csv_to_file(tmp_path):
    path = tmp_path / 'w.csv'
    argv = ['weights', 'beta', '-k', '2', '--empirical', '--format', 'csv', '--out', str(path)] + Z9
    assert main(argv) == ExitCode.OK
    assert path.read_text().splitlines() == ['weight,count', '0,1', '9,8', '11,72']


def test_weights_enumeration_cap(monkeypatch):
    monkeypatch.setenv('CHAINRING_MAX_CODEWORDS', '10')
    assert main(['weights', 'alpha', '-k', '2', '--both'] + Z4) == ExitCode.CAP_EXCEEDED


def test_gray(capsys):
    assert main(['gray', 'alpha', '-k', '1'] + Z4) == ExitCode.OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == '0 0 0 0 0 0 0 0'
    assert len(out) == 5
    assert out[-1] == 'parameters: (8, 4, 4)'


def test_gray_to_file(tmp_path, capsys):
    path = tmp_path / 'gray.txt'
    assert main(['gray', 'beta', '-k', '2', '--out', str(path)] + Z4) == ExitCode.OK
    assert len(path.read_text().splitlines()) == 16
    assert capsys.readouterr().out.strip() == 'parameters: (12, 16, 6)'


def test_verify_empty_sweep(tmp_path):
    path = tmp_path / 'sweep.json'
    path.write_text('[]')
    assert main(['verify', '--sweep', str(path)]) == ExitCode.OK


def test_verify_binary_field(tmp_path, capsys):
    path = tmp_path / 'sweep.json'
    path.write_text(json.dumps([{'ring': {'family': 'zps', 'p': 2, 's': 1}, 'k': [2]}]))
    assert main(['-q', 'verify', '--sweep', str(path)]) == ExitCode.OK
    out = capsys.readouterr().out
    assert '2 = 2' in out
    assert 'FAIL' not in out


def test_verify_invalid_sweep(tmp_path):
    path = tmp_path / 'sweep.json'
    path.write_text('{"ring": {}}')
    assert main(['verify', '--sweep', str(path)]) == ExitCode.INVALID_SPEC


def test_output_is_deterministic(capsys):
    main(['weights', 'beta', '-k', '2', '--format', 'structured', '--both'] + Z9)
    first = capsys.readouterr().out
    main(['weights', 'beta', '-k', '2', '--format', 'structured', '--both'] + Z9)
    assert capsys.readouterr().out == first


def test_construct_codeword_dump(tmp_path):
    path = tmp_path / 'words.txt'
    assert main(['construct', 'alpha', '-k', '1', '--codewords', str(path)] + Z4) == ExitCode.OK
    assert path.read_text().splitlines() == ['0 | 0 0 0 0', '1 | 0 1 2 3', '2 | 0 2 0 2', '3 | 0 3 2 1']


@pytest.mark.parametrize('argv,header', [
    (['construct', 'beta', '-k', '2', '--family', 'zps', '-p', '3', '-s', '2'], 'beta 2 12 zps:p=3:r=1:s=2'),
    (['construct', 'alpha', '-k', '1', '--family', 'gr', '-p', '2', '-r', '2', '-s', '2'],
     'alpha 1 16 gr:p=2:r=2:s=2:f=1,1,1'),
    (['construct', 'beta', '-k', '2', '--family', 'fqu', '-p', '2', '-s', '2'], 'beta 2 6 fqu:p=2:r=1:s=2:f=0,1'),
])
def test_construct_with_ring_family(argv, header, capsys):
    assert main(argv) == ExitCode.OK
    assert capsys.readouterr().out.splitlines()[0] == header


def test_weights_and_gray_over_other_families(capsys):
    gr = ['--family', 'gr', '-p', '2', '-r', '2', '-s', '2']
    assert main(['weights', 'beta', '-k', '2', '--both'] + gr) == ExitCode.OK
    assert capsys.readouterr().out.splitlines()[-1] == 'MATCH'
    assert main(['gray', 'alpha', '-k', '1', '--family', 'fqu', '-p', '2', '-s', '2']) == ExitCode.OK
    assert capsys.readouterr().out.splitlines()[-1] == 'parameters: (8, 4, 4)'


def test_unknown_ring_family_exits_cleanly():
    assert main(['construct', 'alpha', '-k', '1', '--family', 'field', '-p', '2', '-s', '2']) == ExitCode.INVALID_SPEC
