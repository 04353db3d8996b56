import io
import json

import numpy as np

import pytest

from witnesskit.cli.witnesskit_cli import main
from witnesskit.kernel.readers.json_reader import JSONFileReader
from witnesskit.kernel.witnesses.witness import CANONICAL, Witness
from witnesskit.kernel.writers.json_writer import dump_json, witness_to_dict


def _run(capsys, *argv):

    status = main(list(argv))
    captured = capsys.readouterr()

    return status, captured.out, captured.err


def _error(err):

    return json.loads(err.strip().splitlines()[-1])


@pytest.fixture
def ghz3(tmp_path, capsys):

    filename = str(tmp_path / 'ghz3.json')
    assert main(['--quiet', 'state', 'make', '--kind', 'ghz', '--qubits', '3', '--out', filename]) == 0
    capsys.readouterr()

    return filename


@pytest.fixture
def w3(tmp_path, capsys):

    filename = str(tmp_path / 'w3.json')
    assert main(['--quiet', 'state', 'make', '--kind', 'w', '--qubits', '3', '--out', filename]) == 0
    capsys.readouterr()

    return filename


def _build(capsys, tmp_path, state, name, *options):

    filename = str(tmp_path / name)
    status, _, _ = _run(capsys, '--quiet', 'witness-build', state, '--out', filename, *options)
    assert status == 0

    return filename


def test_state_make_to_stdout(capsys):

    status, out, _ = _run(capsys, 'state', 'make', '--kind', 'w', '--qubits', '3')

    assert status == 0
    data = json.loads(out)
    assert data['dims'] == [2, 2, 2]
    assert len(data['amplitudes']) == 8


def test_concurrence(capsys, ghz3, w3):

    status, out, _ = _run(capsys, 'concurrence', ghz3)
    assert status == 0
    assert abs(json.loads(out)['c_squared'] - 0.75) < 1.0e-12

    status, out, _ = _run(capsys, 'concurrence', w3, '--breakdown')
    assert status == 0
    data = json.loads(out)
    assert abs(data['c_squared'] - 2.0 / 3.0) < 1.0e-12
    assert len(data['w_terms']) == 6

    status, out, _ = _run(capsys, 'concurrence', ghz3, '--normalization', '2')
    assert abs(json.loads(out)['c_squared'] - 1.5) < 1.0e-12


def test_concurrence_from_standard_input(capsys, monkeypatch, ghz3):

    with open(ghz3) as fin:
        monkeypatch.setattr('sys.stdin', io.StringIO(fin.read()))

    status, out, _ = _run(capsys, 'concurrence', '-')

    assert status == 0
    assert abs(json.loads(out)['c_squared'] - 0.75) < 1.0e-12


def test_certify_canonical_ghz3(capsys, tmp_path, ghz3):

    witness = _build(capsys, tmp_path, ghz3, 'canonical.json', '--form', 'canonical')

    status, out, _ = _run(capsys, 'certify', witness, '--target', ghz3, '--restarts', '20', '--seed', '1')

    assert status == 0
    report = json.loads(out)
    assert abs(report['min_product_expectation'] - 0.25) < 1.0e-6
    assert abs(report['detection_value'] + 0.25) < 1.0e-12
    assert report['is_valid_witness'] and report['detects_target'] and report['converged']
    assert report['restarts'] == 20


def test_certify_is_deterministic(capsys, tmp_path, w3):

    witness = _build(capsys, tmp_path, w3, 'canonical.json', '--form', 'canonical')

    _, first, _ = _run(capsys, 'certify', witness, '--target', w3, '--restarts', '5', '--seed', '7', '--samples', '100')
    _, second, _ = _run(capsys, 'certify', witness, '--target', w3, '--restarts', '5', '--seed', '7', '--samples', '100')

    assert first == second
    assert json.loads(first)['positivity_probe_min'] is not None


def test_compare(capsys, tmp_path, ghz3):

    canonical = _build(capsys, tmp_path, ghz3, 'canonical.json', '--form', 'canonical')
    operator = _build(capsys, tmp_path, ghz3, 'operator.json', '--form', 'operator', '--kind', 'ghz')

    status, out, _ = _run(capsys, 'compare', canonical, operator)

    assert status == 0
    report = json.loads(out)
    assert abs(report['max_abs_diff'] - 1.5) < 1.0e-12
    assert len(report['positions']) == 4


def test_witness_eval(capsys, tmp_path, ghz3):

    witness = _build(capsys, tmp_path, ghz3, 'canonical.json', '--form', 'canonical')

    status, out, _ = _run(capsys, 'witness-eval', witness, ghz3)

    assert status == 0
    assert abs(json.loads(out)['expectation'] + 0.25) < 1.0e-12


def test_noise_threshold(capsys, tmp_path, w3):

    witness = _build(capsys, tmp_path, w3, 'canonical.json', '--form', 'canonical')

    status, out, _ = _run(capsys, 'noise-threshold', witness, '--target', w3)

    assert status == 0
    assert abs(json.loads(out)['p_star'] - 13.0 / 21.0) < 1.0e-12


def test_no_detection_exit_status(capsys, tmp_path, ghz3):

    psi = JSONFileReader(ghz3).to_pure_state()
    projector = Witness(psi.shape, np.outer(psi.amplitudes, psi.amplitudes.conj()), 0.0, 'projector', CANONICAL)
    witness = str(tmp_path / 'projector.json')
    dump_json(witness_to_dict(projector), witness)

    status, _, err = _run(capsys, 'noise-threshold', witness, '--target', ghz3)

    assert status == 4
    assert _error(err)['error'] == 'NoDetectionError'
    assert _error(err)['exit_status'] == 4


def test_identity_minus_projector_exit_status(capsys, tmp_path, ghz3):

    witness = _build(capsys, tmp_path, ghz3, 'complement.json', '--form', 'canonical', '--gamma', '1')

    status, out, err = _run(capsys, 'noise-threshold', witness, '--target', ghz3)

    assert status == 4
    assert out == ''
    assert _error(err)['error'] == 'NoDetectionError'


def test_no_convergence_exit_status(capsys, tmp_path, ghz3):

    witness = _build(capsys, tmp_path, ghz3, 'canonical.json', '--form', 'canonical')

    status, out, err = _run(capsys, 'certify', witness, '--target', ghz3, '--restarts', '2', '--max-sweeps', '1',
                            '--tolerance', '1e-300')

    assert status == 3
    assert json.loads(out)['converged'] is False
    assert _error(err)['error'] == 'NoConvergenceError'


def test_operator_form_kind_mismatch_is_warned(capsys, tmp_path, ghz3, w3):

    status, _, err = _run(capsys, 'witness-build', w3, '--form', 'operator', '--kind', 'ghz', '--out',
                          str(tmp_path / 'mismatch.json'))

    assert status == 0
    assert 'WARNING' in err
    assert 'does not match the 3-qubit GHZ state' in err

    status, _, err = _run(capsys, 'witness-build', ghz3, '--form', 'operator', '--kind', 'ghz', '--out',
                          str(tmp_path / 'match.json'))

    assert status == 0
    assert 'does not match' not in err


def test_non_hermitian_witness_is_a_validation_failure(capsys, tmp_path, w3):

    witness = _build(capsys, tmp_path, w3, 'operator.json', '--form', 'operator', '--kind', 'w')

    status, _, err = _run(capsys, 'certify', witness, '--target', w3, '--restarts', '2')

    assert status == 2
    assert _error(err)['error'] == 'NotHermitianError'

    hermitized = _build(capsys, tmp_path, w3, 'hermitized.json', '--form', 'operator', '--kind', 'w', '--hermitize')
    with open(hermitized) as fin:
        assert json.load(fin)['form'] == 'hermitized_operator_form'


def test_validation_errors(capsys, tmp_path):

    status, _, err = _run(capsys, 'concurrence', str(tmp_path / 'missing.json'))
    assert status == 2
    assert _error(err)['error'] == 'InvalidJSONFileError'

    status, _, err = _run(capsys, 'state', 'make', '--kind', 'ghz', '--qubits', '13')
    assert status == 2
    assert _error(err)['error'] == 'QubitLimitError'

    status, _, err = _run(capsys, 'state', 'make', '--kind', 'ghz', '--qubits', '1')
    assert status == 2
    assert _error(err)['error'] == 'BadArityError'

    status, _, _ = _run(capsys, 'state', 'make', '--kind', 'cluster', '--qubits', '3')
    assert status == 2


def test_pretty_output(capsys, ghz3):

    status, out, _ = _run(capsys, '--pretty', 'concurrence', ghz3, '--breakdown')

    assert status == 0
    assert 'c_squared' in out
    assert 'GHZ' in out
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)


def test_verbosity(capsys, ghz3):

    _, _, err = _run(capsys, '--verbose', 'concurrence', ghz3)
    assert err == '' or 'DEBUG' in err or 'INFO' in err

    _, _, err = _run(capsys, '--quiet', 'state', 'make', '--kind', 'ghz', '--qubits', '3')
    assert 'INFO' not in err
