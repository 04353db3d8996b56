import numpy as np
from numpy.testing import assert_allclose, assert_array_equal

import pytest

from witnesskit.kernel.operators.phase_povm import BadPositionsError, PhaseAssignment, SignedOperator, delta, \
    delta_tilde, ghz_class_operator, local_signs, sign_restrict, triangular_split, w_class_operator
from witnesskit.kernel.states.quantum_states import SystemShape

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)

SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)


def test_delta_single_qubit():

    assert_array_equal(delta(PhaseAssignment(2, 0.5 * np.pi)), np.array([[1, 1j], [-1j, 1]]))
    assert_array_equal(delta(PhaseAssignment(2, 0.0)), np.ones((2, 2)))


def test_delta_tilde_at_pi_is_sigma_x():

    assert_array_equal(delta_tilde(PhaseAssignment(2, np.pi)), SIGMA_X)


def test_delta_tilde_at_half_pi_is_sigma_y():

    assert_array_equal(delta_tilde(PhaseAssignment(2, 0.5 * np.pi)), SIGMA_Y)


@pytest.mark.parametrize('n', [2, 3, 5])
@pytest.mark.parametrize('phi', [0.3, 0.5 * np.pi, np.pi, 2.0])
def test_delta_properties(n, phi):

    pa = PhaseAssignment(n, phi)

    d = delta(pa)
    dt = delta_tilde(pa)

    assert_allclose(d, d.conj().T)
    assert_allclose(np.diag(d), np.ones(n))
    assert_allclose(np.diag(dt), np.zeros(n))
    assert_allclose(d + dt, np.eye(n))
    assert_allclose(pa.phases(), -pa.phases().T)


def test_phase_assignment_rejects_small_dimension():

    with pytest.raises(ValueError):
        PhaseAssignment(1, 0.0)


def test_local_signs():

    assert_array_equal(local_signs(3), np.array([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]))


def test_w_class_operator_three_qubits():

    a = w_class_operator(SystemShape.qubits(3), 1, 2)

    assert_allclose(a.matrix, np.kron(np.kron(SIGMA_Y, SIGMA_Y), np.eye(2)))
    assert a.is_hermitian()

    # |1,1,1> -> |2,2,1>: '+' on qubits 1 and 2, the identity factor is unsigned
    assert a.signature_at(0, 6) == (1, 1, 0)
    assert a.signature_string(6, 0) == '--0'
    assert a.signature_string(2, 4) == '+-0'


def test_ghz_class_operator_three_qubits():

    a = ghz_class_operator(SystemShape.qubits(3), 1, 2)

    assert_allclose(a.matrix, np.kron(np.kron(SIGMA_Y, SIGMA_Y), SIGMA_X))
    assert a.signature_string(0, 7) == '+++'
    assert a.signature_string(7, 0) == '---'
    assert a.signature_string(1, 6) == '++-'


def test_ghz_class_operator_qubit_positions():

    a = ghz_class_operator([2, 2, 2], 1, 3)

    assert_allclose(a.matrix, np.kron(np.kron(SIGMA_Y, SIGMA_X), SIGMA_Y))


def test_bad_positions():

    shape = SystemShape.qubits(3)

    for r1, r2 in [(2, 2), (2, 1), (0, 1), (1, 4)]:
        with pytest.raises(BadPositionsError):
            w_class_operator(shape, r1, r2)
        with pytest.raises(BadPositionsError):
            ghz_class_operator(shape, r1, r2)


def test_sign_restrict_ghz():

    restricted = sign_restrict(ghz_class_operator(SystemShape.qubits(3), 1, 2))

    expected = np.zeros((8, 8), dtype=np.complex128)
    expected[0, 7] = expected[7, 0] = -1.0

    assert_allclose(restricted, expected)


def test_sign_restrict_w():

    restricted = sign_restrict(w_class_operator(SystemShape.qubits(3), 1, 2))

    nonzero = list(zip(*np.nonzero(restricted)))

    assert sorted(nonzero) == [(0, 6), (1, 7), (6, 0), (7, 1)]
    assert_allclose(restricted[0, 6], -1.0)
    assert_allclose(restricted[6, 0], -1.0)


def test_sign_restrict_entries_are_uniform():

    a = ghz_class_operator(SystemShape([2, 3, 2]), 1, 3)

    restricted = sign_restrict(a)

    for row, col in zip(*np.nonzero(restricted)):
        signature = set(a.signature_at(row, col)) - {0}
        assert len(signature) == 1

    for row, col in zip(*np.nonzero(a.matrix - restricted)):
        signature = set(a.signature_at(row, col)) - {0}
        assert signature == {1, -1}


def test_triangular_split():

    a = w_class_operator(SystemShape.qubits(2), 1, 2)

    upper, lower = triangular_split(a)

    assert_allclose(upper + lower + np.diag(np.diag(a.matrix)), a.matrix)
    assert np.all(np.tril(upper) == 0)
    assert np.all(np.triu(lower) == 0)

    upper, lower = triangular_split(np.arange(9.0).reshape(3, 3))
    assert_array_equal(upper, [[0, 1, 2], [0, 0, 5], [0, 0, 0]])
    assert_array_equal(lower, [[0, 0, 0], [3, 0, 0], [6, 7, 0]])


def test_signed_operator_rejects_wrong_factor_count():

    with pytest.raises(BadPositionsError):
        SignedOperator([2, 2], [np.eye(2)], [np.zeros((2, 2))])
