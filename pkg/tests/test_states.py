import numpy as np
from numpy.testing import assert_allclose

import pytest

from hypothesis import given
from hypothesis import strategies as st

from witnesskit.kernel.states.quantum_states import BadArityError, BadProbabilityError, DensityOperator, \
    InvalidShapeError, InvalidStateError, LabelOutOfRangeError, PureState, SystemShape, basis_state, from_amplitudes, \
    ghz_state, product_state, pure_to_density, random_product_state, random_separable_mixture, w_state, white_noise_mix


def test_system_shape():

    shape = SystemShape([2, 3, 2])

    assert shape.dims == (2, 3, 2)
    assert shape.m == 3
    assert shape.joint_dim == 12
    assert not shape.is_qubits
    assert SystemShape.qubits(3).is_qubits
    assert SystemShape.qubits(3) == SystemShape([2, 2, 2])

    with pytest.raises(InvalidShapeError):
        SystemShape([])

    with pytest.raises(InvalidShapeError):
        SystemShape([2, 1])


def test_codec_examples():

    shape = SystemShape.qubits(3)

    assert shape.encode((1, 1, 1)) == 0
    assert shape.encode((2, 2, 2)) == 7
    assert shape.encode((1, 2, 1)) == 2
    assert shape.decode(4) == (2, 1, 1)

    assert SystemShape([2, 3, 2]).encode((2, 3, 1)) == 1 * 6 + 2 * 2 + 0


@given(st.lists(st.integers(min_value=2, max_value=4), min_size=1, max_size=4), st.data())
def test_codec_is_a_bijection(dims, data):

    shape = SystemShape(dims)

    index = data.draw(st.integers(min_value=0, max_value=shape.joint_dim - 1))

    labels = shape.decode(index)

    assert all(1 <= l <= n for l, n in zip(labels, dims))
    assert shape.encode(labels) == index


def test_codec_errors():

    shape = SystemShape.qubits(2)

    with pytest.raises(LabelOutOfRangeError):
        shape.encode((0, 1))

    with pytest.raises(LabelOutOfRangeError):
        shape.encode((1, 3))

    with pytest.raises(LabelOutOfRangeError):
        shape.encode((1,))

    with pytest.raises(LabelOutOfRangeError):
        shape.decode(4)


def test_ghz_state():

    psi = ghz_state(3)

    expected = np.zeros(8)
    expected[0] = expected[7] = 1.0 / np.sqrt(2.0)

    assert_allclose(psi.amplitudes, expected)
    assert abs(psi.amplitude((2, 2, 2)) - 1.0 / np.sqrt(2.0)) < 1.0e-15
    assert list(psi.support()) == [0, 7]

    with pytest.raises(BadArityError):
        ghz_state(1)


def test_w_state():

    psi = w_state(3)

    assert list(psi.support()) == [1, 2, 4]
    assert_allclose(np.abs(psi.amplitudes[[1, 2, 4]]) ** 2, [1.0 / 3.0] * 3)

    for m in range(2, 7):
        psi = w_state(m)
        assert len(psi.support()) == m
        assert abs(np.vdot(psi.amplitudes, psi.amplitudes) - 1.0) < 1.0e-12

    with pytest.raises(BadArityError):
        w_state(0)


def test_pure_state_validation():

    with pytest.raises(InvalidStateError):
        PureState([2, 2], np.ones(4))

    with pytest.raises(InvalidStateError):
        PureState([2, 2], np.ones(3) / np.sqrt(3.0))

    with pytest.raises(InvalidStateError):
        PureState([2], [np.nan, 1.0])

    psi = from_amplitudes([2, 2], [1.0 / np.sqrt(2.0), 0.0, 0.0, 1.0j / np.sqrt(2.0)])
    assert psi.dims == (2, 2)
    assert psi.labels_of(3) == (2, 2)

    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0.0


def test_basis_and_product_states():

    psi = basis_state([2, 3], (2, 2))
    assert list(psi.support()) == [4]

    phi = product_state([[1.0, 1.0], [1.0, 0.0, 0.0]])
    assert phi.dims == (2, 3)
    assert_allclose(phi.amplitudes, [1.0 / np.sqrt(2.0), 0.0, 0.0, 1.0 / np.sqrt(2.0), 0.0, 0.0])


def test_permute():

    psi = basis_state([2, 3], (1, 3))

    permuted = psi.permute([1, 0])

    assert permuted.dims == (3, 2)
    assert list(permuted.support()) == [SystemShape([3, 2]).encode((3, 1))]

    with pytest.raises(InvalidShapeError):
        psi.permute([0, 0])


def test_pure_to_density():

    rho = pure_to_density(ghz_state(2))

    assert abs(np.trace(rho.matrix) - 1.0) < 1.0e-12
    assert_allclose(rho.matrix @ rho.matrix, rho.matrix, atol=1.0e-12)
    assert abs(rho.matrix[0, 3] - 0.5) < 1.0e-15


def test_white_noise_mix():

    psi = ghz_state(3)

    assert_allclose(white_noise_mix(psi, 1.0).matrix, pure_to_density(psi).matrix)
    assert_allclose(white_noise_mix(psi, 0.0).matrix, np.eye(8) / 8.0)

    rho = white_noise_mix(psi, 0.3)
    assert abs(np.trace(rho.matrix) - 1.0) < 1.0e-12
    assert np.linalg.eigvalsh(rho.matrix).min() >= -1.0e-12

    with pytest.raises(BadProbabilityError):
        white_noise_mix(psi, 1.5)

    with pytest.raises(BadProbabilityError):
        white_noise_mix(psi, -0.1)


def test_density_operator_validation():

    with pytest.raises(InvalidStateError):
        DensityOperator([2], np.eye(2))

    with pytest.raises(InvalidStateError):
        DensityOperator([2], np.array([[0.5, 1.0], [0.0, 0.5]]))

    with pytest.raises(InvalidStateError):
        DensityOperator([2], np.diag([1.5, -0.5]))

    rho = DensityOperator([2], np.diag([1.5, -0.5]), validate=False)
    assert rho.dims == (2,)


def test_random_product_state_is_seeded():

    a = random_product_state([2, 3], 7)
    b = random_product_state([2, 3], 7)
    c = random_product_state([2, 3], 8)

    assert_allclose(a.amplitudes, b.amplitudes)
    assert not np.allclose(a.amplitudes, c.amplitudes)

    # a product state has a rank one 2x3 amplitude matrix
    assert np.linalg.matrix_rank(a.tensor(), tol=1.0e-10) == 1


def test_random_separable_mixture():

    rho = random_separable_mixture([2, 2], 4, 11)

    assert abs(np.trace(rho.matrix) - 1.0) < 1.0e-12
    assert np.linalg.eigvalsh(rho.matrix).min() >= -1.0e-12

    with pytest.raises(ValueError):
        random_separable_mixture([2, 2], 0, 11)
