"""This module implements the following classes and functions:
    - InvalidShapeError
    - InvalidStateError
    - LabelOutOfRangeError
    - BadArityError
    - BadProbabilityError
    - SystemShape
    - PureState
    - DensityOperator
    - from_amplitudes
    - basis_state
    - product_state
    - ghz_state
    - w_state
    - pure_to_density
    - white_noise_mix
    - random_local_vectors
    - random_product_state
    - random_separable_mixture

Basis labels follow the 1-based convention: the label l_j of subsystem j runs from 1 to N_j and is stored at offset
l_j - 1. The flat index of (l_1,...,l_m) is sum_j (l_j - 1) prod_{i>j} N_i.
"""

import logging

import numpy as np

from witnesskit.kernel.linalg.tensor_core import hermitian_eig, is_hermitian, product_vector

NORMALIZATION_TOLERANCE = 1.0e-10

DENSITY_TOLERANCE = 1.0e-10

POSITIVITY_TOLERANCE = 1.0e-8


class InvalidShapeError(Exception):
    """This class implements an exception raised when subsystem dimensions are invalid.
    """


class InvalidStateError(Exception):
    """This class implements an exception raised when a state does not fulfill its invariants.
    """


class LabelOutOfRangeError(Exception):
    """This class implements an exception raised when a basis label is out of range.
    """


class BadArityError(Exception):
    """This class implements an exception raised when a state family is requested for too few qubits.
    """


class BadProbabilityError(Exception):
    """This class implements an exception raised when a mixing weight is not a probability.
    """


class SystemShape:
    """This class implements the shape of a multipartite system, i.e. the dimension N_j of each subsystem.
    """

    def __init__(self, dims):
        """Constructor.

        Args:
            dims (list of int): the subsystem dimensions

        Raises:
            InvalidShapeError: if there is no subsystem or if any dimension is lower than 2
        """

        dims = tuple(int(n) for n in dims)

        if not dims:
            raise InvalidShapeError('A system must have at least one subsystem')

        if any(n < 2 for n in dims):
            raise InvalidShapeError('Invalid subsystem dimensions {}: every dimension must be >= 2'.format(dims))

        self._dims = dims

    def __eq__(self, other):

        return isinstance(other, SystemShape) and self._dims == other.dims

    def __hash__(self):

        return hash(self._dims)

    def __repr__(self):

        return 'SystemShape({})'.format(list(self._dims))

    @classmethod
    def qubits(cls, m):
        """Return the shape of a m-qubit register.

        Args:
            m (int): the number of qubits

        Returns:
            SystemShape: the shape
        """

        return cls([2] * m)

    @property
    def dims(self):
        """Returns the subsystem dimensions.

        Returns:
            tuple of int: the dimensions
        """

        return self._dims

    @property
    def m(self):
        """Returns the number of subsystems.
        """

        return len(self._dims)

    @property
    def joint_dim(self):
        """Returns the dimension of the joint Hilbert space.
        """

        return int(np.prod(self._dims))

    @property
    def is_qubits(self):
        """Returns True if every subsystem is a qubit.
        """

        return all(n == 2 for n in self._dims)

    def encode(self, labels):
        """Return the flat index of a tuple of 1-based labels.

        Args:
            labels (list of int): the labels l_j, 1 <= l_j <= N_j

        Returns:
            int: the flat row-major index

        Raises:
            LabelOutOfRangeError: if a label is out of range or if the number of labels is wrong
        """

        labels = tuple(int(l) for l in labels)

        if len(labels) != self.m:
            raise LabelOutOfRangeError('Expected {} labels, got {}'.format(self.m, len(labels)))

        for l, n in zip(labels, self._dims):
            if not 1 <= l <= n:
                raise LabelOutOfRangeError('Label {} out of range [1,{}]'.format(l, n))

        return int(np.ravel_multi_index([l - 1 for l in labels], self._dims))

    def decode(self, index):
        """Return the 1-based labels of a flat index.

        Args:
            index (int): the flat row-major index

        Returns:
            tuple of int: the labels

        Raises:
            LabelOutOfRangeError: if the index is out of range
        """

        index = int(index)

        if not 0 <= index < self.joint_dim:
            raise LabelOutOfRangeError('Index {} out of range [0,{}['.format(index, self.joint_dim))

        return tuple(int(o) + 1 for o in np.unravel_index(index, self._dims))


def _as_shape(shape):

    return shape if isinstance(shape, SystemShape) else SystemShape(shape)


def _frozen(array):

    array = np.array(array, dtype=np.complex128, copy=True)
    array.flags.writeable = False
    return array


class PureState:
    """This class implements a normalized pure state of a multipartite system.
    """

    def __init__(self, shape, amplitudes, tolerance=NORMALIZATION_TOLERANCE):
        """Constructor.

        Args:
            shape (SystemShape or list of int): the shape of the system
            amplitudes (numpy.ndarray): the row-major amplitudes
            tolerance (float): the tolerance on the squared norm

        Raises:
            InvalidStateError: if the amplitudes are not consistent with the shape or are not normalized
        """

        self._shape = _as_shape(shape)

        amplitudes = np.asarray(amplitudes, dtype=np.complex128).ravel()

        if amplitudes.shape[0] != self._shape.joint_dim:
            raise InvalidStateError('Expected {} amplitudes for dimensions {}, got {}'.format(self._shape.joint_dim,
                                                                                              self._shape.dims,
                                                                                              amplitudes.shape[0]))

        if not np.all(np.isfinite(amplitudes)):
            raise InvalidStateError('Amplitudes must be finite')

        norm2 = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm2 - 1.0) > tolerance:
            raise InvalidStateError('State is not normalized: squared norm = {}'.format(norm2))

        self._amplitudes = _frozen(amplitudes)

    def __repr__(self):

        return 'PureState(dims={})'.format(list(self._shape.dims))

    @property
    def shape(self):
        """Returns the shape of the system.

        Returns:
            SystemShape: the shape
        """

        return self._shape

    @property
    def dims(self):

        return self._shape.dims

    @property
    def amplitudes(self):
        """Returns the amplitudes.

        Returns:
            numpy.ndarray: the read-only row-major amplitudes
        """

        return self._amplitudes

    def amplitude(self, labels):
        """Returns the amplitude alpha_{l_1,...,l_m}.

        Args:
            labels (list of int): the 1-based labels

        Returns:
            complex: the amplitude
        """

        return complex(self._amplitudes[self._shape.encode(labels)])

    def tensor(self):
        """Returns the amplitudes as a rank-m tensor whose axis j is indexed by the offset of subsystem j.
        """

        return self._amplitudes.reshape(self._shape.dims)

    def permute(self, order):
        """Return the state with its subsystems reordered.

        Args:
            order (list of int): the 0-based subsystem order. The subsystem j of the new state is the subsystem
                order[j] of this state

        Returns:
            PureState: the permuted state
        """

        order = [int(o) for o in order]
        if sorted(order) != list(range(self._shape.m)):
            raise InvalidShapeError('{} is not a permutation of the {} subsystems'.format(order, self._shape.m))

        dims = [self._shape.dims[o] for o in order]

        return PureState(dims, np.transpose(self.tensor(), order).ravel())

    def labels_of(self, index):
        """Returns the 1-based labels of a flat index.
        """

        return self._shape.decode(index)

    def support(self, threshold=1.0e-12):
        """Returns the flat indexes of the amplitudes whose modulus exceeds a threshold.

        Args:
            threshold (float): the threshold

        Returns:
            numpy.ndarray: the indexes
        """

        return np.flatnonzero(np.abs(self._amplitudes) > threshold)


class DensityOperator:
    """This class implements a density operator acting on the joint Hilbert space of a multipartite system.
    """

    def __init__(self, shape, matrix, tolerance=DENSITY_TOLERANCE, validate=True):
        """Constructor.

        Args:
            shape (SystemShape or list of int): the shape of the system
            matrix (numpy.ndarray): the density matrix
            tolerance (float): the tolerance on Hermiticity and on the unit trace
            validate (bool): if True, the positivity of the matrix is checked as well

        Raises:
            InvalidStateError: if the matrix does not fulfill the density operator invariants
        """

        self._shape = _as_shape(shape)

        matrix = np.asarray(matrix, dtype=np.complex128)

        d = self._shape.joint_dim
        if matrix.shape != (d, d):
            raise InvalidStateError('Expected a {}x{} density matrix, got shape {}'.format(d, d, matrix.shape))

        if not np.all(np.isfinite(matrix)):
            raise InvalidStateError('Density matrix entries must be finite')

        if not is_hermitian(matrix, tolerance):
            raise InvalidStateError('Density matrix is not Hermitian')

        trace = np.trace(matrix)
        if abs(trace - 1.0) > tolerance:
            raise InvalidStateError('Density matrix trace is {} instead of 1'.format(trace))

        if validate:
            eigenvalues, _ = hermitian_eig(0.5 * (matrix + matrix.conj().T), method='lapack')
            if eigenvalues[0] < -POSITIVITY_TOLERANCE:
                raise InvalidStateError('Density matrix has a negative eigenvalue {}'.format(eigenvalues[0]))

        self._matrix = _frozen(matrix)

    def __repr__(self):

        return 'DensityOperator(dims={})'.format(list(self._shape.dims))

    @property
    def shape(self):
        """Returns the shape of the system.
        """

        return self._shape

    @property
    def dims(self):

        return self._shape.dims

    @property
    def matrix(self):
        """Returns the read-only density matrix.
        """

        return self._matrix


def from_amplitudes(dims, amplitudes):
    """Return the pure state of given row-major amplitudes.

    Args:
        dims (list of int): the subsystem dimensions
        amplitudes (list of complex): the amplitudes

    Returns:
        PureState: the state

    Raises:
        InvalidShapeError: if the dimensions are invalid
        InvalidStateError: if the amplitudes are not consistent with the dimensions or are not normalized
    """

    return PureState(SystemShape(dims), np.asarray(amplitudes, dtype=np.complex128))


def basis_state(shape, labels):
    """Return the computational basis state |l_1,...,l_m>.

    Args:
        shape (SystemShape or list of int): the shape of the system
        labels (list of int): the 1-based labels

    Returns:
        PureState: the basis state
    """

    shape = _as_shape(shape)

    amplitudes = np.zeros(shape.joint_dim, dtype=np.complex128)
    amplitudes[shape.encode(labels)] = 1.0

    return PureState(shape, amplitudes)


def product_state(local_vectors):
    """Return the product of normalized local vectors.

    Args:
        local_vectors (list of numpy.ndarray): one vector per subsystem

    Returns:
        PureState: the product state
    """

    local_vectors = [np.asarray(v, dtype=np.complex128) for v in local_vectors]
    local_vectors = [v / np.linalg.norm(v) for v in local_vectors]

    return PureState([v.shape[0] for v in local_vectors], product_vector(local_vectors))


def _check_arity(m, family):

    if m < 2:
        raise BadArityError('{} states are defined for at least 2 qubits, got {}'.format(family, m))


def ghz_state(m):
    """Return the m-qubit GHZ state (|1,...,1> + |2,...,2>)/sqrt(2).

    Args:
        m (int): the number of qubits

    Returns:
        PureState: the GHZ state

    Raises:
        BadArityError: if m < 2
    """

    _check_arity(m, 'GHZ')

    shape = SystemShape.qubits(m)

    amplitudes = np.zeros(shape.joint_dim, dtype=np.complex128)
    amplitudes[0] = amplitudes[-1] = 1.0 / np.sqrt(2.0)

    return PureState(shape, amplitudes)


def w_state(m):
    """Return the m-qubit W state, the totally symmetric state with m-1 labels 1 and a single label 2.

    Args:
        m (int): the number of qubits

    Returns:
        PureState: the W state

    Raises:
        BadArityError: if m < 2
    """

    _check_arity(m, 'W')

    shape = SystemShape.qubits(m)

    amplitudes = np.zeros(shape.joint_dim, dtype=np.complex128)
    for j in range(m):
        amplitudes[2 ** (m - 1 - j)] = 1.0 / np.sqrt(m)

    return PureState(shape, amplitudes)


def pure_to_density(psi):
    """Return the rank-1 density operator |psi><psi|.

    Args:
        psi (PureState): the state

    Returns:
        DensityOperator: the projector
    """

    v = psi.amplitudes

    return DensityOperator(psi.shape, np.outer(v, v.conj()), validate=False)


def white_noise_mix(psi, p):
    """Mix a pure state with white noise: p |psi><psi| + (1-p) I/d.

    Args:
        psi (PureState): the state
        p (float): the weight of the pure state

    Returns:
        DensityOperator: the mixture

    Raises:
        BadProbabilityError: if p is not in [0,1]
    """

    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise BadProbabilityError('Mixing weight {} is not in [0,1]'.format(p))

    d = psi.shape.joint_dim
    v = psi.amplitudes

    matrix = p * np.outer(v, v.conj()) + (1.0 - p) * np.eye(d, dtype=np.complex128) / d

    return DensityOperator(psi.shape, matrix, validate=False)


def random_local_vectors(shape, rng):
    """Draw one Haar-random normalized vector per subsystem.

    Each vector is a normalized vector of independent standard complex gaussians.

    Args:
        shape (SystemShape or list of int): the shape of the system
        rng (numpy.random.Generator): the random generator

    Returns:
        list of numpy.ndarray: the local vectors
    """

    shape = _as_shape(shape)

    vectors = []
    for n in shape.dims:
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        vectors.append(v / np.linalg.norm(v))

    return vectors


def random_product_state(shape, seed):
    """Return a random pure product state.

    Args:
        shape (SystemShape or list of int): the shape of the system
        seed (int): the seed. Equal seeds give identical states

    Returns:
        PureState: the product state
    """

    rng = np.random.default_rng(seed)

    return product_state(random_local_vectors(shape, rng))


def random_separable_mixture(shape, n_terms, seed):
    """Return a random convex mixture of pure product states with Dirichlet-uniform weights.

    Args:
        shape (SystemShape or list of int): the shape of the system
        n_terms (int): the number of product states in the mixture
        seed (int): the seed

    Returns:
        DensityOperator: the separable mixture
    """

    shape = _as_shape(shape)

    if n_terms < 1:
        raise ValueError('A mixture needs at least one term')

    rng = np.random.default_rng(seed)

    weights = rng.dirichlet(np.ones(n_terms))

    d = shape.joint_dim
    matrix = np.zeros((d, d), dtype=np.complex128)
    for w in weights:
        v = product_vector(random_local_vectors(shape, rng))
        matrix += w * np.outer(v, v.conj())

    logging.debug('Sampled a separable mixture of {} product states on dimensions {}'.format(n_terms, shape.dims))

    return DensityOperator(shape, matrix, validate=False)
