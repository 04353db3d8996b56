"""This module implements the following classes and functions:
    - BadPositionsError
    - PhaseAssignment
    - SignedOperator
    - delta
    - delta_tilde
    - w_class_operator
    - ghz_class_operator
    - triangular_split
    - sign_restrict

The phase of the local POVM entry (k,l) is +phi for k < l and -phi for k > l. A joint entry of a tensor operator
carries one sign per subsystem: '+' when the local entry of that subsystem sits above the local diagonal, '-' when
it sits below and '0' when the local entry is diagonal.
"""

import numpy as np

from witnesskit.kernel.linalg.tensor_core import is_hermitian, kron_all
from witnesskit.kernel.states.quantum_states import SystemShape

SIGN_SYMBOLS = {1: '+', -1: '-', 0: '0'}


class BadPositionsError(Exception):
    """This class implements an exception raised when the pair of subsystems of a class operator is invalid.
    """


def _unit_phase(phi):
    """Return exp(i phi), exactly for integer multiples of pi/2.
    """

    quarter_turns = phi / (0.5 * np.pi)
    nearest = np.rint(quarter_turns)
    if abs(quarter_turns - nearest) < 1.0e-15 * max(1.0, abs(quarter_turns)):
        return (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)[int(nearest) % 4]

    return complex(np.exp(1j * phi))


class PhaseAssignment:
    """This class implements a uniform phase assignment phi_{k,l} = phi for all k < l of a N-level subsystem.
    """

    def __init__(self, n, phi):
        """Constructor.

        Args:
            n (int): the local dimension
            phi (float): the phase in radians
        """

        n = int(n)
        if n < 2:
            raise ValueError('Local dimension must be >= 2, got {}'.format(n))

        self._n = n

        self._phi = float(phi)

    @property
    def n(self):

        return self._n

    @property
    def phi(self):

        return self._phi

    def phases(self):
        """Returns the antisymmetric matrix of phases phi_{k,l}.

        Returns:
            numpy.ndarray: the N x N phases
        """

        return self._phi * local_signs(self._n)


def local_signs(n):
    """Return the N x N matrix of local phase signs: +1 above the diagonal, -1 below and 0 on the diagonal.
    """

    indexes = np.arange(n)

    return np.sign(indexes[None, :] - indexes[:, None]).astype(np.int8)


def delta(pa):
    """Return the quantum phase POVM matrix with entries exp(i phi_{k,l}).

    Args:
        pa (PhaseAssignment): the phase assignment

    Returns:
        numpy.ndarray: the N x N Hermitian matrix
    """

    upper = _unit_phase(pa.phi)
    lower = _unit_phase(-pa.phi)

    signs = local_signs(pa.n)

    matrix = np.ones((pa.n, pa.n), dtype=np.complex128)
    matrix[signs > 0] = upper
    matrix[signs < 0] = lower

    return matrix


def delta_tilde(pa):
    """Return the orthogonal complement I_N - Delta of the quantum phase POVM.

    Args:
        pa (PhaseAssignment): the phase assignment

    Returns:
        numpy.ndarray: the N x N Hermitian matrix with a zero diagonal
    """

    return np.eye(pa.n, dtype=np.complex128) - delta(pa)


class SignedOperator:
    """This class implements a tensor operator whose entries carry the per-subsystem sign of their joint phase.

    The signs are recorded factor by factor while the tensor product is assembled, so that entries with equal
    numerical phases but different sign patterns remain distinguishable.
    """

    def __init__(self, shape, factors, signs):
        """Constructor.

        Args:
            shape (SystemShape or list of int): the shape of the system
            factors (list of numpy.ndarray): the local factors, one per subsystem
            signs (list of numpy.ndarray): the local sign matrices, one per subsystem, zero where the factor
                contributes a diagonal element
        """

        self._shape = shape if isinstance(shape, SystemShape) else SystemShape(shape)

        if len(factors) != self._shape.m or len(signs) != self._shape.m:
            raise BadPositionsError('Expected {} local factors'.format(self._shape.m))

        self._factors = [np.asarray(f, dtype=np.complex128) for f in factors]

        self._signs = []
        for f, s in zip(self._factors, signs):
            s = np.asarray(s, dtype=np.int8).copy()
            s[f == 0] = 0
            self._signs.append(s)

        self._matrix = kron_all(self._factors)
        self._matrix.flags.writeable = False

    @property
    def shape(self):

        return self._shape

    @property
    def matrix(self):
        """Returns the joint matrix.

        Returns:
            numpy.ndarray: the read-only d x d matrix
        """

        return self._matrix

    @property
    def local_signs(self):
        """Returns the local sign matrices.
        """

        return [s.copy() for s in self._signs]

    def is_hermitian(self, tolerance=1.0e-12):

        return is_hermitian(self._matrix, tolerance)

    def signature_at(self, row, col):
        """Returns the signature of a joint entry.

        Args:
            row (int): the flat row index
            col (int): the flat column index

        Returns:
            tuple of int: one sign in {+1, -1, 0} per subsystem
        """

        row_offsets = np.unravel_index(int(row), self._shape.dims)
        col_offsets = np.unravel_index(int(col), self._shape.dims)

        return tuple(int(s[k, l]) for s, k, l in zip(self._signs, row_offsets, col_offsets))

    def signature_string(self, row, col):
        """Returns the signature of a joint entry as a string of '+', '-' and '0' symbols.
        """

        return ''.join(SIGN_SYMBOLS[s] for s in self.signature_at(row, col))

    def uniform_sign_masks(self):
        """Returns the masks of the entries whose nonzero signs are all '+' and all '-'.

        Entries whose signs are all '0' belong to neither mask.

        Returns:
            numpy.ndarray: the boolean mask of the all-plus entries
            numpy.ndarray: the boolean mask of the all-minus entries
        """

        def kron_mask(masks):
            return kron_all([m.astype(np.float64) for m in masks]).real > 0.5

        unsigned = kron_mask([s == 0 for s in self._signs])
        all_plus = kron_mask([s >= 0 for s in self._signs]) & ~unsigned
        all_minus = kron_mask([s <= 0 for s in self._signs]) & ~unsigned

        nonzero = self._matrix != 0

        return all_plus & nonzero, all_minus & nonzero


def _check_positions(shape, r1, r2):

    if not 1 <= r1 < r2 <= shape.m:
        raise BadPositionsError('Invalid subsystem pair ({},{}) for {} subsystems'.format(r1, r2, shape.m))


def _class_operator(shape, r1, r2, background_phi):

    shape = shape if isinstance(shape, SystemShape) else SystemShape(shape)

    _check_positions(shape, r1, r2)

    factors = []
    signs = []
    for j, n in enumerate(shape.dims, start=1):
        if j in (r1, r2):
            factors.append(delta_tilde(PhaseAssignment(n, 0.5 * np.pi)))
            signs.append(local_signs(n))
        elif background_phi is None:
            factors.append(np.eye(n, dtype=np.complex128))
            signs.append(np.zeros((n, n), dtype=np.int8))
        else:
            factors.append(delta_tilde(PhaseAssignment(n, background_phi)))
            signs.append(local_signs(n))

    return SignedOperator(shape, factors, signs)


def w_class_operator(shape, r1, r2):
    """Return the W class operator: Delta~(pi/2) on subsystems r1 and r2 and the identity elsewhere.

    Args:
        shape (SystemShape or list of int): the shape of the system
        r1 (int): the first 1-based subsystem position
        r2 (int): the second 1-based subsystem position, r1 < r2

    Returns:
        SignedOperator: the operator

    Raises:
        BadPositionsError: if the positions are invalid
    """

    return _class_operator(shape, r1, r2, None)


def ghz_class_operator(shape, r1, r2):
    """Return the GHZ class operator: Delta~(pi/2) on subsystems r1 and r2 and Delta~(pi) elsewhere.

    Args:
        shape (SystemShape or list of int): the shape of the system
        r1 (int): the first 1-based subsystem position
        r2 (int): the second 1-based subsystem position, r1 < r2

    Returns:
        SignedOperator: the operator

    Raises:
        BadPositionsError: if the positions are invalid
    """

    return _class_operator(shape, r1, r2, np.pi)


def _matrix_of(a):

    return a.matrix if isinstance(a, SignedOperator) else np.asarray(a, dtype=np.complex128)


def triangular_split(a):
    """Split an operator into its strict upper and strict lower triangular parts.

    Args:
        a (SignedOperator or numpy.ndarray): the operator

    Returns:
        numpy.ndarray: the entries with row < column
        numpy.ndarray: the entries with row > column
    """

    matrix = _matrix_of(a)

    return np.triu(matrix, 1), np.tril(matrix, -1)


def sign_restrict(a):
    """Keep the entries of a signed operator whose nonzero signs are either all '+' or all '-'.

    Args:
        a (SignedOperator): the operator

    Returns:
        numpy.ndarray: the restricted matrix, the sum of its all-plus and all-minus parts
    """

    all_plus, all_minus = a.uniform_sign_masks()

    return np.where(all_plus | all_minus, a.matrix, 0.0 + 0.0j)
