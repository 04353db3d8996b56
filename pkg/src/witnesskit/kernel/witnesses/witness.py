"""This module implements the following classes and functions:
    - Witness
    - DiagonalSupportMatrix
    - DiscrepancyReport
    - canonical_witness
    - support_diagonal
    - operator_form_witness
    - general_operator_form_witness
    - hermitize
    - witness_spectrum
    - compare_witnesses
"""

import itertools
import logging

import numpy as np

import pandas as pd

from witnesskit.kernel.linalg.tensor_core import DimensionMismatchError, hermitian_eig, is_hermitian
from witnesskit.kernel.measures.concurrence import concurrence_general
from witnesskit.kernel.operators.phase_povm import ghz_class_operator, sign_restrict, triangular_split, w_class_operator
from witnesskit.kernel.states.quantum_states import BadArityError, SystemShape, ghz_state, w_state

CANONICAL = 'canonical'

OPERATOR_FORM = 'operator_form'

HERMITIZED_OPERATOR_FORM = 'hermitized_operator_form'

FORMS = (CANONICAL, OPERATOR_FORM, HERMITIZED_OPERATOR_FORM)

SUPPORT_THRESHOLD = 1.0e-12

DISCREPANCY_THRESHOLD = 1.0e-9


class Witness:
    """This class implements an entanglement witness candidate: a matrix with the data it was built from.
    """

    def __init__(self, shape, matrix, gamma, source, form):
        """Constructor.

        Args:
            shape (SystemShape or list of int): the shape of the system
            matrix (numpy.ndarray): the witness matrix
            gamma (float): the coefficient of the identity (the squared concurrence for the operator forms)
            source (str): a description of the target state
            form (str): one of 'canonical', 'operator_form' or 'hermitized_operator_form'
        """

        self._shape = shape if isinstance(shape, SystemShape) else SystemShape(shape)

        matrix = np.array(matrix, dtype=np.complex128, copy=True)
        d = self._shape.joint_dim
        if matrix.shape != (d, d):
            raise DimensionMismatchError('Witness matrix of shape {} does not act on dimensions {}'.format(matrix.shape, self._shape.dims))
        matrix.flags.writeable = False
        self._matrix = matrix

        if form not in FORMS:
            raise ValueError('Unknown witness form {}'.format(form))
        self._form = form

        self._gamma = float(gamma)

        self._source = str(source)

    def __repr__(self):

        return 'Witness(form={}, source={}, gamma={})'.format(self._form, self._source, self._gamma)

    @property
    def shape(self):

        return self._shape

    @property
    def dims(self):

        return self._shape.dims

    @property
    def matrix(self):
        """Returns the read-only witness matrix.
        """

        return self._matrix

    @property
    def gamma(self):

        return self._gamma

    @property
    def source(self):

        return self._source

    @property
    def form(self):

        return self._form

    @property
    def is_hermitian(self):

        return is_hermitian(self._matrix)


class DiagonalSupportMatrix:
    """This class implements the diagonal matrix D whose entries are C^2 - 1 on the support of a state and C^2 elsewhere.
    """

    def __init__(self, entries, c_bar, c):

        self._entries = np.array(entries, dtype=np.float64, copy=True)
        self._entries.flags.writeable = False

        self._c_bar = float(c_bar)

        self._c = float(c)

    @property
    def entries(self):

        return self._entries

    @property
    def c_bar(self):

        return self._c_bar

    @property
    def c(self):

        return self._c

    def to_matrix(self):
        """Returns the diagonal as a dense complex matrix.
        """

        return np.diag(self._entries).astype(np.complex128)


def canonical_witness(psi, gamma=None):
    """Return the projector form witness gamma I - |psi><psi|.

    Args:
        psi (PureState): the target state
        gamma (float): the coefficient of the identity. Defaults to the squared concurrence of psi

    Returns:
        Witness: the witness
    """

    if gamma is None:
        gamma = concurrence_general(psi).total_squared

    v = psi.amplitudes
    d = psi.shape.joint_dim

    matrix = gamma * np.eye(d, dtype=np.complex128) - np.outer(v, v.conj())

    return Witness(psi.shape, matrix, gamma, 'pure state on dimensions {}'.format(list(psi.dims)), CANONICAL)


def support_diagonal(psi, c_squared):
    """Return the diagonal support matrix of a state.

    Args:
        psi (PureState): the state
        c_squared (float): the squared concurrence C^2

    Returns:
        DiagonalSupportMatrix: diagonal with C^2 - 1 where |alpha| > 1e-12 and C^2 elsewhere
    """

    c = float(c_squared)
    c_bar = c - 1.0

    entries = np.where(np.abs(psi.amplitudes) > SUPPORT_THRESHOLD, c_bar, c)

    return DiagonalSupportMatrix(entries, c_bar, c)


def _target_state(kind, m):

    if kind == 'ghz':
        return ghz_state(m)
    elif kind == 'w':
        return w_state(m)
    else:
        raise ValueError('Unknown witness kind {}: expected "ghz" or "w"'.format(kind))


def operator_form_witness(kind, m, hermitized=False):
    """Return the diagonal-minus-operator witness of the m-qubit GHZ or W state.

    For the GHZ state the witness is D_g minus the +/- restriction of the GHZ class operator on qubits (1,2). For the
    W state it is D_w minus the sum over the pairs r < s of the upper triangle of the +/- restricted W class
    operators. The latter is not Hermitian; hermitized=True returns (A + A^dagger)/2 instead.

    Args:
        kind (str): 'ghz' or 'w'
        m (int): the number of qubits
        hermitized (bool): whether to hermitize the literal matrix

    Returns:
        Witness: the witness

    Raises:
        BadArityError: if m < 2
    """

    if m < 2:
        raise BadArityError('Operator form witnesses need at least 2 qubits, got {}'.format(m))

    psi = _target_state(kind, m)
    c_squared = concurrence_general(psi).total_squared

    matrix = support_diagonal(psi, c_squared).to_matrix()

    if kind == 'ghz':
        matrix -= sign_restrict(ghz_class_operator(psi.shape, 1, 2))
    else:
        for r, s in itertools.combinations(range(1, m + 1), 2):
            upper, _ = triangular_split(sign_restrict(w_class_operator(psi.shape, r, s)))
            matrix -= upper

    witness = Witness(psi.shape, matrix, c_squared, '{}{}'.format(kind.upper(), m), OPERATOR_FORM)

    logging.debug('Built the operator form witness of {}{} (Hermitian: {})'.format(kind.upper(), m, witness.is_hermitian))

    return hermitize(witness) if hermitized else witness


def general_operator_form_witness(psi, c_squared=None, hermitized=False):
    """Return the general pure state recipe D - sum_{r<s} (W class operator on (r,s))^{+/-}.

    Args:
        psi (PureState): the target state, at least two subsystems
        c_squared (float): the squared concurrence. Defaults to the concurrence of psi
        hermitized (bool): whether to hermitize the result

    Returns:
        Witness: the witness
    """

    if psi.shape.m < 2:
        raise BadArityError('Operator form witnesses need at least 2 subsystems, got {}'.format(psi.shape.m))

    if c_squared is None:
        c_squared = concurrence_general(psi).total_squared

    matrix = support_diagonal(psi, c_squared).to_matrix()
    for r, s in itertools.combinations(range(1, psi.shape.m + 1), 2):
        matrix -= sign_restrict(w_class_operator(psi.shape, r, s))

    witness = Witness(psi.shape, matrix, c_squared, 'pure state on dimensions {}'.format(list(psi.dims)), OPERATOR_FORM)

    return hermitize(witness) if hermitized else witness


def hermitize(witness):
    """Return the Hermitian part (W + W^dagger)/2 of a witness.

    Args:
        witness (Witness): the witness

    Returns:
        Witness: the hermitized witness. Canonical witnesses are returned unchanged
    """

    if witness.form == CANONICAL:
        return witness

    matrix = 0.5 * (witness.matrix + witness.matrix.conj().T)

    return Witness(witness.shape, matrix, witness.gamma, witness.source, HERMITIZED_OPERATOR_FORM)


def witness_spectrum(witness):
    """Return the ascending eigenvalues of a Hermitian witness.
    """

    eigenvalues, _ = hermitian_eig(witness.matrix)

    return eigenvalues


class DiscrepancyReport:
    """This class implements the entrywise comparison of two witnesses.
    """

    def __init__(self, max_abs_diff, positions, a_hermitian, b_hermitian):

        self._max_abs_diff = float(max_abs_diff)

        self._positions = list(positions)

        self._a_hermitian = bool(a_hermitian)

        self._b_hermitian = bool(b_hermitian)

    @property
    def max_abs_diff(self):

        return self._max_abs_diff

    @property
    def positions(self):
        """Returns the differing entries as a list of (row, col, a value, b value).
        """

        return self._positions

    @property
    def a_hermitian(self):

        return self._a_hermitian

    @property
    def b_hermitian(self):

        return self._b_hermitian

    def to_dataframe(self):
        """Returns the differing entries as a table.
        """

        rows = [(row, col, a, b, abs(a - b)) for row, col, a, b in self._positions]

        return pd.DataFrame(rows, columns=['row', 'col', 'a', 'b', 'abs diff'])


def compare_witnesses(a, b, threshold=DISCREPANCY_THRESHOLD):
    """Compare two witnesses entrywise.

    Args:
        a (Witness): the first witness
        b (Witness): the second witness
        threshold (float): the absolute difference above which an entry is reported

    Returns:
        DiscrepancyReport: the report

    Raises:
        DimensionMismatchError: if the witnesses do not have the same dimensions
    """

    if a.matrix.shape != b.matrix.shape:
        raise DimensionMismatchError('Can not compare witnesses of shapes {} and {}'.format(a.matrix.shape, b.matrix.shape))

    diff = np.abs(a.matrix - b.matrix)

    max_abs_diff = float(diff.max()) if diff.size else 0.0

    positions = [(int(row), int(col), complex(a.matrix[row, col]), complex(b.matrix[row, col]))
                 for row, col in zip(*np.nonzero(diff > threshold))]

    return DiscrepancyReport(max_abs_diff, positions, a.is_hermitian, b.is_hermitian)
