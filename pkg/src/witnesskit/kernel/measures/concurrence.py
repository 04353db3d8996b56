"""This module implements the following classes and functions:
    - WrongShapeError
    - ConcurrenceBreakdown
    - w_class_terms
    - ghz_class_terms
    - three_qubit_concurrence
    - concurrence_general

The squared concurrence of a m-qubit pure state is built from two classes of terms:
    - W class terms: for each pair of qubits (r1,r2) and each assignment of the other labels, twice the squared
      modulus of the 2x2 minor of the amplitudes restricted to (r1,r2)
    - GHZ class terms: for each pair of complementary label pairs (x, xbar) and (y, ybar), where xbar flips every label
      of x, the squared modulus of alpha_x alpha_xbar - alpha_y alpha_ybar
Intermediate classes, whose labels differ in k positions with 2 < k < m, are not computed. For three qubits the
two classes above are exhaustive.
"""

import collections
import itertools

import numpy as np

import pandas as pd

W_CLASS_WEIGHT = 2.0

GHZ_CLASS_WEIGHT = 1.0


class WrongShapeError(Exception):
    """This class implements an exception raised when a state does not have the shape required by a concurrence formula.
    """


def _check_qubits(psi, m_min=2):

    if not psi.shape.is_qubits:
        raise WrongShapeError('Concurrence is only defined for qubit registers, got dimensions {}'.format(psi.dims))

    if psi.shape.m < m_min:
        raise WrongShapeError('Concurrence needs at least {} qubits, got {}'.format(m_min, psi.shape.m))


def _pair_minors(psi, r1, r2):
    """Return the 2x2 minors of the amplitudes restricted to the 1-based qubits (r1,r2), one per context.
    """

    m = psi.shape.m
    if not 1 <= r1 < r2 <= m:
        raise WrongShapeError('Invalid qubit pair ({},{}) for {} qubits'.format(r1, r2, m))

    block = np.moveaxis(psi.tensor(), (r1 - 1, r2 - 1), (0, 1)).reshape(2, 2, -1)

    return block[0, 0] * block[1, 1] - block[0, 1] * block[1, 0]


def _complementary_products(psi):
    """Return the products alpha_x alpha_xbar for the 2^(m-1) labels x whose first label is 1.
    """

    amplitudes = psi.amplitudes
    d = amplitudes.shape[0]
    half = d // 2

    # Flipping every qubit label maps the flat index x to d - 1 - x
    return amplitudes[:half] * amplitudes[::-1][:half]


def w_class_terms(psi, r1, r2):
    """Return the W class contribution of the qubit pair (r1,r2).

    Args:
        psi (PureState): the qubit state
        r1 (int): the first 1-based qubit position
        r2 (int): the second 1-based qubit position, r1 < r2

    Returns:
        float: the sum over the other labels of 2 |minor|^2

    Raises:
        WrongShapeError: if psi is not a qubit register or the pair is invalid
    """

    _check_qubits(psi)

    minors = _pair_minors(psi, r1, r2)

    return W_CLASS_WEIGHT * float(np.sum(np.abs(minors) ** 2))


def ghz_class_terms(psi):
    """Return the GHZ class contribution.

    The sum over the pairs i < j of |p_i - p_j|^2 of n products is evaluated as n sum |p_i|^2 - |sum p_i|^2.

    Args:
        psi (PureState): the qubit state

    Returns:
        float: the sum of the squared differences of the complementary products

    Raises:
        WrongShapeError: if psi is not a qubit register
    """

    _check_qubits(psi)

    products = _complementary_products(psi)
    n = products.shape[0]

    total = n * np.sum(np.abs(products) ** 2) - abs(np.sum(products)) ** 2

    return GHZ_CLASS_WEIGHT * max(float(total), 0.0)


class ConcurrenceBreakdown:
    """This class implements the detailed result of a concurrence computation.
    """

    def __init__(self, psi, normalization=1.0):
        """Constructor.

        Args:
            psi (PureState): the qubit state
            normalization (float): the normalization constant N_m multiplying the sum of the terms
        """

        normalization = float(normalization)
        if not normalization > 0.0:
            raise ValueError('Normalization constant must be positive, got {}'.format(normalization))

        self._normalization = normalization

        self._m = psi.shape.m

        self._w_terms = collections.OrderedDict()
        for r1, r2 in itertools.combinations(range(1, self._m + 1), 2):
            minors = _pair_minors(psi, r1, r2)
            others = [j for j in range(1, self._m + 1) if j not in (r1, r2)]
            for offset, minor in enumerate(minors):
                context = tuple(int(o) + 1 for o in np.unravel_index(offset, [2] * len(others))) if others else ()
                self._w_terms[(r1, r2, context)] = W_CLASS_WEIGHT * float(abs(minor) ** 2)

        self._products = _complementary_products(psi)

        self._w_sum = sum(self._w_terms.values())
        self._ghz_sum = ghz_class_terms(psi)

    @property
    def m(self):

        return self._m

    @property
    def normalization(self):

        return self._normalization

    @property
    def w_terms(self):
        """Returns the W class terms keyed by (r1, r2, labels of the other qubits).

        Returns:
            collections.OrderedDict: the terms
        """

        return self._w_terms

    @property
    def ghz_terms(self):
        """Returns the GHZ class terms keyed by the two complementary label pairs.

        Returns:
            collections.OrderedDict: the terms
        """

        shape = [2] * self._m
        d = 2 ** self._m

        def pair(x):
            return (tuple(int(o) + 1 for o in np.unravel_index(x, shape)),
                    tuple(int(o) + 1 for o in np.unravel_index(d - 1 - x, shape)))

        terms = collections.OrderedDict()
        for x, y in itertools.combinations(range(self._products.shape[0]), 2):
            terms[(pair(x), pair(y))] = GHZ_CLASS_WEIGHT * float(abs(self._products[x] - self._products[y]) ** 2)

        return terms

    @property
    def w_sum(self):

        return self._w_sum

    @property
    def ghz_sum(self):

        return self._ghz_sum

    @property
    def total_squared(self):
        """Returns the squared concurrence N_m (sum of W terms + sum of GHZ terms).
        """

        return self._normalization * (self._w_sum + self._ghz_sum)

    @property
    def total(self):
        """Returns the concurrence.
        """

        return float(np.sqrt(self.total_squared))

    def to_dataframe(self):
        """Returns the terms as a table with one row per term.

        Returns:
            pandas.DataFrame: the table, whose columns are the class, the term key and the term value
        """

        rows = [('W', '{}'.format(k), v) for k, v in self._w_terms.items()]
        rows.extend([('GHZ', '{}'.format(k), v) for k, v in self.ghz_terms.items()])

        return pd.DataFrame(rows, columns=['class', 'term', 'value'])


def three_qubit_concurrence(psi):
    """Return the closed form three-qubit concurrence.

    The six W class terms carry a weight 2 and the six GHZ class terms a weight 1, with no further normalization.

    Args:
        psi (PureState): the three-qubit state

    Returns:
        ConcurrenceBreakdown: the breakdown

    Raises:
        WrongShapeError: if psi is not made of exactly three qubits
    """

    if psi.shape.dims != (2, 2, 2):
        raise WrongShapeError('The closed form concurrence needs exactly three qubits, got dimensions {}'.format(psi.dims))

    return ConcurrenceBreakdown(psi, 1.0)


def concurrence_general(psi, normalization=1.0):
    """Return the m-qubit concurrence built from the W class and GHZ class terms.

    Args:
        psi (PureState): the qubit state, m >= 2
        normalization (float): the normalization constant N_m

    Returns:
        ConcurrenceBreakdown: the breakdown

    Raises:
        WrongShapeError: if psi is not a register of at least two qubits
    """

    _check_qubits(psi)

    return ConcurrenceBreakdown(psi, normalization)
