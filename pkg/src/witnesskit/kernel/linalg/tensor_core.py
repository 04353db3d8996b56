"""This module implements the following classes and functions:
    - NotHermitianError
    - NoConvergenceError
    - DimensionMismatchError
    - kron
    - kron_all
    - product_vector
    - is_hermitian
    - hermitian_eig
    - contract_all_but_one
    - expectation

All the matrices are dense complex numpy arrays. Multi-indexes are fused in row-major order, the first subsystem being
the slowest varying one.
"""

import functools
import logging

import numpy as np

import scipy.linalg

HERMITIAN_TOLERANCE = 1.0e-10

JACOBI_THRESHOLD = 1.0e-12

JACOBI_MAX_SWEEPS = 100

# Above this dimension the cyclic Jacobi solver is replaced by LAPACK in "auto" mode
JACOBI_MAX_DIMENSION = 64


class NotHermitianError(Exception):
    """This class implements an exception raised when a matrix is expected to be Hermitian but is not.
    """


class NoConvergenceError(Exception):
    """This class implements an exception raised when an iterative procedure exhausts its iteration budget.
    """


class DimensionMismatchError(Exception):
    """This class implements an exception raised when the dimensions of the operands do not agree.
    """


def kron(a, b):
    """Return the tensor product of two matrices.

    Args:
        a (numpy.ndarray): the left factor
        b (numpy.ndarray): the right factor

    Returns:
        numpy.ndarray: the (rows_a*rows_b) x (cols_a*cols_b) tensor product
    """

    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def kron_all(factors):
    """Return the tensor product of a sequence of matrices, the first factor being the slowest varying one.

    Args:
        factors (list of numpy.ndarray): the factors

    Returns:
        numpy.ndarray: the tensor product
    """

    if not factors:
        raise DimensionMismatchError('Can not build the tensor product of an empty sequence of factors')

    return functools.reduce(kron, factors)


def product_vector(vectors):
    """Return the joint vector of a product state given its local vectors.

    Args:
        vectors (list of numpy.ndarray): the local vectors

    Returns:
        numpy.ndarray: the joint vector
    """

    return functools.reduce(np.kron, [np.asarray(v, dtype=np.complex128) for v in vectors])


def is_hermitian(h, tolerance=HERMITIAN_TOLERANCE):
    """Check whether a matrix is square and Hermitian.

    Args:
        h (numpy.ndarray): the matrix
        tolerance (float): the maximum entrywise deviation allowed between h and its adjoint

    Returns:
        bool: True if the matrix is Hermitian
    """

    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        return False

    if h.size == 0:
        return True

    return np.abs(h - h.conj().T).max() <= tolerance


def _off_diagonal_norm(a):

    return np.linalg.norm(a - np.diag(np.diag(a)))


def _jacobi_eig(h, threshold, max_sweeps):
    """Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.

    Each rotation (p, q) first removes the phase of a[p,q] then applies the real Jacobi rotation cancelling it.

    Args:
        h (numpy.ndarray): the Hermitian matrix
        threshold (float): the off-diagonal Frobenius norm, relative to max(1, ||h||_F), below which the matrix is
            considered as diagonal
        max_sweeps (int): the maximum number of sweeps over the upper triangle

    Returns:
        numpy.ndarray: the unsorted eigenvalues
        numpy.ndarray: the eigenvectors stored in columns
    """

    a = np.array(h, dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)

    target = threshold * max(1.0, np.linalg.norm(a))

    for sweep in range(max_sweeps):
        if _off_diagonal_norm(a) <= target:
            break

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                b = abs(apq)
                if b == 0.0:
                    continue

                phase = apq / b
                theta = (a[q, q].real - a[p, p].real) / (2.0 * b)
                t = (1.0 if theta >= 0.0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                rotation = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=np.complex128)

                pq = [p, q]
                a[:, pq] = a[:, pq] @ rotation
                a[pq, :] = rotation.conj().T @ a[pq, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                v[:, pq] = v[:, pq] @ rotation
    else:
        if _off_diagonal_norm(a) > target:
            raise NoConvergenceError('Jacobi diagonalization did not converge within {} sweeps'.format(max_sweeps))

    return np.diag(a).real.copy(), v


def hermitian_eig(h, method='auto', threshold=JACOBI_THRESHOLD, max_sweeps=JACOBI_MAX_SWEEPS):
    """Compute the eigen decomposition of a Hermitian matrix.

    Args:
        h (numpy.ndarray): the Hermitian matrix
        method (str): 'jacobi' for cyclic complex Jacobi rotations, 'lapack' for scipy.linalg.eigh or 'auto' for
            jacobi up to dimension 64 and lapack above
        threshold (float): the Jacobi off-diagonal threshold
        max_sweeps (int): the Jacobi sweeps budget

    Returns:
        numpy.ndarray: the eigenvalues in ascending order
        numpy.ndarray: the orthonormal eigenvectors stored in columns

    Raises:
        NotHermitianError: if h is not Hermitian within 1e-10
        NoConvergenceError: if the Jacobi sweeps budget is exhausted
    """

    h = np.asarray(h, dtype=np.complex128)

    if not is_hermitian(h):
        raise NotHermitianError('The matrix to diagonalize is not Hermitian')

    h = 0.5 * (h + h.conj().T)

    if method == 'auto':
        method = 'jacobi' if h.shape[0] <= JACOBI_MAX_DIMENSION else 'lapack'

    if method == 'jacobi':
        eigenvalues, eigenvectors = _jacobi_eig(h, threshold, max_sweeps)
        order = np.argsort(eigenvalues, kind='stable')
        return eigenvalues[order], eigenvectors[:, order]
    elif method == 'lapack':
        eigenvalues, eigenvectors = scipy.linalg.eigh(h)
        return eigenvalues, eigenvectors
    else:
        raise ValueError('Unknown diagonalization method: {}'.format(method))


def contract_all_but_one(p, vectors, j, dims):
    """Contract an operator against the local vectors of every subsystem but one.

    The returned matrix M satisfies M[k,l] = <v_1,...,k,...,v_m| p |v_1,...,l,...,v_m>.

    Args:
        p (numpy.ndarray): the operator acting on the joint space
        vectors (list of numpy.ndarray): one local vector per subsystem. The vector at position j is ignored
        j (int): the 0-based index of the free subsystem
        dims (list of int): the subsystem dimensions

    Returns:
        numpy.ndarray: the N_j x N_j effective matrix

    Raises:
        DimensionMismatchError: if the operands are not consistent with dims
    """

    dims = tuple(int(n) for n in dims)
    m = len(dims)
    joint_dim = int(np.prod(dims))

    p = np.asarray(p, dtype=np.complex128)
    if p.shape != (joint_dim, joint_dim):
        raise DimensionMismatchError('Operator of shape {} does not act on a space of dimensions {}'.format(p.shape, dims))

    if len(vectors) != m:
        raise DimensionMismatchError('Expected {} local vectors, got {}'.format(m, len(vectors)))

    if not 0 <= j < m:
        raise DimensionMismatchError('Subsystem index {} out of range for {} subsystems'.format(j, m))

    operands = [p.reshape(dims + dims), list(range(2 * m))]
    for i, v in enumerate(vectors):
        if i == j:
            continue
        v = np.asarray(v, dtype=np.complex128)
        if v.shape != (dims[i],):
            raise DimensionMismatchError('Local vector {} has shape {}, expected ({},)'.format(i, v.shape, dims[i]))
        operands.extend([v.conj(), [i], v, [m + i]])

    operands.append([j, m + j])

    return np.einsum(*operands, optimize=True)


def expectation(p, state):
    """Return the expectation value of an operator.

    Args:
        p (numpy.ndarray): the operator
        state: a state vector, a density matrix or any object exposing either an 'amplitudes' vector or a 'matrix'

    Returns:
        complex: <v|p|v> for a vector, Tr(p rho) for a density matrix

    Raises:
        DimensionMismatchError: if the dimensions do not agree
    """

    if hasattr(state, 'amplitudes'):
        state = state.amplitudes
    elif hasattr(state, 'matrix'):
        state = state.matrix

    p = np.asarray(p, dtype=np.complex128)
    state = np.asarray(state, dtype=np.complex128)

    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise DimensionMismatchError('Operator of shape {} is not square'.format(p.shape))

    if state.ndim == 1:
        if state.shape[0] != p.shape[0]:
            raise DimensionMismatchError('State of dimension {} vs operator of dimension {}'.format(state.shape[0], p.shape[0]))
        return complex(np.vdot(state, p @ state))
    elif state.ndim == 2:
        if state.shape != p.shape:
            raise DimensionMismatchError('Density matrix of shape {} vs operator of shape {}'.format(state.shape, p.shape))
        return complex(np.sum(p * state.T))
    else:
        logging.error('Can not evaluate an expectation value on an array of rank {}'.format(state.ndim))
        raise DimensionMismatchError('Invalid state of shape {}'.format(state.shape))
