"""This module implements the following classes and functions:
    - SeesawConfig
    - SeesawResult
    - thread_count_from_environment
    - seesaw_extremal_expectation
    - max_product_overlap

The see-saw optimizes <v_1,...,v_m| P |v_1,...,v_m> over pure product states. A sweep visits every subsystem in turn
and replaces its local vector by the extremal eigenvector of P contracted against the other local vectors. By
linearity of the trace, the extremum over product states is the extremum over all separable density operators.
"""

import concurrent.futures
import logging
import os

import numpy as np

from witnesskit.kernel.linalg.tensor_core import DimensionMismatchError, NoConvergenceError, NotHermitianError, \
    contract_all_but_one, expectation, hermitian_eig, is_hermitian, product_vector
from witnesskit.kernel.states.quantum_states import SystemShape, random_local_vectors
from witnesskit.kernel.utils.progress_bar import progress_bar
from witnesskit.kernel.utils.stats import describe

DEGENERACY_GAP = 1.0e-12

AGREEMENT_TOLERANCE = 1.0e-7

DIRECTIONS = ('min', 'max')

THREADS_ENVIRONMENT_VARIABLE = 'WITNESSKIT_THREADS'


def thread_count_from_environment(default=1):
    """Return the restart parallelism cap read from the WITNESSKIT_THREADS environment variable.

    Args:
        default (int): the value used when the variable is unset or invalid

    Returns:
        int: the number of threads
    """

    value = os.environ.get(THREADS_ENVIRONMENT_VARIABLE)
    if value is None:
        return default

    try:
        n_threads = int(value)
    except ValueError:
        logging.warning('Invalid {} value {}: using {} thread(s)'.format(THREADS_ENVIRONMENT_VARIABLE, value, default))
        return default

    if n_threads < 1:
        logging.warning('Invalid {} value {}: using {} thread(s)'.format(THREADS_ENVIRONMENT_VARIABLE, value, default))
        return default

    return n_threads


class SeesawConfig:
    """This class implements the settings of a multi-start see-saw optimization.
    """

    def __init__(self, restarts=50, max_sweeps=500, tolerance=1.0e-10, seed=0, n_threads=1):
        """Constructor.

        Args:
            restarts (int): the number of random starting product states
            max_sweeps (int): the maximum number of sweeps per restart
            tolerance (float): a restart stops when the objective changes by less than this value over a sweep
            seed (int): the base seed. Restart r uses the seed seed + r
            n_threads (int): the maximum number of restarts run concurrently
        """

        if restarts < 1:
            raise ValueError('The number of restarts must be >= 1, got {}'.format(restarts))

        if max_sweeps < 1:
            raise ValueError('The number of sweeps must be >= 1, got {}'.format(max_sweeps))

        if not tolerance > 0.0:
            raise ValueError('The tolerance must be > 0, got {}'.format(tolerance))

        if n_threads < 1:
            raise ValueError('The number of threads must be >= 1, got {}'.format(n_threads))

        self.restarts = int(restarts)

        self.max_sweeps = int(max_sweeps)

        self.tolerance = float(tolerance)

        self.seed = int(seed)

        self.n_threads = int(n_threads)

    def __repr__(self):

        return 'SeesawConfig(restarts={}, max_sweeps={}, tolerance={}, seed={}, n_threads={})'.format(
            self.restarts, self.max_sweeps, self.tolerance, self.seed, self.n_threads)


class SeesawResult:
    """This class implements the outcome of a multi-start see-saw optimization.
    """

    def __init__(self, direction, value, local_vectors, sweeps_used, converged, restart_values, histories):

        self.direction = direction

        self.value = float(value)

        self.local_vectors = [np.asarray(v) for v in local_vectors]

        self.sweeps_used = int(sweeps_used)

        self.converged = bool(converged)

        self.restart_values = [float(v) for v in restart_values]

        self.histories = histories

    @property
    def restarts_agreeing(self):
        """Returns the number of restarts whose value is within 1e-7 of the best value.
        """

        return int(sum(abs(v - self.value) <= AGREEMENT_TOLERANCE for v in self.restart_values))

    @property
    def restart_statistics(self):
        """Returns the descriptive statistics of the per-restart values.

        Returns:
            collections.OrderedDict: the statistics
        """

        return describe(self.restart_values)

    def check_convergence(self):
        """Raise if the best restart exhausted its sweeps budget.

        Raises:
            NoConvergenceError: if the best restart did not meet the tolerance
        """

        if not self.converged:
            raise NoConvergenceError('See-saw did not converge within {} sweeps (best value {})'.format(self.sweeps_used, self.value))


def _extremal_vector(matrix, direction, incumbent):
    """Return the extremal eigenvector of an effective matrix and the extremal eigenvalue.

    Within a degenerate extremal eigenspace, the vector with the largest overlap with the incumbent is selected.
    """

    eigenvalues, eigenvectors = hermitian_eig(matrix)

    if direction == 'min':
        target = eigenvalues[0]
        degenerate = eigenvalues - target < DEGENERACY_GAP
    else:
        target = eigenvalues[-1]
        degenerate = target - eigenvalues < DEGENERACY_GAP

    basis = eigenvectors[:, degenerate]
    if basis.shape[1] == 1:
        return basis[:, 0], float(target)

    projection = basis @ (basis.conj().T @ incumbent)
    norm = np.linalg.norm(projection)
    if norm > DEGENERACY_GAP:
        return projection / norm, float(target)

    return basis[:, 0], float(target)


def _run_restart(p, shape, direction, cfg, restart):

    rng = np.random.default_rng(cfg.seed + restart)

    vectors = random_local_vectors(shape, rng)

    value = expectation(p, product_vector(vectors)).real
    history = [value]

    converged = False
    sweeps_used = 0
    for sweep in range(1, cfg.max_sweeps + 1):
        for j in range(shape.m):
            effective = contract_all_but_one(p, vectors, j, shape.dims)
            vectors[j], value = _extremal_vector(effective, direction, vectors[j])
        history.append(value)
        sweeps_used = sweep
        if abs(history[-1] - history[-2]) < cfg.tolerance:
            converged = True
            break

    return value, vectors, sweeps_used, converged, history


def seesaw_extremal_expectation(p, shape, direction='min', cfg=None):
    """Optimize the expectation value of a Hermitian operator over pure product states.

    Args:
        p (numpy.ndarray): the Hermitian operator on the joint space
        shape (SystemShape or list of int): the shape of the system
        direction (str): 'min' or 'max'
        cfg (SeesawConfig): the settings. Defaults to SeesawConfig()

    Returns:
        SeesawResult: the best value over the restarts, with its product state and diagnostics

    Raises:
        NotHermitianError: if p is not Hermitian
        DimensionMismatchError: if p does not act on the joint space of shape
    """

    if direction not in DIRECTIONS:
        raise ValueError('Unknown direction {}: expected "min" or "max"'.format(direction))

    cfg = cfg if cfg is not None else SeesawConfig()

    shape = shape if isinstance(shape, SystemShape) else SystemShape(shape)

    p = np.asarray(p, dtype=np.complex128)
    if p.shape != (shape.joint_dim, shape.joint_dim):
        raise DimensionMismatchError('Operator of shape {} does not act on dimensions {}'.format(p.shape, shape.dims))

    if not is_hermitian(p):
        raise NotHermitianError('See-saw optimization needs a Hermitian operator')

    progress_bar.reset(cfg.restarts, 'see-saw ({})'.format(direction))

    results = []
    if cfg.n_threads > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=cfg.n_threads) as executor:
            futures = [executor.submit(_run_restart, p, shape, direction, cfg, r) for r in range(cfg.restarts)]
            for r, future in enumerate(futures):
                results.append(future.result())
                progress_bar.update(r + 1)
    else:
        for r in range(cfg.restarts):
            results.append(_run_restart(p, shape, direction, cfg, r))
            progress_bar.update(r + 1)

    values = [result[0] for result in results]
    best = int(np.argmin(values)) if direction == 'min' else int(np.argmax(values))

    value, vectors, sweeps_used, converged, _ = results[best]

    if not converged:
        logging.warning('Best see-saw restart did not converge within {} sweeps'.format(cfg.max_sweeps))

    logging.debug('See-saw {} over {} restarts: {}'.format(direction, cfg.restarts, value))

    return SeesawResult(direction, value, vectors, sweeps_used, converged, values, [result[4] for result in results])


def max_product_overlap(psi, cfg=None):
    """Return the maximal squared overlap between a state and the pure product states.

    Args:
        psi (PureState): the state
        cfg (SeesawConfig): the see-saw settings

    Returns:
        SeesawResult: the result of the maximization of <phi|psi><psi|phi>
    """

    v = psi.amplitudes

    return seesaw_extremal_expectation(np.outer(v, v.conj()), psi.shape, 'max', cfg)
