"""This module implements the following classes and functions:
    - NoDetectionError
    - CertificationReport
    - certify_witness
    - noise_threshold
    - positivity_probe

A Hermitian operator W is an entanglement witness for a target state rho when Tr(W rho) < 0 while Tr(W sigma) >= 0
for every separable sigma. The second condition is checked numerically by minimizing W over pure product states.
"""

import logging

import numpy as np

from witnesskit.kernel.linalg.tensor_core import DimensionMismatchError, NotHermitianError, expectation
from witnesskit.kernel.separability.seesaw import seesaw_extremal_expectation
from witnesskit.kernel.states.quantum_states import random_separable_mixture
from witnesskit.kernel.utils.progress_bar import progress_bar

VERDICT_TOLERANCE = 1.0e-8

PROBE_BATCH_SIZE = 1024


class NoDetectionError(Exception):
    """This class implements an exception raised when a witness never detects the white noise mixtures of a target.
    """


class CertificationReport:
    """This class implements the outcome of the certification of a witness against a target state.
    """

    def __init__(self, seesaw_result, detection_value, positivity_probe_min=None):
        """Constructor.

        Args:
            seesaw_result (witnesskit.kernel.separability.seesaw.SeesawResult): the minimization over product states
            detection_value (float): Tr(W rho_target)
            positivity_probe_min (float): the worst expectation observed by random sampling, if any
        """

        self._seesaw_result = seesaw_result

        self._detection_value = float(detection_value)

        self._positivity_probe_min = None if positivity_probe_min is None else float(positivity_probe_min)

    @property
    def min_product_expectation(self):

        return self._seesaw_result.value

    @property
    def argmin(self):
        """Returns the local vectors of the minimizing product state.
        """

        return self._seesaw_result.local_vectors

    @property
    def is_valid_witness(self):
        """Returns True if the minimum over product states is >= -1e-8.
        """

        return self.min_product_expectation >= -VERDICT_TOLERANCE

    @property
    def detection_value(self):

        return self._detection_value

    @property
    def detects_target(self):
        """Returns True if the expectation on the target is < -1e-8.
        """

        return self._detection_value < -VERDICT_TOLERANCE

    @property
    def sweeps_used(self):

        return self._seesaw_result.sweeps_used

    @property
    def restarts(self):

        return len(self._seesaw_result.restart_values)

    @property
    def restarts_agreeing(self):

        return self._seesaw_result.restarts_agreeing

    @property
    def restart_statistics(self):

        return self._seesaw_result.restart_statistics

    @property
    def converged(self):

        return self._seesaw_result.converged

    @property
    def positivity_probe_min(self):

        return self._positivity_probe_min

    @property
    def seesaw_result(self):

        return self._seesaw_result


def _check_witness(witness, target=None):

    if not witness.is_hermitian:
        raise NotHermitianError('Witness {} is not Hermitian: hermitize it first'.format(witness))

    if target is not None and tuple(target.dims) != tuple(witness.dims):
        raise DimensionMismatchError('Witness dimensions {} vs target dimensions {}'.format(witness.dims, target.dims))


def certify_witness(witness, target, cfg=None, samples=0, seed=None):
    """Certify the two witness conditions of a witness against a target state.

    Args:
        witness (witnesskit.kernel.witnesses.witness.Witness): the Hermitian witness
        target (PureState): the target state
        cfg (SeesawConfig): the see-saw settings
        samples (int): if > 0, the number of random product states of an additional positivity probe
        seed (int): the probe seed. Defaults to the see-saw seed

    Returns:
        CertificationReport: the report

    Raises:
        NotHermitianError: if the witness is not Hermitian
        DimensionMismatchError: if the witness and the target do not act on the same space
    """

    _check_witness(witness, target)

    result = seesaw_extremal_expectation(witness.matrix, witness.shape, 'min', cfg)

    detection_value = expectation(witness.matrix, target).real

    probe_min = None
    if samples > 0:
        if seed is None:
            seed = cfg.seed if cfg is not None else 0
        probe_min = positivity_probe(witness, samples, seed)

    report = CertificationReport(result, detection_value, probe_min)

    logging.info('Certification: min over product states = {}, detection value = {}'.format(report.min_product_expectation,
                                                                                            report.detection_value))

    return report


def noise_threshold(witness, target):
    """Return the white noise weight p* above which p |psi><psi| + (1-p) I/d is detected by the witness.

    Args:
        witness (witnesskit.kernel.witnesses.witness.Witness): the Hermitian witness
        target (PureState): the target state

    Returns:
        float: p* = (Tr(W)/d) / (Tr(W)/d - <psi|W|psi>)

    Raises:
        NotHermitianError: if the witness is not Hermitian
        NoDetectionError: if <psi|W|psi> >= Tr(W)/d or <psi|W|psi> is not negative
    """

    _check_witness(witness, target)

    d = witness.shape.joint_dim

    noise_value = np.trace(witness.matrix).real / d
    target_value = expectation(witness.matrix, target).real

    if target_value >= noise_value:
        raise NoDetectionError('The witness does not detect any white noise mixture of the target: '
                               '<psi|W|psi> = {} >= Tr(W)/d = {}'.format(target_value, noise_value))

    if target_value >= -VERDICT_TOLERANCE:
        raise NoDetectionError('The witness does not detect the target itself: '
                               '<psi|W|psi> = {} is not negative'.format(target_value))

    threshold = noise_value / (noise_value - target_value)

    if threshold <= 0.0:
        logging.warning('The witness detects the maximally mixed state: p* = {}'.format(threshold))

    return float(threshold)


def _product_vectors_batch(shape, rng, size):

    batch = np.ones((size, 1), dtype=np.complex128)
    for n in shape.dims:
        local = rng.standard_normal((size, n)) + 1j * rng.standard_normal((size, n))
        local /= np.linalg.norm(local, axis=1, keepdims=True)
        batch = (batch[:, :, None] * local[:, None, :]).reshape(size, -1)

    return batch


def positivity_probe(witness, samples, seed, mixtures=None, mixture_terms=4):
    """Return the worst expectation value of a witness over random separable states.

    Args:
        witness (witnesskit.kernel.witnesses.witness.Witness): the Hermitian witness
        samples (int): the number of random pure product states
        seed (int): the seed
        mixtures (int): the number of random separable mixtures. Defaults to samples // 10
        mixture_terms (int): the number of product states per mixture

    Returns:
        float: the minimum observed expectation value
    """

    _check_witness(witness)

    if mixtures is None:
        mixtures = samples // 10

    if samples + mixtures < 1:
        raise ValueError('The positivity probe needs at least one sample')

    rng = np.random.default_rng(seed)

    matrix = witness.matrix
    shape = witness.shape

    worst = np.inf

    progress_bar.reset(samples + mixtures, 'positivity probe')

    done = 0
    while done < samples:
        size = min(PROBE_BATCH_SIZE, samples - done)
        batch = _product_vectors_batch(shape, rng, size)
        values = np.sum(batch.conj() * (batch @ matrix.T), axis=1).real
        worst = min(worst, float(values.min()))
        done += size
        progress_bar.update(done)

    for k in range(mixtures):
        rho = random_separable_mixture(shape, mixture_terms, int(rng.integers(0, 2 ** 31 - 1)))
        worst = min(worst, expectation(matrix, rho).real)
        progress_bar.update(samples + k + 1)

    logging.debug('Positivity probe over {} products and {} mixtures: {}'.format(samples, mixtures, worst))

    return float(worst)
