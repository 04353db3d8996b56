"""This module implements the following classes and functions:
    - InvalidJSONFileError
    - JSONFileReader

The reader validates state, density and witness files before anything is computed from them:
    - a state file holds "dims" (array of integers) and "amplitudes" (array of [re, im] pairs, row-major)
    - a density file holds "dims" and "matrix" (array of rows of [re, im] pairs)
    - a witness file holds "dims", "gamma", "form", "matrix" and optionally "source"
"""

import json
import logging
import os
import sys

import numpy as np

from witnesskit.kernel.states.quantum_states import DensityOperator, InvalidShapeError, InvalidStateError, PureState, \
    SystemShape
from witnesskit.kernel.witnesses.witness import FORMS, Witness

LOAD_TOLERANCE = 1.0e-8

MAX_QUBITS = 12


class InvalidJSONFileError(Exception):
    """This class implements an exception raised when a JSON file does not follow the expected format.
    """


def _complex_array(pairs, name):

    try:
        array = np.asarray(pairs, dtype=np.float64)
    except (TypeError, ValueError) as error:
        raise InvalidJSONFileError('"{}" must only contain [re, im] pairs of numbers: {}'.format(name, error))

    if array.ndim < 1 or array.shape[-1] != 2:
        raise InvalidJSONFileError('"{}" must only contain [re, im] pairs'.format(name))

    if not np.all(np.isfinite(array)):
        raise InvalidJSONFileError('"{}" contains non finite values'.format(name))

    return array[..., 0] + 1j * array[..., 1]


class JSONFileReader:
    """This class implements the reader for the states, density operators and witnesses stored in JSON files.
    """

    def __init__(self, filename):
        """Constructor.

        Args:
            filename (str): the path to the JSON file, or '-' for the standard input

        Raises:
            InvalidJSONFileError: if the file can not be parsed
        """

        self._filename = filename

        try:
            if filename == '-':
                self._data = json.load(sys.stdin)
            else:
                with open(filename, 'r', encoding='utf-8') as fin:
                    self._data = json.load(fin)
        except json.JSONDecodeError as error:
            raise InvalidJSONFileError('Can not parse {}: {}'.format(self.display_name, error))
        except OSError as error:
            raise InvalidJSONFileError('Can not read {}: {}'.format(self.display_name, error))

        if not isinstance(self._data, dict):
            raise InvalidJSONFileError('{} does not contain a JSON object'.format(self.display_name))

        if 'dims' not in self._data:
            raise InvalidJSONFileError('Missing "dims" entry in {}'.format(self.display_name))

        dims = self._data['dims']
        if not isinstance(dims, list) or not all(isinstance(n, int) and not isinstance(n, bool) for n in dims):
            raise InvalidJSONFileError('"dims" must be an array of integers in {}'.format(self.display_name))

        try:
            self._shape = SystemShape(dims)
        except InvalidShapeError as error:
            raise InvalidJSONFileError(str(error))

        if self._shape.joint_dim > 2 ** MAX_QUBITS:
            raise InvalidJSONFileError('Joint dimension {} exceeds the {}-qubit limit ({})'.format(self._shape.joint_dim, MAX_QUBITS, 2 ** MAX_QUBITS))

    @property
    def basename(self):
        """Returns the basename of the JSON file.

        Returns:
            str: the basename
        """

        return os.path.splitext(os.path.basename(self._filename))[0]

    @property
    def display_name(self):

        return 'standard input' if self._filename == '-' else self._filename

    @property
    def data(self):
        """Returns the raw JSON object.
        """

        return self._data

    @property
    def filename(self):

        return self._filename

    @property
    def shape(self):

        return self._shape

    @property
    def kind(self):
        """Returns the kind of object stored in the file.

        Returns:
            str: 'state', 'witness' or 'density'
        """

        if 'amplitudes' in self._data:
            return 'state'
        elif 'form' in self._data or 'gamma' in self._data:
            return 'witness'
        elif 'matrix' in self._data:
            return 'density'
        else:
            raise InvalidJSONFileError('{} holds neither "amplitudes" nor "matrix"'.format(self.display_name))

    def _matrix(self):

        if 'matrix' not in self._data:
            raise InvalidJSONFileError('Missing "matrix" entry in {}'.format(self.display_name))

        matrix = _complex_array(self._data['matrix'], 'matrix')

        d = self._shape.joint_dim
        if matrix.shape != (d, d):
            raise InvalidJSONFileError('"matrix" must be {}x{} for dimensions {}, got shape {}'.format(d, d, self._shape.dims, matrix.shape))

        return matrix

    def to_pure_state(self):
        """Build the pure state stored in the file.

        Returns:
            PureState: the state

        Raises:
            InvalidJSONFileError: if the file does not hold a valid normalized state
        """

        if 'amplitudes' not in self._data:
            raise InvalidJSONFileError('Missing "amplitudes" entry in {}'.format(self.display_name))

        amplitudes = _complex_array(self._data['amplitudes'], 'amplitudes')
        if amplitudes.ndim != 1:
            raise InvalidJSONFileError('"amplitudes" must be a flat array of [re, im] pairs')

        try:
            return PureState(self._shape, amplitudes, tolerance=LOAD_TOLERANCE)
        except InvalidStateError as error:
            raise InvalidJSONFileError('Invalid state in {}: {}'.format(self.display_name, error))

    def to_density_operator(self):
        """Build the density operator stored in the file.

        Returns:
            DensityOperator: the density operator

        Raises:
            InvalidJSONFileError: if the file does not hold a valid density operator
        """

        try:
            return DensityOperator(self._shape, self._matrix(), tolerance=LOAD_TOLERANCE)
        except InvalidStateError as error:
            raise InvalidJSONFileError('Invalid density operator in {}: {}'.format(self.display_name, error))

    def to_state_or_density(self):
        """Build either the pure state or the density operator stored in the file.
        """

        kind = self.kind
        if kind == 'state':
            return self.to_pure_state()
        elif kind == 'density':
            return self.to_density_operator()
        else:
            raise InvalidJSONFileError('{} holds a witness, not a state'.format(self.display_name))

    def to_witness(self):
        """Build the witness stored in the file.

        Returns:
            witnesskit.kernel.witnesses.witness.Witness: the witness

        Raises:
            InvalidJSONFileError: if the file does not hold a valid witness
        """

        form = self._data.get('form')
        if form not in FORMS:
            raise InvalidJSONFileError('"form" must be one of {} in {}'.format(', '.join(FORMS), self.display_name))

        gamma = self._data.get('gamma')
        if isinstance(gamma, bool) or not isinstance(gamma, (int, float)) or not np.isfinite(gamma):
            raise InvalidJSONFileError('"gamma" must be a finite number in {}'.format(self.display_name))

        source = self._data.get('source', self.basename)

        logging.debug('Loaded {} witness from {}'.format(form, self.display_name))

        return Witness(self._shape, self._matrix(), gamma, source, form)
