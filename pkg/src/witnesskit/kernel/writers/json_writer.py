"""This module implements the following functions:
    - complex_pairs
    - state_to_dict
    - local_vector_to_dict
    - density_to_dict
    - witness_to_dict
    - signed_operator_to_dict
    - breakdown_to_dict
    - discrepancy_to_dict
    - certification_to_dict
    - to_json
    - dump_json

Complex numbers are written as [re, im] pairs. Floats are written with 17 significant digits, which read back to the
same double, so identical objects always give byte-identical documents.
"""

import json
import logging
import re
import sys

import numpy as np

FLOAT_FORMAT = '%.17g'

FLOAT_MARKER = '\x00'

_MARKED_FLOAT = re.compile(r'"\\u0000([^"\\]*)\\u0000"')


def complex_pairs(array):
    """Convert a complex array to nested lists of [re, im] pairs.

    Args:
        array (numpy.ndarray): the complex array

    Returns:
        list: the nested lists
    """

    array = np.asarray(array, dtype=np.complex128)

    return np.stack([array.real, array.imag], axis=-1).tolist()


def _clean(value):

    # -0.0 and 0.0 must serialize identically
    return float(value) + 0.0


def state_to_dict(psi):
    """Serialize a pure state.

    Args:
        psi (PureState): the state

    Returns:
        dict: the "dims" and "amplitudes" entries
    """

    return {'dims': list(psi.dims), 'amplitudes': complex_pairs(psi.amplitudes + 0.0)}


def local_vector_to_dict(vector):
    """Serialize a local vector of a product state in the state format.
    """

    vector = np.asarray(vector, dtype=np.complex128)

    return {'dims': [int(vector.shape[0])], 'amplitudes': complex_pairs(vector + 0.0)}


def density_to_dict(rho):
    """Serialize a density operator.
    """

    return {'dims': list(rho.dims), 'matrix': complex_pairs(rho.matrix + 0.0)}


def witness_to_dict(witness):
    """Serialize a witness.

    Args:
        witness (witnesskit.kernel.witnesses.witness.Witness): the witness

    Returns:
        dict: the "dims", "gamma", "form", "source" and "matrix" entries
    """

    return {'dims': list(witness.dims),
            'gamma': _clean(witness.gamma),
            'form': witness.form,
            'source': witness.source,
            'hermitian': bool(witness.is_hermitian),
            'matrix': complex_pairs(witness.matrix + 0.0)}


def signed_operator_to_dict(operator):
    """Serialize a signed operator, with the signature of every nonzero entry keyed by "row,col".

    Args:
        operator (witnesskit.kernel.operators.phase_povm.SignedOperator): the operator

    Returns:
        dict: the "dims", "matrix" and "signature" entries
    """

    signature = {}
    for row, col in zip(*np.nonzero(operator.matrix)):
        signature['{},{}'.format(row, col)] = list(operator.signature_string(row, col))

    return {'dims': list(operator.shape.dims), 'matrix': complex_pairs(operator.matrix + 0.0), 'signature': signature}


def breakdown_to_dict(breakdown, terms=False):
    """Serialize a concurrence breakdown.

    Args:
        breakdown (witnesskit.kernel.measures.concurrence.ConcurrenceBreakdown): the breakdown
        terms (bool): whether to include every term

    Returns:
        dict: the serialized breakdown
    """

    data = {'c_squared': _clean(breakdown.total_squared),
            'c': _clean(breakdown.total),
            'normalization': _clean(breakdown.normalization),
            'w_sum': _clean(breakdown.w_sum),
            'ghz_sum': _clean(breakdown.ghz_sum)}

    if terms:
        data['w_terms'] = {'{},{}|{}'.format(r1, r2, ''.join(str(l) for l in context)): _clean(v)
                           for (r1, r2, context), v in breakdown.w_terms.items()}
        data['ghz_terms'] = {'{}{}-{}{}'.format(''.join(str(l) for l in x), ''.join(str(l) for l in xbar),
                                                ''.join(str(l) for l in y), ''.join(str(l) for l in ybar)): _clean(v)
                             for ((x, xbar), (y, ybar)), v in breakdown.ghz_terms.items()}

    return data


def discrepancy_to_dict(report):
    """Serialize a witness discrepancy report.
    """

    positions = [{'row': row, 'col': col, 'a': [_clean(a.real), _clean(a.imag)], 'b': [_clean(b.real), _clean(b.imag)]}
                 for row, col, a, b in report.positions]

    return {'max_abs_diff': _clean(report.max_abs_diff),
            'positions': positions,
            'a_hermitian': report.a_hermitian,
            'b_hermitian': report.b_hermitian}


def certification_to_dict(report):
    """Serialize a certification report.

    Args:
        report (witnesskit.kernel.separability.certification.CertificationReport): the report

    Returns:
        dict: the serialized report, the minimizing local vectors being written in the state format
    """

    probe = report.positivity_probe_min

    return {'min_product_expectation': _clean(report.min_product_expectation),
            'argmin': [local_vector_to_dict(v) for v in report.argmin],
            'is_valid_witness': report.is_valid_witness,
            'detection_value': _clean(report.detection_value),
            'detects_target': report.detects_target,
            'sweeps_used': report.sweeps_used,
            'restarts': report.restarts,
            'restarts_agreeing': report.restarts_agreeing,
            'converged': report.converged,
            'restart_statistics': {k: _clean(v) for k, v in report.restart_statistics.items()},
            'positivity_probe_min': None if probe is None else _clean(probe)}


def _format_float(value):

    value = float(value) + 0.0
    if not np.isfinite(value):
        raise ValueError('Out of range float value {} can not be written to JSON'.format(value))

    text = FLOAT_FORMAT % value
    if '.' not in text and 'e' not in text:
        text += '.0'

    return text


def _mark_floats(data):

    if isinstance(data, dict):
        return {k: _mark_floats(v) for k, v in data.items()}
    elif isinstance(data, (list, tuple)):
        return [_mark_floats(v) for v in data]
    elif isinstance(data, float):
        return FLOAT_MARKER + _format_float(data) + FLOAT_MARKER
    else:
        return data


def to_json(data):
    """Return the JSON text of a document, floats being written with 17 significant digits.

    Args:
        data (dict): the document

    Returns:
        str: the JSON text

    Raises:
        ValueError: if the document holds a NaN or an infinite float
    """

    text = json.dumps(_mark_floats(data), indent=2, allow_nan=False)

    return _MARKED_FLOAT.sub(lambda match: match.group(1), text)


def dump_json(data, filename='-'):
    """Write a JSON document.

    Args:
        data (dict): the document
        filename (str): the output path, or '-' for the standard output
    """

    text = to_json(data)

    if filename == '-':
        sys.stdout.write(text + '\n')
        sys.stdout.flush()
        return

    try:
        with open(filename, 'w', encoding='utf-8') as fout:
            fout.write(text + '\n')
    except PermissionError:
        logging.error('Can not open file {} for writing.'.format(filename))
        raise
