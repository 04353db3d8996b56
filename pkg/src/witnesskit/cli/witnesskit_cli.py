"""This module implements the following functions:
    - build_parser
    - main

The command line front-end of witnesskit. Every subcommand reads and writes the JSON formats of the readers and
writers modules, '-' standing for the standard streams. The exit status is 0 on success, 2 on a validation failure,
3 when the see-saw did not converge and 4 when a witness does not detect any noisy version of its target.
"""

import argparse
import json
import logging
import sys

import numpy as np
import pandas as pd

from witnesskit.__pkginfo__ import __version__
from witnesskit.kernel.linalg.tensor_core import DimensionMismatchError, NoConvergenceError, expectation, hermitian_eig
from witnesskit.kernel.measures.concurrence import concurrence_general, three_qubit_concurrence
from witnesskit.kernel.readers.json_reader import MAX_QUBITS, JSONFileReader
from witnesskit.kernel.separability.certification import NoDetectionError, certify_witness, noise_threshold
from witnesskit.kernel.separability.seesaw import SeesawConfig, thread_count_from_environment
from witnesskit.kernel.states.quantum_states import ghz_state, w_state
from witnesskit.kernel.utils.progress_bar import LoggingSink, progress_bar
from witnesskit.kernel.witnesses.witness import SUPPORT_THRESHOLD, canonical_witness, compare_witnesses, \
    general_operator_form_witness, operator_form_witness
from witnesskit.kernel.writers.json_writer import breakdown_to_dict, certification_to_dict, discrepancy_to_dict, \
    dump_json, state_to_dict, witness_to_dict

EXIT_SUCCESS = 0

EXIT_VALIDATION = 2

EXIT_NO_CONVERGENCE = 3

EXIT_NO_DETECTION = 4

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


class QubitLimitError(Exception):
    """This class implements an exception raised when a register exceeds the supported number of qubits.
    """


def _print_table(df):

    with pd.option_context('display.max_rows', None, 'display.max_columns', None, 'display.width', 200):
        sys.stdout.write(df.to_string() + '\n')


def _summary_table(data):

    return pd.DataFrame([(k, v) for k, v in data.items()], columns=['quantity', 'value'])


def _check_qubits(m):

    if m > MAX_QUBITS:
        raise QubitLimitError('{} qubits requested: witnesskit handles at most {} qubits'.format(m, MAX_QUBITS))


def _check_support(psi, kind):

    expected = ghz_state(psi.shape.m) if kind == 'ghz' else w_state(psi.shape.m)

    support = np.abs(psi.amplitudes) > SUPPORT_THRESHOLD
    if not np.array_equal(support, np.abs(expected.amplitudes) > SUPPORT_THRESHOLD):
        logging.warning('The support of the state does not match the {}-qubit {} state: the {} operator form is built '
                        'anyway'.format(psi.shape.m, kind.upper(), kind.upper()))


def _run_state(args):

    if args.action != 'make':
        raise ValueError('Unknown state action {}'.format(args.action))

    _check_qubits(args.qubits)

    psi = ghz_state(args.qubits) if args.kind == 'ghz' else w_state(args.qubits)

    logging.info('Built the {}-qubit {} state'.format(args.qubits, args.kind.upper()))

    dump_json(state_to_dict(psi), args.out)

    return EXIT_SUCCESS


def _run_concurrence(args):

    psi = JSONFileReader(args.state).to_pure_state()

    if args.normalization is None and psi.dims == (2, 2, 2):
        breakdown = three_qubit_concurrence(psi)
    else:
        normalization = 1.0 if args.normalization is None else args.normalization
        breakdown = concurrence_general(psi, normalization)

    if args.pretty:
        data = breakdown_to_dict(breakdown)
        _print_table(_summary_table(data))
        if args.breakdown:
            _print_table(breakdown.to_dataframe())
    else:
        dump_json(breakdown_to_dict(breakdown, terms=args.breakdown))

    return EXIT_SUCCESS


def _run_witness_build(args):

    psi = JSONFileReader(args.state).to_pure_state()

    if args.form == 'canonical':
        if args.kind is not None:
            logging.warning('--kind is ignored by the canonical form')
        witness = canonical_witness(psi, args.gamma)
    elif args.kind is not None:
        if args.gamma is not None:
            logging.warning('--gamma is ignored by the named operator forms: the squared concurrence is used')
        if not psi.shape.is_qubits:
            raise ValueError('The {} operator form needs a qubit register, got dimensions {}'.format(args.kind.upper(), psi.dims))
        _check_support(psi, args.kind)
        witness = operator_form_witness(args.kind, psi.shape.m, hermitized=args.hermitize)
    else:
        witness = general_operator_form_witness(psi, args.gamma, hermitized=args.hermitize)

    if not witness.is_hermitian:
        logging.warning('The {} witness is not Hermitian: use --hermitize before certifying it'.format(witness.form))

    if args.pretty and args.out == '-':
        data = {'form': witness.form, 'source': witness.source, 'gamma': witness.gamma, 'hermitian': witness.is_hermitian}
        if witness.is_hermitian:
            eigenvalues, _ = hermitian_eig(witness.matrix)
            data['min eigenvalue'] = float(eigenvalues[0])
            data['max eigenvalue'] = float(eigenvalues[-1])
        _print_table(_summary_table(data))
    else:
        dump_json(witness_to_dict(witness), args.out)

    return EXIT_SUCCESS


def _run_witness_eval(args):

    witness = JSONFileReader(args.witness).to_witness()
    state = JSONFileReader(args.state).to_state_or_density()

    if tuple(state.dims) != tuple(witness.dims):
        raise DimensionMismatchError('Witness dimensions {} vs state dimensions {}'.format(witness.dims, state.dims))

    value = expectation(witness.matrix, state)

    data = {'expectation': float(value.real) + 0.0, 'expectation_imag': float(value.imag) + 0.0}

    if args.pretty:
        _print_table(_summary_table(data))
    else:
        dump_json(data)

    return EXIT_SUCCESS


def _run_certify(args):

    witness = JSONFileReader(args.witness).to_witness()
    target = JSONFileReader(args.target).to_pure_state()

    cfg = SeesawConfig(restarts=args.restarts,
                       max_sweeps=args.max_sweeps,
                       tolerance=args.tolerance,
                       seed=args.seed,
                       n_threads=thread_count_from_environment())

    report = certify_witness(witness, target, cfg, samples=args.samples, seed=args.seed)

    data = certification_to_dict(report)
    if args.pretty:
        summary = {k: v for k, v in data.items() if k not in ('argmin', 'restart_statistics')}
        _print_table(_summary_table(summary))
        _print_table(_summary_table(data['restart_statistics']))
    else:
        dump_json(data)

    report.seesaw_result.check_convergence()

    return EXIT_SUCCESS


def _run_compare(args):

    a = JSONFileReader(args.witness_a).to_witness()
    b = JSONFileReader(args.witness_b).to_witness()

    report = compare_witnesses(a, b)

    if args.pretty:
        _print_table(_summary_table({'max abs diff': report.max_abs_diff,
                                     'a hermitian': report.a_hermitian,
                                     'b hermitian': report.b_hermitian}))
        _print_table(report.to_dataframe())
    else:
        dump_json(discrepancy_to_dict(report))

    return EXIT_SUCCESS


def _run_noise_threshold(args):

    witness = JSONFileReader(args.witness).to_witness()
    target = JSONFileReader(args.target).to_pure_state()

    data = {'p_star': noise_threshold(witness, target)}

    if args.pretty:
        _print_table(_summary_table(data))
    else:
        dump_json(data)

    return EXIT_SUCCESS


def build_parser():
    """Build the command line parser.

    Returns:
        argparse.ArgumentParser: the parser
    """

    parser = argparse.ArgumentParser(prog='witnesskit', description='Entanglement witnesses for GHZ and W states')
    parser.add_argument('--version', action='version', version='%(prog)s {}'.format(__version__))
    parser.add_argument('--pretty', action='store_true', help='print tables instead of JSON on the standard output')
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('--verbose', action='store_true', help='log debug messages')
    verbosity.add_argument('--quiet', action='store_true', help='log warnings and errors only')

    subparsers = parser.add_subparsers(dest='subcommand', metavar='subcommand')
    subparsers.required = True

    state = subparsers.add_parser('state', help='build a target state')
    state.add_argument('action', choices=['make'])
    state.add_argument('--kind', choices=['ghz', 'w'], required=True)
    state.add_argument('--qubits', type=int, required=True)
    state.add_argument('--out', default='-')
    state.set_defaults(func=_run_state)

    concurrence = subparsers.add_parser('concurrence', help='compute the concurrence of a pure state')
    concurrence.add_argument('state')
    concurrence.add_argument('--normalization', type=float, default=None)
    concurrence.add_argument('--breakdown', action='store_true', help='report every W class and GHZ class term')
    concurrence.set_defaults(func=_run_concurrence)

    witness_build = subparsers.add_parser('witness-build', help='build a witness for a pure state')
    witness_build.add_argument('state')
    witness_build.add_argument('--form', choices=['canonical', 'operator'], required=True)
    witness_build.add_argument('--kind', choices=['ghz', 'w'], default=None)
    witness_build.add_argument('--gamma', type=float, default=None)
    witness_build.add_argument('--hermitize', action='store_true')
    witness_build.add_argument('--out', default='-')
    witness_build.set_defaults(func=_run_witness_build)

    witness_eval = subparsers.add_parser('witness-eval', help='evaluate a witness on a state or a density operator')
    witness_eval.add_argument('witness')
    witness_eval.add_argument('state')
    witness_eval.set_defaults(func=_run_witness_eval)

    certify = subparsers.add_parser('certify', help='certify a witness against a target state')
    certify.add_argument('witness')
    certify.add_argument('--target', required=True)
    certify.add_argument('--restarts', type=int, default=50)
    certify.add_argument('--seed', type=int, default=0)
    certify.add_argument('--samples', type=int, default=0, help='random product states of the positivity probe')
    certify.add_argument('--max-sweeps', type=int, default=500)
    certify.add_argument('--tolerance', type=float, default=1.0e-10)
    certify.set_defaults(func=_run_certify)

    compare = subparsers.add_parser('compare', help='compare two witnesses entrywise')
    compare.add_argument('witness_a')
    compare.add_argument('witness_b')
    compare.set_defaults(func=_run_compare)

    threshold = subparsers.add_parser('noise-threshold', help='white noise weight above which the target is detected')
    threshold.add_argument('witness')
    threshold.add_argument('--target', required=True)
    threshold.set_defaults(func=_run_noise_threshold)

    return parser


def _exit_status(error):

    if isinstance(error, NoConvergenceError):
        return EXIT_NO_CONVERGENCE
    elif isinstance(error, NoDetectionError):
        return EXIT_NO_DETECTION
    else:
        return EXIT_VALIDATION


def _report_error(error):

    status = _exit_status(error)

    sys.stderr.write(json.dumps({'error': type(error).__name__, 'message': str(error), 'exit_status': status}) + '\n')
    sys.stderr.flush()

    return status


def main(argv=None):
    """Run the command line.

    Args:
        argv (list of str): the arguments. Defaults to sys.argv[1:]

    Returns:
        int: the exit status
    """

    parser = build_parser()

    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return error.code

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))

    logger = logging.getLogger()
    logger.addHandler(handler)
    if args.verbose:
        logger.setLevel(logging.DEBUG)
    elif args.quiet:
        logger.setLevel(logging.WARNING)
    else:
        logger.setLevel(logging.INFO)

    progress_bar.set_sink(LoggingSink(logging.DEBUG))

    try:
        return args.func(args)
    except Exception as error:
        logging.debug('{} raised while running {}'.format(type(error).__name__, args.subcommand), exc_info=True)
        return _report_error(error)
    finally:
        progress_bar.set_sink(None)
        logger.removeHandler(handler)


if __name__ == '__main__':
    sys.exit(main())
