"""witnesskit

witnesskit builds entanglement witnesses for multi-qubit GHZ and W states from the concurrence of the target state
and from the phase POVM operators generating it. The witness property is certified numerically by optimizing the
witness expectation over pure product states.
"""

import logging

import numpy as np

np.seterr(all='call', under='ignore')


def np_error_handler(type, flag):

    logging.error("floating point error (%s), with flag %s" % (type, flag))


np.seterrcall(np_error_handler)
