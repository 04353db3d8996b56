"""This module implements a wrapper for the statistics reported over see-saw restarts.
"""

import collections

import numpy as np

import scipy.stats as stats

statistical_functions = collections.OrderedDict()
statistical_functions['min'] = np.min
statistical_functions['max'] = np.max
statistical_functions['mean'] = np.mean
statistical_functions['std'] = np.std
statistical_functions['median'] = np.median
statistical_functions['1st quantile'] = lambda v: np.quantile(v, q=0.25)
statistical_functions['3rd quantile'] = lambda v: np.quantile(v, q=0.75)


def _skew(values):

    # nearly identical restart values give a NaN skewness
    if len(values) < 3 or np.ptp(values) == 0.0:
        return 0.0

    value = stats.skew(values)

    return float(value) if np.isfinite(value) else 0.0


statistical_functions['skew'] = _skew


def describe(values):
    """Return the descriptive statistics of a sequence of values.

    Args:
        values (list of float): the values

    Returns:
        collections.OrderedDict: the value of each statistical function
    """

    values = np.asarray(values, dtype=np.float64)

    return collections.OrderedDict((name, float(f(values))) for name, f in statistical_functions.items())
