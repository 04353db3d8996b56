# **************************************************************************
#
# witnesskit
#
# **************************************************************************

__description__ = "Entanglement witnesses built from multi-qubit concurrence and phase POVM operators"

__long_description__ = """witnesskit is a library and a command line tool for building GHZ and W class entanglement witnesses,
computing multi-qubit concurrence in closed form and certifying the witness property by see-saw optimization
over product states.
"""

__author__ = "E.C. Pellegrini"

__author_email__ = "ericpellegrini76@gmail.com"

__maintainer__ = "E.C. Pellegrini"

__maintainer_email__ = "ericpellegrini76@gmail.com"

__repo__ = "https://gitlab.com/irba/witnesskit"

__license__ = "GPL 3"

__version__ = "0.1.0"
