# Licensed under a 3-clause BSD style license - see LICENSE.md

"""Bott vanishing for elliptic surfaces (ellbott)

ellbott classifies the singular fibers of elliptic surfaces over the projective
line from exact Weierstrass data, computes the numerical invariants of ample
line bundles on the standard families of such surfaces, and decides Bott
vanishing with a rule engine that records which result was used at each step.

All arithmetic is exact: coefficients are rationals, linear algebra is done over
the rationals, and nothing is ever rounded. Brute-force oracles check the local
computations (Jacobian-scheme degrees and section restriction ranks) that the
decision rules depend on.
"""
# Enforce Python version check during package import.
# This is the same check as the one at the top of setup.py
import sys
from astropy import config as _config

try:
    from .version import version as __version__
except ImportError:
    __version__ = ''

__minimum_python_version__ = "3.8"


class UnsupportedPythonError(Exception):
    pass


if sys.version_info < tuple((int(val) for val in __minimum_python_version__.split('.'))):
    raise UnsupportedPythonError("ellbott does not support Python < {}".format(__minimum_python_version__))


class Conf(_config.ConfigNamespace):
    """
    Configuration parameters for `ellbott`.
    """

    use_multiprocessing = _config.ConfigItem(False,
                                             'Should batch analysis of model files run in parallel using '
                                             'the Python multiprocessing framework (if True) or serially in a '
                                             'single process (if False; slower but easier to debug).')

    n_processes = _config.ConfigItem(4, 'Maximum number of additional ' +
                                     'worker processes to spawn, if multiprocessing is enabled. ' +
                                     'Set to 0 for autoselect.')

    default_logging_level = _config.ConfigItem('INFO', 'Logging ' +
                                               'verbosity: one of {DEBUG, INFO, WARN, ERROR, or CRITICAL}')

    jacobian_initial_truncation = _config.ConfigItem(6, 'Initial monomial degree bound used when ' +
                                                     'computing the length of a local Jacobian quotient. The '
                                                     'bound is doubled until two consecutive answers agree.')
    jacobian_max_truncation = _config.ConfigItem(96, 'Largest monomial degree bound tried before the ' +
                                                 'Jacobian quotient is declared not to stabilize.')

    verify_max_n = _config.ConfigItem(5, 'Default largest number of fiber components used by ' +
                                      'the verify-lemmas suites.')
    verify_max_degree = _config.ConfigItem(4, 'Default largest line bundle degree per fiber component ' +
                                           'used by the verify-lemmas suites.')

    tangent_weights = _config.ConfigItem('1,1,1', 'Comma separated nonzero rationals e1,e2,e3 used to ' +
                                         'glue first derivatives at the triple point of a type IV fiber.')


conf = Conf()

from . import exactpoly
from . import exactlinalg
from . import weierstrass
from . import localgeom
from . import intersect
from . import families
from . import criteria
from . import report

from .exactpoly import *
from .weierstrass import *
from .localgeom import *
from .intersect import *
from .families import *
from .criteria import *
from .report import *

__all__ = (['conf', '__version__'] + exactpoly.__all__ + weierstrass.__all__ + localgeom.__all__ +
           intersect.__all__ + families.__all__ + criteria.__all__ + report.__all__)
