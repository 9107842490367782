import logging
import unittest

import numpy as np

from formal_path_integral import generalLogger, logger


class BaseTestCase(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        # solvers log every Newton step at DEBUG
        logging.getLogger('scipy').setLevel('ERROR')
        generalLogger.setLevel('WARNING')
        logger.setLevel('WARNING')

    def assertClose(self, actual, expected, rtol=0.0, atol=0.0, msg=None):
        np.testing.assert_allclose(np.asarray(actual, dtype=float), np.asarray(expected, dtype=float),
                                   rtol=rtol, atol=atol, err_msg=msg or "")

    def assertRelative(self, actual, expected, tolerance, msg=None):
        scale = max(float(np.max(np.abs(expected))), np.finfo(float).tiny)
        error = float(np.max(np.abs(np.asarray(actual, dtype=float) - np.asarray(expected, dtype=float)))) / scale
        self.assertLessEqual(error, tolerance, msg or f"relative error {error:.3e} above {tolerance:.1e}")
