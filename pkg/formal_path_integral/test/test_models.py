# coding: utf-8

from __future__ import absolute_import

import json
import unittest

import numpy as np

from formal_path_integral.amplitude import DeltaPoly, QuadratureConfig, assemble
from formal_path_integral.classical import solve_bvp
from formal_path_integral.encoder import JSONEncoder
from formal_path_integral.green import build
from formal_path_integral.models import Error, PropagatorDocument, SeriesTerm
from formal_path_integral.test import BaseTestCase
from formal_path_integral.test.helper_functions import flat_quartic


class TestModels(BaseTestCase):
    """Result document models"""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        trajectory = solve_bvp(flat_quartic())
        cls.result = assemble(trajectory, build(trajectory), 1, QuadratureConfig(order=16))

    def test_from_result(self):
        """Test case for PropagatorDocument.from_result"""
        document = PropagatorDocument.from_result(self.result).to_dict()

        self.assertEqual(document["d"], 1)
        self.assertEqual(document["S"], float(self.result.action))
        self.assertEqual(document["log_abs_det_W"], self.result.log_abs_det_w)
        self.assertEqual([term["order"] for term in document["series"]], [0, 1])
        self.assertEqual(len(document["diagrams"]), 3)
        self.assertEqual(sorted(term["aut"] for term in document["diagrams"]), [8, 8, 12])

    def test_validation(self):
        document = PropagatorDocument.from_result(self.result)
        with self.assertRaises(ValueError):
            document.d = 0
        error = Error("boom", "expr")
        with self.assertRaises(ValueError):
            error.error = None
        self.assertEqual(error.to_dict(), {"error": "boom", "module": "expr", "subcommand": None})
        self.assertEqual(document, PropagatorDocument.from_result(self.result))

    def test_encoder(self):
        payload = {
            "term": SeriesTerm(2, [0.5, 0.25]),
            "poly": DeltaPoly([1.0, 0.0, 3.0]),
            "array": np.arange(3),
            "scalar": np.float64(0.5),
            "count": np.int64(4),
            "flag": np.bool_(True),
            "error": Error("boom"),
        }
        text = json.dumps(payload, cls=JSONEncoder, sort_keys=True)
        self.assertEqual(json.loads(text), {
            "term": {"order": 2, "delta_poly": [0.5, 0.25]},
            "poly": [1.0, 0.0, 3.0],
            "array": [0, 1, 2],
            "scalar": 0.5,
            "count": 4,
            "flag": True,
            "error": {"error": "boom"},
        })


if __name__ == '__main__':
    unittest.main()
