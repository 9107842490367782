# coding: utf-8

from __future__ import absolute_import

import glob
import os
import unittest

import numpy as np
from jsonschema import validate

from formal_path_integral import Config
from formal_path_integral.amplitude import QuadratureConfig
from formal_path_integral.classical import solve_bvp
from formal_path_integral.errors import ConfigValidationError, PreconditionError
from formal_path_integral.expr import parse
from formal_path_integral.harness import (
    CheckReport,
    batch,
    compare_composition,
    compare_coordinates,
    load_config,
    run,
    split_trajectory,
    transformed_problem,
)
from formal_path_integral.test import BaseTestCase
from formal_path_integral.test.helper_functions import (
    EXPONENTIAL_CONFIG,
    HARMONIC_CONFIG,
    STPHASE_CONFIG,
    det1_metric,
    flat_quartic,
    free_particle,
    harmonic_oscillator,
    shear_map,
    temporary_directory,
    write_config,
)
from formal_path_integral.test.json_schemas import (
    CheckReportSchema,
    DiagramsSchema,
    DivergencesSchema,
    StphaseSchema,
)
from formal_path_integral.utils.files.file_interactions import validate_document

FOCAL_CONFIG = HARMONIC_CONFIG.replace("t1 = 1.0", "t1 = 3.141592653589793")


class TestLoadConfig(BaseTestCase):
    """Run configuration parsing and validation"""

    def test_valid_file(self):
        """Test case for load_config"""
        with temporary_directory() as directory:
            config = load_config(write_config(directory, "harmonic.ini", HARMONIC_CONFIG))

        self.assertEqual(config.problem["dimension"], 1)
        self.assertEqual(config.parameters, {"w": 1.0})
        self.assertEqual(config.loop_order, 1)
        self.assertEqual(config.quadrature().order, 16)
        self.assertEqual(config.fd_steps, tuple(Config.FD_STEPS))
        self.assertEqual(config.sign_convention, Config.SIGN_CONVENTION)
        self.assertEqual(config.lines["problem.lagrangian"], 3)
        self.assertEqual(config.snapshot()["problem"]["q1"], "0.7")

        problem = config.build_problem()
        self.assertClose(problem.q0, [0.3])
        self.assertEqual(problem.duration, 1.0)

    def test_max_order_override(self):
        with temporary_directory() as directory:
            config = load_config(write_config(directory, "harmonic.ini", HARMONIC_CONFIG))
        config.max_order = 3
        self.assertEqual(config.loop_order, 3)

    def test_missing_key(self):
        text = HARMONIC_CONFIG.replace("    lagrangian = v^2/2 - w^2*q^2/2\n", "")
        with temporary_directory() as directory:
            with self.assertRaises(ConfigValidationError) as context:
                load_config(write_config(directory, "broken.ini", text))
        self.assertIn("problem.lagrangian", context.exception.messages)
        self.assertEqual(context.exception.module, "harness")

    def test_bad_expression_reports_its_line(self):
        text = HARMONIC_CONFIG.replace("v^2/2 - w^2*q^2/2", "v^2/2 - k*q^2/2")
        with temporary_directory() as directory:
            with self.assertRaises(ConfigValidationError) as context:
                load_config(write_config(directory, "broken.ini", text))
        self.assertIn("problem.lagrangian (line 3)", str(context.exception))

    def test_invalid_values(self):
        with temporary_directory() as directory:
            # ------------------------------ t1 before t0 ------------------------------ #
            text = HARMONIC_CONFIG.replace("t1 = 1.0", "t1 = -1.0")
            with self.assertRaises(ConfigValidationError) as context:
                load_config(write_config(directory, "times.ini", text))
            self.assertIn("problem.t1", context.exception.messages)

            # ------------------------------ wrong endpoint size ------------------------------ #
            text = HARMONIC_CONFIG.replace("q0 = 0.3", "q0 = 0.3, 0.1")
            with self.assertRaises(ConfigValidationError) as context:
                load_config(write_config(directory, "endpoints.ini", text))
            self.assertIn("problem.q0", context.exception.messages)

            # ------------------------------ unknown sign convention ------------------------------ #
            text = HARMONIC_CONFIG + "    sign_convention = plus_i\n"
            with self.assertRaises(ConfigValidationError) as context:
                load_config(write_config(directory, "sign.ini", text))
            self.assertIn("compute.sign_convention", context.exception.messages)

            # ------------------------------ unreadable file ------------------------------ #
            with self.assertRaises(ConfigValidationError):
                load_config(f"{directory}/missing.ini")

    def test_stphase_section(self):
        with temporary_directory() as directory:
            config = load_config(write_config(directory, "stphase.ini", STPHASE_CONFIG))
            self.assertIsNone(config.problem)
            self.assertIsNotNone(config.potential)
            self.assertEqual(config.stphase["hbar"], [0.2, 0.1, 0.05])

            text = STPHASE_CONFIG.replace("region = -5.0, 5.0", "region = -5.0")
            with self.assertRaises(ConfigValidationError) as context:
                load_config(write_config(directory, "region.ini", text))
            self.assertIn("stphase.region", context.exception.messages)

    def test_required_section(self):
        with temporary_directory() as directory:
            config = load_config(write_config(directory, "stphase.ini", STPHASE_CONFIG))
        with self.assertRaises(ConfigValidationError) as context:
            config.build_problem()
        self.assertIn("problem", context.exception.messages)


class TestShippedConfigs(BaseTestCase):
    """Every configuration under configs/ loads"""

    def test_load(self):
        directory = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))),
                                 "configs")
        paths = sorted(glob.glob(os.path.join(directory, "*.ini")))
        self.assertEqual(len(paths), 7)
        for path in paths:
            config = load_config(path)
            self.assertTrue(config.problem is not None or config.stphase is not None, path)


class TestCheckReport(BaseTestCase):
    """Order-by-order comparison rows"""

    def test_rows(self):
        report = CheckReport("fubini")
        close = report.add("action", 0, 1.0, 1.0 + 1e-10, 1e-8)
        far = report.add("series", 1, [0.5], [0.6], 1e-3)
        exact = report.add("morse_index", 0, 1, 1, 0, exact=True)

        self.assertTrue(close.passed)
        self.assertFalse(far.passed)
        self.assertTrue(exact.passed)
        self.assertClose(far.absolute, 0.1, rtol=1e-12)
        self.assertClose(far.relative, 0.1 / 0.6, rtol=1e-12)
        self.assertFalse(report.passed)

        document = report.finish(max_order=1).to_dict()
        validate(document, CheckReportSchema)
        self.assertEqual(document["provenance"], {"max_order": 1})
        self.assertNotIn("runtime", document["provenance"])

    def test_absolute_floor(self):
        report = CheckReport("coords")
        row = report.add("series", 2, [1e-14], [-1e-14], 1e-4)
        self.assertGreater(row.relative, 1e-4)
        self.assertTrue(row.passed)

    def test_uneven_lengths(self):
        report = CheckReport("coords")
        row = report.add("series", 1, [1.0, 2.0], [1.0], 1e-4)
        self.assertClose(row.absolute, 2.0)
        self.assertFalse(row.passed)


class TestCompositionLaw(BaseTestCase):
    """Gluing two halves of a path through the formal integral"""

    def assertReportPassed(self, report):
        failing = [row.to_dict() for row in report.rows if not row.passed]
        self.assertTrue(report.passed, f"failing rows: {failing}")

    def test_split_trajectory(self):
        trajectory = solve_bvp(free_particle())
        first, second = split_trajectory(trajectory, 0.25)
        self.assertClose(first.problem.q1, [0.25], atol=1e-10)
        self.assertEqual(second.problem.t0, 0.25)
        with self.assertRaises(PreconditionError):
            split_trajectory(trajectory, 1.0)

    def test_free_particle(self):
        """Test case for compare_composition"""
        trajectory = solve_bvp(free_particle())
        report = compare_composition(trajectory, 0.4, 1, QuadratureConfig(order=16), Config.FD_STEPS, "minus_i")

        self.assertReportPassed(report)
        quantities = [row.quantity for row in report.rows]
        self.assertEqual(quantities, ["action", "abs_det_w", "morse_index", "series", "series"])

    def test_harmonic_oscillator(self):
        trajectory = solve_bvp(harmonic_oscillator(2.0))
        report = compare_composition(trajectory, 0.8, 1, QuadratureConfig(order=16), Config.FD_STEPS, "minus_i")
        self.assertReportPassed(report)

    def test_flat_quartic(self):
        trajectory = solve_bvp(flat_quartic())
        report = compare_composition(trajectory, 0.5, 1, QuadratureConfig(order=16), Config.FD_STEPS, "minus_i",
                                     tree_cross_check=True)

        self.assertReportPassed(report)
        series = [row for row in report.rows if row.quantity == "series" and row.order == 1][0]
        self.assertLessEqual(series.relative, 1e-3)
        self.assertIn("phase_rank3", [row.quantity for row in report.rows])
        validate(report.to_dict(), CheckReportSchema)

    def test_difference_steps_converge(self):
        """Halving the difference steps shrinks the order-1 residual at least quadratically"""
        trajectory = solve_bvp(flat_quartic())
        residuals = []
        for steps in ((0.2, 0.1), (0.1, 0.05)):
            report = compare_composition(trajectory, 0.5, 1, QuadratureConfig(order=16), steps, "minus_i")
            series = [row for row in report.rows if row.quantity == "series" and row.order == 1][0]
            residuals.append(series.absolute)

        self.assertGreater(residuals[0], 0.0)
        self.assertGreater(residuals[0] / residuals[1], 3.0)



class TestCoordinateChange(BaseTestCase):
    """Invariance under volume-preserving maps"""

    def test_identity(self):
        problem = det1_metric()
        identity = [parse("q1", 2), parse("q2", 2)]
        report = compare_coordinates(problem, identity, 1, QuadratureConfig(order=16), "minus_i")

        self.assertTrue(report.passed)
        for row in report.rows:
            self.assertLessEqual(row.absolute, 1e-7, row.to_dict())

    def test_shear(self):
        """Test case for compare_coordinates"""
        report = compare_coordinates(det1_metric(), shear_map(), 1, QuadratureConfig(order=16), "minus_i")

        self.assertTrue(report.passed, [row.to_dict() for row in report.rows])
        series = [row for row in report.rows if row.quantity == "series" and row.order == 1][0]
        self.assertLessEqual(min(series.relative, series.absolute), 1e-4)
        self.assertIn("divergences", report.provenance)

    def test_pulled_back_endpoints(self):
        problem = det1_metric()
        image = transformed_problem(problem, shear_map())
        # f(x) = (x1 + 0.2 sin x2, x2)
        self.assertClose(image.q1, [0.5 - 0.2 * np.sin(0.4), 0.4], atol=1e-12)

    def test_scaling_is_rejected(self):
        scaling = [parse("2*q1", 2), parse("q2", 2)]
        with self.assertRaises(PreconditionError) as context:
            compare_coordinates(det1_metric(), scaling, 1, QuadratureConfig(order=16), "minus_i")
        self.assertIn("not volume preserving", str(context.exception))


class TestBatch(BaseTestCase):
    """Divergence survey over several configurations"""

    def test_divergence_survey(self):
        """Test case for batch"""
        with temporary_directory() as directory:
            configs = [
                load_config(write_config(directory, "c_focal.ini", FOCAL_CONFIG)),
                load_config(write_config(directory, "a_harmonic.ini", HARMONIC_CONFIG)),
                load_config(write_config(directory, "b_exponential.ini", EXPONENTIAL_CONFIG)),
            ]
            entries = batch(configs, workers=2)

        self.assertEqual([entry["config"].rsplit("/", 1)[-1] for entry in entries],
                         ["a_harmonic.ini", "b_exponential.ini", "c_focal.ini"])
        harmonic, exponential, focal = entries
        self.assertTrue(harmonic["divergence_free"])
        self.assertFalse(exponential["divergence_free"])
        self.assertEqual(focal["module"], "classical")
        self.assertIn("error", focal)
        validate(validate_document({"entries": entries}, "divergences"), DivergencesSchema)


class TestRunner(BaseTestCase):
    """Subcommand dispatch"""

    def test_diagrams(self):
        """Test case for run"""
        outcome = run(None, "diagrams", max_order=1)
        self.assertEqual(len(outcome.document["diagrams"]), 3)
        self.assertEqual(outcome.table[0], ["chi", "vertices", "edges", "aut", "canonical"])
        validate(validate_document(outcome.document, "diagrams"), DiagramsSchema)

    def test_stphase_oracle(self):
        with temporary_directory() as directory:
            config = load_config(write_config(directory, "stphase.ini", STPHASE_CONFIG))
        outcome = run(config, "stphase-oracle")

        self.assertEqual([row["hbar"] for row in outcome.document["rows"]], [0.2, 0.1, 0.05])
        self.assertEqual(len(outcome.table[1]), 3)
        validate(validate_document(outcome.document, "stphase"), StphaseSchema)

    def test_unknown_subcommand(self):
        with self.assertRaises(ValueError):
            run(None, "integrate")


if __name__ == '__main__':
    unittest.main()
