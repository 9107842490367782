# coding: utf-8

from __future__ import absolute_import

import unittest

import numpy as np

from formal_path_integral.errors import (
    DimensionMismatchError,
    ExpressionSyntaxError,
    JetDomainError,
    PreconditionError,
    SingularMatrixError,
    UnknownIdentifierError,
)
from formal_path_integral.expr import (
    compose,
    evaluate_point,
    jet_eval,
    parse,
    to_source,
    velocity_hessian,
)
from formal_path_integral.expr.nodes import Variable
from formal_path_integral.test import BaseTestCase
from formal_path_integral.test.helper_functions import DET1_METRIC, EXPONENTIAL, shear_map
from formal_path_integral.utils.finite_differences import richardson_gradient


class TestParser(BaseTestCase):
    """Expression parser tests"""

    def test_parse_exponential_coordinates(self):
        """Test case for parse

        The Lagrangian of free motion in exponential coordinates.
        """
        expression = parse(EXPONENTIAL, 1)

        self.assertEqual(expression.dimension, 1)
        self.assertEqual(expression.variables(), {Variable("v", 1), Variable("q", 1)})
        self.assertEqual(parse(to_source(expression), 1), expression)

    def test_parse_single_variable(self):
        expression = parse("q", 1)
        self.assertEqual(expression.root, Variable("q", 1))

    def test_parse_syntax_error_offset(self):
        with self.assertRaises(ExpressionSyntaxError) as context:
            parse("1+", 1)
        self.assertEqual(context.exception.offset, 2)

        with self.assertRaises(ExpressionSyntaxError):
            parse("   ", 1)
        with self.assertRaises(ExpressionSyntaxError):
            parse("sin q", 1)

    def test_parse_identifier_errors(self):
        with self.assertRaises(UnknownIdentifierError):
            parse("v + x", 1)
        with self.assertRaises(DimensionMismatchError):
            parse("v1*v3", 2)
        # bare v and q are aliases in one dimension only
        with self.assertRaises(DimensionMismatchError):
            parse("v^2/2", 2)

    def test_parse_parameters(self):
        expression = parse("v^2/2 - w^2*q^2/2", 1, {"w": 2.0})
        self.assertEqual(expression.parameter_map, {"w": 2.0})
        self.assertClose(evaluate_point(expression, [0.0, 1.0, 0.5]), 0.5 - 4.0 * 0.25 / 2)

        with self.assertRaises(ValueError):
            parse("q", 1, {"tau": 1.0})

    def test_round_trip(self):
        sources = [
            EXPONENTIAL,
            "-q^2 + 2^3^2*v",
            "sqrt(1 + q^2)*tanh(v) - log(2 + cos(tau*q))",
            "exp(-0.5*q)/(1 + v^2)",
        ]
        point = np.array([0.3, 0.7, 1.1])
        for source in sources:
            expression = parse(source, 1)
            again = parse(to_source(expression), 1)
            self.assertEqual(again, expression, source)
            np.testing.assert_array_equal(jet_eval(again, point, 4).coefficients,
                                          jet_eval(expression, point, 4).coefficients)

    def test_power_binds_right(self):
        self.assertClose(evaluate_point(parse("2^3^2", 1), [0.0, 0.0, 0.0]), 512.0)
        # unary minus applies to the atom: -q^2 is (-q)^2
        self.assertClose(evaluate_point(parse("-q^2", 1), [0.0, 0.0, 3.0]), 9.0)


class TestJets(BaseTestCase):
    """Truncated Taylor jet tests"""

    def test_quadratic_kinetic_term(self):
        """Test case for jet_eval

        L = v^2/2 at v = 3.
        """
        jet = jet_eval(parse("v^2/2", 1), [0.0, 3.0, 0.4], 2)

        self.assertClose(jet.value, 4.5)
        self.assertClose(jet.partial((0, 1, 0)), 3.0)
        self.assertClose(jet.partial((0, 2, 0)), 1.0)
        self.assertClose(jet.partial((0, 0, 1)), 0.0)
        self.assertClose(jet.partial((0, 0, 2)), 0.0)
        self.assertClose(jet.partial((0, 1, 1)), 0.0)

    def test_exponential_coordinates_mixed_partial(self):
        ell, gamma = 0.7, 1.3
        jet = jet_eval(parse(EXPONENTIAL, 1), [0.0, ell * gamma, gamma], 2)
        self.assertClose(jet.partial((0, 1, 1)), -2 * ell / gamma ** 2, rtol=1e-12)

    def test_constant(self):
        jet = jet_eval(parse("7", 1), [0.2, -1.0, 5.0], 3)
        self.assertEqual(float(jet.value), 7.0)
        self.assertFalse(np.any(jet.coefficients[1:]))

    def test_polynomial_exact(self):
        expression = parse("3*v^3*q - 2*q^2*tau + v", 1)
        tau, v, q = 0.5, -1.2, 0.8
        jet = jet_eval(expression, [tau, v, q], 4)

        self.assertClose(jet.value, 3 * v ** 3 * q - 2 * q ** 2 * tau + v, rtol=1e-12)
        self.assertClose(jet.partial((0, 1, 0)), 9 * v ** 2 * q + 1, rtol=1e-12)
        self.assertClose(jet.partial((0, 0, 1)), 3 * v ** 3 - 4 * q * tau, rtol=1e-12)
        self.assertClose(jet.partial((1, 0, 1)), -4 * q, rtol=1e-12)
        self.assertClose(jet.partial((0, 2, 1)), 18 * v, rtol=1e-12)
        self.assertClose(jet.partial((0, 3, 1)), 18.0, rtol=1e-12)
        self.assertClose(jet.partial((1, 0, 2)), -4.0, rtol=1e-12)
        self.assertClose(jet.partial((0, 4, 0)), 0.0, atol=1e-12)

    def test_partials_match_finite_differences(self):
        expression = parse(DET1_METRIC + " + sin(tau*q2)*q1", 2)
        point = np.array([0.4, 0.9, -0.3, 0.2, 0.6])

        gradient, _ = richardson_gradient(lambda x: evaluate_point(expression, x), point, (1e-3, 5e-4))
        jet = jet_eval(expression, point, 3)
        slots = tuple(range(5))
        self.assertRelative(jet.tensor(1, slots), gradient, 1e-6)

        hessian, _ = richardson_gradient(lambda x: jet_eval(expression, x, 1).tensor(1, slots),
                                         point, (1e-3, 5e-4))
        self.assertRelative(jet.tensor(2, slots), hessian, 1e-6)

        third, _ = richardson_gradient(lambda x: jet_eval(expression, x, 2).tensor(2, slots),
                                       point, (1e-3, 5e-4))
        self.assertRelative(jet.tensor(3, slots), third, 1e-6)

    def test_batched_points(self):
        expression = parse(EXPONENTIAL, 1)
        points = np.stack([np.zeros(4), np.linspace(0.1, 0.4, 4), np.linspace(1.0, 2.5, 4)], axis=-1)
        jet = jet_eval(expression, points, 2)

        self.assertEqual(jet.batch_shape, (4,))
        for k in range(4):
            single = jet_eval(expression, points[k], 2)
            self.assertClose(jet.coefficients[:, k], single.coefficients, rtol=1e-14)

    def test_domain_errors(self):
        with self.assertRaises(JetDomainError):
            jet_eval(parse("log(q)", 1), [0.0, 0.0, -1.0], 1)
        with self.assertRaises(JetDomainError):
            jet_eval(parse("q^0.5", 1), [0.0, 0.0, -2.0], 1)
        with self.assertRaises(JetDomainError):
            jet_eval(parse("1/q", 1), [0.0, 0.0, 0.0], 1)
        with self.assertRaises(JetDomainError):
            jet_eval(parse("q", 1), [0.0, 0.0, np.inf], 1)
        # constant integer exponents accept any base
        self.assertClose(evaluate_point(parse("q^3", 1), [0.0, 0.0, -2.0]), -8.0)


class TestVelocityHessian(BaseTestCase):
    """Velocity Hessian tests"""

    def test_free_particle(self):
        a, a_inverse, positive_definite = velocity_hessian(jet_eval(parse("v^2/2", 1), [0.0, 1.0, 0.0], 2))
        self.assertClose(a, [[1.0]])
        self.assertClose(a_inverse, [[1.0]])
        self.assertTrue(positive_definite)

    def test_exponential_coordinates(self):
        gamma = 1.7
        a, a_inverse, _ = velocity_hessian(jet_eval(parse(EXPONENTIAL, 1), [0.0, 0.5, gamma], 2))
        self.assertClose(a, [[1 / gamma ** 2]], rtol=1e-12)
        self.assertClose(a_inverse, [[gamma ** 2]], rtol=1e-12)

    def test_degenerate_lagrangian(self):
        with self.assertRaises(SingularMatrixError):
            velocity_hessian(jet_eval(parse("v*q", 1), [0.0, 1.0, 1.0], 2))

    def test_order_too_low(self):
        with self.assertRaises(JetDomainError):
            velocity_hessian(jet_eval(parse("v^2/2", 1), [0.0, 1.0, 0.0], 1))


class TestCompose(BaseTestCase):
    """Pull-back of a Lagrangian along a coordinate map"""

    def test_identity_map(self):
        base = parse(DET1_METRIC, 2)
        composed = compose(base, [parse("q1", 2), parse("q2", 2)])
        tau, v, q = 0.3, np.array([0.4, -0.2]), np.array([0.1, 0.5])

        self.assertClose(composed.jet(tau, v, q, 3).coefficients,
                         jet_eval(base, np.concatenate([[tau], v, q]), 3).coefficients, atol=1e-13)

    def test_shear_map(self):
        base = parse(DET1_METRIC, 2)
        composed = compose(base, shear_map())
        x = np.array([0.2, 0.9])
        w = np.array([0.3, -0.4])

        value, jacobian = composed.map_value(x)
        self.assertClose(value, [0.2 + 0.2 * np.sin(0.9), 0.9], rtol=1e-14)
        self.assertClose(jacobian, [[1.0, 0.2 * np.cos(0.9)], [0.0, 1.0]], rtol=1e-14)

        q, v = value, jacobian @ w
        expected = evaluate_point(base, np.concatenate([[0.0], v, q]))
        self.assertClose(composed.value(0.0, w, x), expected, rtol=1e-13)

    def test_map_on_velocities_rejected(self):
        with self.assertRaises(PreconditionError):
            compose(parse(DET1_METRIC, 2), [parse("q1 + v2", 2), parse("q2", 2)])


if __name__ == '__main__':
    unittest.main()
