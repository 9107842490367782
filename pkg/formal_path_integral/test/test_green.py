# coding: utf-8

from __future__ import absolute_import

import unittest

import numpy as np

from formal_path_integral.classical import solve_bvp
from formal_path_integral.errors import DomainError, FocalTrajectoryError
from formal_path_integral.green import GreenRep, build, green_header, green_rows, parse_columns
from formal_path_integral.test import BaseTestCase
from formal_path_integral.test.helper_functions import (
    det1_metric,
    exponential_coordinates,
    exponential_green,
    free_green,
    free_particle,
    harmonic_oscillator,
)


class TestClosedForms(BaseTestCase):
    """Green's functions with known closed forms"""

    def test_exponential_coordinates(self):
        """Test case for build

        ``G = gamma(s) gamma(t) (min(s, t) - s t / T)`` on a 50 x 50 grid.
        """
        for q1 in (np.e, 1.0):
            rep = build(solve_bvp(exponential_coordinates(q1=q1)))
            grid = np.linspace(0.0, 1.0, 50)
            sigma, tau = np.meshgrid(grid, grid, indexing="ij")

            values = rep.eval(sigma, tau).smooth[..., 0, 0]
            self.assertClose(values, exponential_green(sigma, tau, 1.0, 1.0, q1), atol=1e-8)

    def test_free_particle(self):
        rep = build(solve_bvp(free_particle(t1=2.0)))
        grid = np.linspace(0.0, 2.0, 21)
        sigma, tau = np.meshgrid(grid, grid, indexing="ij")
        self.assertClose(rep.smooth(sigma, tau)[..., 0, 0], free_green(sigma, tau, 2.0), atol=1e-9)
        self.assertClose(rep.van_vleck, [[0.5]], rtol=1e-9)


class TestStructure(BaseTestCase):
    """Boundary values, symmetry and the derivative jump"""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.rep = build(solve_bvp(det1_metric()))

    def test_boundary_values(self):
        grid = np.linspace(0.0, 1.0, 7)
        self.assertClose(self.rep.smooth(0.0, grid), np.zeros((7, 2, 2)), atol=1e-10)
        self.assertClose(self.rep.smooth(grid, 1.0), np.zeros((7, 2, 2)), atol=1e-10)

    def test_symmetry(self):
        grid = np.linspace(0.0, 1.0, 9)
        sigma, tau = np.meshgrid(grid, grid, indexing="ij")
        forward = self.rep.smooth(sigma, tau)
        backward = self.rep.smooth(tau, sigma)
        self.assertClose(forward, np.swapaxes(backward, -1, -2), atol=1e-10)

    def test_derivative_jump(self):
        s, gap = 0.45, 1e-9
        above = self.rep.smooth(s, s + gap, 0, 1)
        below = self.rep.smooth(s, s - gap, 0, 1)
        expected = -self.rep.delta_coefficient(s)
        self.assertClose(above - below, expected, atol=1e-6)
        # the diagonal takes the mean of both sides
        self.assertClose(self.rep.smooth(s, s, 0, 1), (above + below) / 2, atol=1e-6)

    def test_delta_coefficient_only_for_mixed_derivative(self):
        value = self.rep.eval(0.2, 0.7, 1, 1)
        a = self.rep.trajectory.partials(0.7, 2).a
        self.assertClose(value.delta_coeff, np.linalg.inv(a), rtol=1e-12)
        self.assertIsNone(self.rep.eval(0.2, 0.7, 1, 0).delta_coeff)
        self.assertIsNone(self.rep.eval(0.2, 0.7).delta_coeff)
        with self.assertRaises(ValueError):
            self.rep.eval(0.2, 0.7, 2, 0)

    def test_extended_kernel_blocks(self):
        kernel = self.rep.extended(0.3, 0.6)
        self.assertClose(kernel[2:, 2:], self.rep.smooth(0.3, 0.6), atol=1e-12)
        self.assertClose(kernel[:2, :2], self.rep.smooth(0.3, 0.6, 1, 1), atol=1e-12)
        self.assertClose(kernel[:2, 2:], self.rep.smooth(0.3, 0.6, 1, 0), atol=1e-12)
        self.assertClose(kernel[2:, :2], self.rep.smooth(0.3, 0.6, 0, 1), atol=1e-12)


class TestConstructions(BaseTestCase):
    """Closed form against variation of parameters"""

    def test_agreement(self):
        for problem in (det1_metric(), harmonic_oscillator(2.0), exponential_coordinates()):
            rep = build(solve_bvp(problem))
            self.assertLessEqual(rep.agreement, 1e-8)
            self.assertLessEqual(rep.check_agreement(points=17), 1e-8)

    def test_modes(self):
        trajectory = solve_bvp(det1_metric())
        closed_form = GreenRep(trajectory, "van_vleck", check=False)
        variation = GreenRep(trajectory, "variation_of_parameters", check=False)
        for derivatives in ((0, 0), (1, 0), (0, 1)):
            self.assertClose(variation.eval(0.25, 0.8, *derivatives).smooth,
                             closed_form.eval(0.25, 0.8, *derivatives).smooth, atol=1e-9)
        with self.assertRaises(ValueError):
            GreenRep(trajectory, "spectral")

    def test_operator_residual(self):
        """Test case for operator_residual

        ``D_t G(sigma, .)^T`` vanishes away from the diagonal.
        """
        rep = build(solve_bvp(det1_metric()))
        for sigma, tau in ((0.3, 0.7), (0.8, 0.2), (0.5, 0.05)):
            self.assertLessEqual(float(np.max(np.abs(rep.operator_residual(sigma, tau)))), 1e-6)

    def test_operator_residual_domain(self):
        rep = build(solve_bvp(free_particle()))
        with self.assertRaises(DomainError):
            rep.operator_residual(0.5, 0.5)
        with self.assertRaises(DomainError):
            rep.operator_residual(0.5, 1.0)
        with self.assertRaises(DomainError):
            rep.smooth(0.5, 1.2)

    def test_focal(self):
        try:
            trajectory = solve_bvp(harmonic_oscillator(np.pi, 0.3, -0.3))
        except FocalTrajectoryError:
            return
        with self.assertRaises(FocalTrajectoryError):
            build(trajectory)


def bump(t, t1):
    """``xi = sin(pi t / T) t (T - t)`` and its second derivative; xi vanishes at both ends."""
    k = np.pi / t1
    p, dp = t * (t1 - t), t1 - 2 * t
    xi = np.sin(k * t) * p
    ddxi = np.sin(k * t) * (-k ** 2 * p - 2.0) + 2 * k * np.cos(k * t) * dp
    return xi, ddxi


class TestReproducing(BaseTestCase):
    """``int G(sigma, t) D[xi](t) dt = xi(sigma)`` for xi vanishing at the endpoints"""

    def apply_kernel(self, rep, source, sigma, points=40):
        # G has a kink on the diagonal; integrate each side separately
        nodes, weights = np.polynomial.legendre.leggauss(points)
        total = 0.0
        for lower, upper in ((rep.t0, sigma), (sigma, rep.t1)):
            half = 0.5 * (upper - lower)
            tau = lower + half * (nodes + 1.0)
            total += half * np.sum(weights * rep.smooth(sigma, tau)[:, 0, 0] * source(tau))
        return total

    def check(self, rep, omega):
        t1 = rep.t1

        def source(tau):
            # D[xi] = -xi'' - omega^2 xi
            xi, ddxi = bump(tau, t1)
            return -ddxi - omega ** 2 * xi

        for sigma in (0.1 * t1, 0.37 * t1, 0.5 * t1, 0.85 * t1):
            self.assertClose(self.apply_kernel(rep, source, sigma), bump(sigma, t1)[0], atol=1e-7)

    def test_free_particle(self):
        for t1 in (1.0, 2.0):
            self.check(build(solve_bvp(free_particle(t1=t1))), 0.0)

    def test_harmonic_oscillator(self):
        for t1 in (1.0, 2.5):
            self.check(build(solve_bvp(harmonic_oscillator(t1))), 1.0)


class TestTable(BaseTestCase):
    """Grid dumps"""

    def test_rows(self):
        rep = build(solve_bvp(det1_metric()))
        derivatives = parse_columns("G, dsG, dsdtG")
        rows = green_rows(rep, 3, derivatives)

        self.assertEqual(derivatives, ((0, 0), (1, 0), (1, 1)))
        self.assertEqual(green_header(derivatives), ["sigma", "tau", "i", "j", "G", "dsG", "dsdtG"])
        self.assertEqual(len(rows), 3 * 3 * 2 * 2)
        sigma, tau, i, j, value = rows[19][:5]
        self.assertEqual((i, j), (2, 2))
        self.assertClose(value, rep.smooth(sigma, tau)[1, 1], atol=1e-12)

    def test_unknown_column(self):
        with self.assertRaises(ValueError):
            parse_columns("G, ddG")
        with self.assertRaises(ValueError):
            parse_columns(" , ")


if __name__ == '__main__':
    unittest.main()
