"""Invariance of U under volume-preserving changes of coordinates ``q = f(x)``."""
import numpy as np
from scipy.optimize import root

from formal_path_integral import generalLogger
from formal_path_integral.amplitude import assemble, divergence_report, finite_part
from formal_path_integral.classical import Problem, solve_bvp
from formal_path_integral.errors import ConvergenceError, PreconditionError
from formal_path_integral.expr import compose
from formal_path_integral.green import build as build_green
from formal_path_integral.harness.report import CheckReport

VOLUME_TOL = 1e-10
CLASSICAL_TOL = 1e-8
SERIES_TOL = 1e-4
SERIES_FLOOR = 1e-10
# points sampled along the image path for the determinant check
VOLUME_SAMPLES = 65


def invert_map(composed, q, guess=None):
    """Solve ``f(x) = q`` by Newton iteration from ``guess`` (default ``q``)."""
    q = np.asarray(q, dtype=float)
    guess = q if guess is None else np.asarray(guess, dtype=float)
    solution = root(lambda x: composed.map_value(x)[0] - q, guess,
                    jac=lambda x: composed.map_value(x)[1], method="hybr", tol=1e-14)
    if not solution.success:
        raise ConvergenceError(f"coordinate map could not be inverted at q={q.tolist()}: {solution.message}",
                               module="harness")
    return solution.x


def check_volume(composed, points, where):
    """Raise unless ``|det Df| = 1`` at every point."""
    _, jacobian = composed.map_value(np.atleast_2d(points))
    determinants = np.linalg.det(jacobian)
    worst = int(np.argmax(np.abs(np.abs(determinants) - 1.0)))
    if abs(abs(determinants[worst]) - 1.0) > VOLUME_TOL:
        raise PreconditionError(
            f"coordinate map is not volume preserving: det Df = {determinants[worst]:.12g} {where}",
            module="harness")
    return determinants


def transformed_problem(problem, coordinate_map, velocity=None):
    """The Dirichlet problem for ``L o (id, df, f)`` between the preimages of the endpoints.

    :rtype: Problem
    """
    composed = compose(problem.lagrangian, coordinate_map)
    x0 = invert_map(composed, problem.q0)
    x1 = invert_map(composed, problem.q1)
    check_volume(composed, np.array([x0, x1]), "at the endpoints")
    guess = None
    if velocity is not None:
        guess = np.linalg.solve(composed.map_value(x0)[1], velocity)
    return Problem(composed, problem.t0, problem.t1, x0, x1, guess, problem.grid)


def compare_coordinates(problem, coordinate_map, max_order, quad, sign_convention):
    """Assemble ``U`` in both charts and compare the classical data and the series.

    :rtype: CheckReport
    """
    report = CheckReport("coords")
    original = solve_bvp(problem)
    image = transformed_problem(problem, coordinate_map, original.velocity(problem.t0))
    pulled_back = solve_bvp(image)
    times = np.linspace(problem.t0, problem.t1, VOLUME_SAMPLES)
    check_volume(image.lagrangian, pulled_back.position(times), "along the path")

    results = []
    for trajectory in (original, pulled_back):
        results.append(assemble(trajectory, build_green(trajectory), max_order, quad,
                                sign_convention=sign_convention))
    direct, transformed = results

    report.add("action", 0, direct.action, transformed.action, CLASSICAL_TOL)
    report.add("abs_det_w", 0, direct.abs_det_w, transformed.abs_det_w, CLASSICAL_TOL)
    report.add("morse_index", 0, direct.morse_index, transformed.morse_index, 0, exact=True)
    lhs, rhs = finite_part(direct), finite_part(transformed)
    for order in range(max_order + 1):
        row = report.add("series", order, lhs[order], rhs[order], CLASSICAL_TOL if order == 0 else SERIES_TOL)
        row.absolute_floor = SERIES_FLOOR

    generalLogger.info(f"Coordinate check through order {max_order}: passed={report.passed}")
    return report.finish(
        max_order=max_order,
        sign_convention=sign_convention,
        quad_order=quad.order,
        x0=image.q0.tolist(),
        x1=image.q1.tolist(),
        divergences={
            "direct": [entry.to_dict() for entry in divergence_report(direct).values()],
            "transformed": [entry.to_dict() for entry in divergence_report(transformed).values()],
        },
    )


def coordinate_check(config):
    """:rtype: CheckReport"""
    config.require("coords", "coords")
    report = compare_coordinates(config.build_problem(), config.coordinate_map, config.loop_order,
                                 config.quadrature(), config.sign_convention)
    report.provenance["config"] = config.snapshot()
    return report
