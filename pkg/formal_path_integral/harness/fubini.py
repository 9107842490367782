"""Composition law: U over [t0, t1] against the formal integral over the intermediate point.

With ``gamma0 = gamma|[t0, t]`` and ``gamma1 = gamma|[t, t1]`` the product
``U_gamma0(q0, q) U_gamma1(q, q1)`` is ``(2 pi i hbar)^-d e^{i A(q) / hbar} B(q)`` with
``A = S0 + S1`` and

    B(q) = |det W0 det W1|^{1/2} sum_m (i hbar)^m sum_{i+j=m} c0_i(q) c1_j(q).

Its formal integral at ``q = gamma(t)`` reproduces ``U_gamma`` order by order.
"""
import numpy as np

from formal_path_integral import generalLogger
from formal_path_integral.amplitude import DeltaPoly, assemble, divergence_report, s_derivative_trees
from formal_path_integral.classical import (
    Problem,
    action,
    morse_index,
    resolve,
    s_gradients,
    s_hessian,
    solve_bvp,
    van_vleck,
)
from formal_path_integral.errors import DivergentInputError, PreconditionError
from formal_path_integral.graphs import enumerate_diagrams
from formal_path_integral.green import build as build_green
from formal_path_integral.harness.report import CheckReport
from formal_path_integral.stphase import Insertion, formal_integral, required_rank
from formal_path_integral.utils.finite_differences import richardson_gradient

PREFACTOR_TOL = 1e-8
SERIES_TOL = 1e-3
TREE_TOL = 1e-4
# below this a series coefficient counts as zero
SERIES_FLOOR = 1e-6


def split_trajectory(trajectory, split_time):
    """Solve the two halves of ``trajectory`` at ``split_time``."""
    problem = trajectory.problem
    if not problem.t0 < split_time < problem.t1:
        raise PreconditionError(f"split time {split_time} is outside ({problem.t0}, {problem.t1})",
                                module="harness")
    middle = trajectory.position(split_time)
    first = solve_bvp(Problem(problem.lagrangian, problem.t0, split_time, problem.q0, middle,
                              trajectory.velocity(problem.t0), problem.grid))
    second = solve_bvp(Problem(problem.lagrangian, split_time, problem.t1, middle, problem.q1,
                               trajectory.velocity(split_time), problem.grid))
    for name, piece in (("first", first), ("second", second)):
        if not piece.nonfocal:
            raise PreconditionError(f"the {name} piece of the split path is focal", module="harness")
    return first, second


def _nested(function, x, depth, steps):
    """``depth`` nested Richardson gradients; the new axes are appended."""
    if depth == 0:
        return np.asarray(function(x), dtype=float)
    return richardson_gradient(lambda y: _nested(function, y, depth - 1, steps), x, steps)[0]


def insertion_ranks(max_order):
    """Highest derivative rank of each grade ``B_k`` the one-mark diagrams need."""
    ranks = {}
    for diagram in enumerate_diagrams(max(max_order - 1, 0), 1):
        degree = diagram.degrees[diagram.vertex_of_mark(0)]
        for grade in range(0, max_order - 1 - diagram.loop_order + 1):
            ranks[grade] = max(ranks.get(grade, 0), degree)
    return ranks


class GluedPath:
    """``A(q) = S0(q0, q) + S1(q, q1)`` and the grades of ``B(q)`` near the glue point."""

    def __init__(self, first, second, max_order, quad, steps):
        self.first = first
        self.second = second
        self.dimension = first.dimension
        self.max_order = max_order
        self.quad = quad
        self.steps = steps
        self.center = np.array(first.problem.q1)
        self._pieces = {}
        self._series = {}

    def pieces(self, q):
        key = np.asarray(q, dtype=float).tobytes()
        if key not in self._pieces:
            if np.array_equal(q, self.center):
                self._pieces[key] = (self.first, self.second)
            else:
                self._pieces[key] = (resolve(self.first, q1=q), resolve(self.second, q0=q))
        return self._pieces[key]

    # ---------------------- phase ---------------------- #

    def value(self, q):
        first, second = self.pieces(q)
        return action(first) + action(second)

    def gradient(self, q):
        first, second = self.pieces(q)
        return s_gradients(first)[1] + s_gradients(second)[0]

    def hessian(self, q):
        d = self.dimension
        first, second = self.pieces(q)
        return s_hessian(first)[d:, d:] + s_hessian(second)[:d, :d]

    def phase_derivatives(self, rank):
        """``[A, A', A'', ...]`` at the glue point; ranks >= 3 by differences of the Hessian."""
        q = self.center
        derivatives = [np.array(self.value(q)), self.gradient(q), self.hessian(q)]
        for r in range(3, rank + 1):
            derivatives.append(_nested(self.hessian, q, r - 2, self.steps))
        return derivatives

    def tree_phase_derivative(self, rank, green_first, green_second):
        d = self.dimension
        upper = s_derivative_trees(self.first, green_first, rank, self.quad).array
        lower = s_derivative_trees(self.second, green_second, rank, self.quad).array
        end = (slice(d, None),) * rank
        start = (slice(None, d),) * rank
        return -(upper[end] + lower[start])

    # ---------------------- insertion ---------------------- #

    def series(self, q, order):
        key = (np.asarray(q, dtype=float).tobytes(), order)
        if key not in self._series:
            first, second = self.pieces(q)
            self._series[key] = [assemble(piece, build_green(piece), order, self.quad, eta=0)
                                 for piece in (first, second)]
        return self._series[key]

    def grade(self, q, k):
        """``B_k(q)``."""
        first, second = self.pieces(q)
        scale = np.sqrt(van_vleck(first)[1] * van_vleck(second)[1])
        if k == 0:
            return scale
        order = self.max_order if np.array_equal(q, self.center) else k
        head, tail = self.series(q, order)
        total = sum(float(head.series[i].finite) * float(tail.series[k - i].finite) for i in range(k + 1))
        return scale * total

    def insertion(self):
        ranks = insertion_ranks(self.max_order)
        grades = []
        for k in range(self.max_order + 1):
            rank = ranks.get(k, 0)
            grades.append([_nested(lambda y, k=k: self.grade(y, k), self.center, r, self.steps)
                           for r in range(rank + 1)])
        return Insertion(grades, lowest_power=1)


def _refuse_divergences(results, max_order):
    for label, result in results:
        for order, entry in divergence_report(result).items():
            if order <= max_order and not entry.divergence_free:
                raise DivergentInputError(
                    f"{label} has D0 content at order {order}; the composition law assumes "
                    "no ultraviolet divergences", module="harness")


def compare_composition(trajectory, split_time, max_order, quad, steps, sign_convention,
                        tree_cross_check=False):
    """Both sides of the composition law through ``max_order``.

    :rtype: CheckReport
    """
    report = CheckReport("fubini")
    first, second = split_trajectory(trajectory, split_time)
    green = build_green(trajectory)
    direct = assemble(trajectory, green, max_order, quad, sign_convention=sign_convention)
    glued = GluedPath(first, second, max_order, quad, steps)
    _refuse_divergences([("U over the whole interval", direct)]
                        + [(f"U over piece {i}", r) for i, r in enumerate(glued.series(glued.center, max_order))],
                        max_order)

    rank = max(required_rank(max_order, marks=1, lowest_power=1), 2)
    derivatives = glued.phase_derivatives(rank)
    expansion = formal_integral(derivatives, [glued.insertion()], max_order=max_order,
                                sign_convention=sign_convention)

    eta_pieces = morse_index(first) + morse_index(second)
    report.add("action", 0, direct.action, expansion.value, PREFACTOR_TOL)
    report.add("abs_det_w", 0, direct.abs_det_w,
               van_vleck(first)[1] * van_vleck(second)[1] / expansion.abs_determinant, PREFACTOR_TOL)
    report.add("morse_index", 0, direct.morse_index, eta_pieces + expansion.eta, 0, exact=True)

    normalisation = 1.0 / np.sqrt(expansion.abs_determinant * direct.abs_det_w)
    for order in range(max_order + 1):
        lhs = direct.series[order]
        rhs = DeltaPoly([expansion.coefficient(order) * normalisation])
        row = report.add("series", order, lhs, rhs, PREFACTOR_TOL if order == 0 else SERIES_TOL)
        if order:
            row.absolute_floor = SERIES_FLOOR

    if tree_cross_check and rank >= 3:
        trees = glued.tree_phase_derivative(3, build_green(first), build_green(second))
        report.add("phase_rank3", 3, derivatives[3], trees, TREE_TOL)
    generalLogger.info(f"Composition law at t={split_time}: {len(report.rows)} rows compared")
    return report.finish(split_time=split_time, max_order=max_order, fd_steps=list(steps),
                         sign_convention=sign_convention, quad_order=quad.order)


def fubini_check(config):
    """:rtype: CheckReport"""
    fubini = config.require("fubini", "fubini")
    problem = config.build_problem()
    trajectory = solve_bvp(problem)
    report = compare_composition(trajectory, fubini["split_time"], config.loop_order, config.quadrature(),
                                 config.fd_steps, config.sign_convention, fubini.get("tree_cross_check", False))
    report.provenance["config"] = config.snapshot()
    return report
