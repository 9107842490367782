import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicHermiteSpline

from formal_path_integral import Config, generalLogger
from formal_path_integral.classical.dynamics import LagrangianPartials, flow_rhs, pack, unpack
from formal_path_integral.errors import (
    ConvergenceError,
    DomainError,
    FocalTrajectoryError,
    InternalInconsistencyError,
    JetDomainError,
    SingularMatrixError,
)

# relative slack when evaluating at the interval ends
TIME_SLACK = 1e-12


class Trajectory:
    """A classical path with its flow Jacobian and Jacobi fields.

    Attributes:
        problem (Problem): the Dirichlet data that was solved.
        times (numpy.ndarray): solver grid.
        states (numpy.ndarray): ``(q, v, Phi)`` at every grid time.
        nonfocal (bool): whether ``dq(t1)/dv0`` is invertible.
        el_residual (float): largest scaled Euler-Lagrange residual of the interpolated path at the interval midpoints.
        newton_iterations (int): shooting iterations used.
    """

    def __init__(self, problem, times, states, derivatives, newton_iterations=0):
        self.problem = problem
        self.dimension = problem.dimension
        self.times = times
        self.states = states
        self.newton_iterations = newton_iterations
        self._spline = CubicHermiteSpline(times, states, derivatives, axis=0)

        d = self.dimension
        _, _, flow_end = unpack(states[-1], d)
        self._flow_end = flow_end
        self.focal_determinant = float(np.linalg.det(flow_end[:d, d:]))
        self.nonfocal = abs(self.focal_determinant) > Config.FOCAL_TOL * problem.duration ** d

        q_grid, v_grid, _ = unpack(states, d)
        LagrangianPartials(problem.lagrangian, times, v_grid, q_grid, 2).check_regular()

        # the interpolant's slopes at the nodes are the equation of motion itself; test it between nodes
        midpoints = 0.5 * (times[1:] + times[:-1])
        q_mid, v_mid, _ = unpack(self._spline(midpoints), d)
        acceleration_mid = unpack(self._spline(midpoints, 1), d)[1]
        partials = LagrangianPartials(problem.lagrangian, midpoints, v_mid, q_mid, 2)
        self.el_residual = float(np.max(partials.el_residual(acceleration_mid)))

    # ---------------------- sampling ---------------------- #

    @property
    def t0(self):
        return self.problem.t0

    @property
    def t1(self):
        return self.problem.t1

    def _check_times(self, tau):
        tau = np.asarray(tau, dtype=float)
        slack = TIME_SLACK * max(1.0, abs(self.t0), abs(self.t1))
        if np.any(tau < self.t0 - slack) or np.any(tau > self.t1 + slack):
            raise DomainError(f"time outside [{self.t0}, {self.t1}]", module="classical")
        return np.clip(tau, self.t0, self.t1)

    def state(self, tau):
        return unpack(self._spline(self._check_times(tau)), self.dimension)

    def position(self, tau):
        return self.state(tau)[0]

    def velocity(self, tau):
        return self.state(tau)[1]

    def flow(self, tau):
        return self.state(tau)[2]

    def partials(self, tau, order=3):
        """Partials of L along the path at ``tau``."""
        q, v, _ = self.state(tau)
        return LagrangianPartials(self.problem.lagrangian, self._check_times(tau), v, q, order)

    def acceleration(self, tau):
        return self.partials(tau, 2).acceleration()

    # ---------------------- Jacobi fields ---------------------- #

    def jacobi_fields(self, tau):
        """``(phi0, phi1, dphi0, dphi1)`` at ``tau``, each ``[..., i, k] = d gamma^i / d q_a^k``.

        ``phi1 = Phi_qv Phi_qv(t1)^-1`` and ``phi0 = Phi_qq - Phi_qv Phi_qv(t1)^-1 Phi_qq(t1)``;
        the derivatives use the velocity rows of the flow.
        """
        if not self.nonfocal:
            raise FocalTrajectoryError("Jacobi fields are undefined on a focal trajectory", module="classical")
        d = self.dimension
        flow = self.flow(tau)
        end = self._flow_end
        end_inverse = np.linalg.inv(end[:d, d:])
        correction = end_inverse @ end[:d, :d]

        q_rows, v_rows = flow[..., :d, :], flow[..., d:, :]
        phi1 = q_rows[..., d:] @ end_inverse
        dphi1 = v_rows[..., d:] @ end_inverse
        phi0 = q_rows[..., :d] - q_rows[..., d:] @ correction
        dphi0 = v_rows[..., :d] - v_rows[..., d:] @ correction
        return phi0, phi1, dphi0, dphi1

    def __repr__(self):
        return (f"Trajectory(t0={self.t0}, t1={self.t1}, q0={self.problem.q0.tolist()}, "
                f"q1={self.problem.q1.tolist()}, nonfocal={self.nonfocal})")


def integrate(problem, v0):
    """Integrate (q, v, Phi) from ``t0`` with ``q(t0) = q0``, ``v(t0) = v0``.

    Returns:
        tuple: ``(times, states, derivatives)``.
    """
    d = problem.dimension
    rhs = flow_rhs(problem.lagrangian)
    initial = pack(problem.q0, np.asarray(v0, dtype=float), np.eye(2 * d))
    grid = problem.grid or Config.GREEN_GRID
    solution = solve_ivp(rhs, (problem.t0, problem.t1), initial, method="RK45",
                         rtol=Config.BVP_RTOL, atol=Config.BVP_ATOL, max_step=problem.duration / (grid - 1))
    if not solution.success:
        raise ConvergenceError(f"initial value integration failed: {solution.message}", module="classical")
    states = solution.y.T
    derivatives = np.array([rhs(t, y) for t, y in zip(solution.t, states)])
    return solution.t, states, derivatives


def _mismatch(problem, states):
    return unpack(states[-1], problem.dimension)[0] - problem.q1


def solve_bvp(problem):
    """Shoot from ``q0`` and adjust the initial velocity by damped Newton until ``q(t1) = q1``.

    :rtype: Trajectory
    """
    d = problem.dimension
    tolerance = Config.NEWTON_TOL * (1.0 + np.linalg.norm(problem.q1))
    v0 = np.array(problem.v0_guess, dtype=float)

    times, states, derivatives = integrate(problem, v0)
    mismatch = _mismatch(problem, states)
    for iteration in range(Config.NEWTON_MAX_ITER + 1):
        error = np.linalg.norm(mismatch)
        if error <= tolerance:
            trajectory = Trajectory(problem, times, states, derivatives, iteration)
            if trajectory.el_residual > Config.EL_RESIDUAL_TOL:
                raise InternalInconsistencyError(
                    f"Euler-Lagrange residual {trajectory.el_residual:.3e} above tolerance", module="classical")
            generalLogger.debug(f"Shooting converged in {iteration} iterations, |q(t1) - q1| = {error:.3e}")
            return trajectory
        if iteration == Config.NEWTON_MAX_ITER:
            break

        sensitivity = unpack(states[-1], d)[2][:d, d:]
        if abs(np.linalg.det(sensitivity)) <= Config.FOCAL_TOL * problem.duration ** d:
            raise FocalTrajectoryError(
                "flow Jacobian dq(t1)/dv0 is singular; the endpoints are conjugate along this path",
                module="classical")
        step = np.linalg.solve(sensitivity, mismatch)

        damping = 1.0
        while damping > 1e-4:
            candidate = v0 - damping * step
            try:
                trial = integrate(problem, candidate)
            except (JetDomainError, SingularMatrixError, ConvergenceError, np.linalg.LinAlgError):
                damping /= 2
                continue
            trial_mismatch = _mismatch(problem, trial[1])
            if np.linalg.norm(trial_mismatch) < error:
                v0 = candidate
                times, states, derivatives = trial
                mismatch = trial_mismatch
                break
            damping /= 2
        else:
            raise ConvergenceError(f"line search stalled at |q(t1) - q1| = {error:.3e}", module="classical")

    raise ConvergenceError(
        f"shooting did not converge in {Config.NEWTON_MAX_ITER} iterations (|q(t1) - q1| = {error:.3e})",
        module="classical")


def resolve(trajectory, q0=None, q1=None):
    """Re-solve with moved endpoints, warm-started from the current initial velocity.

    :rtype: Trajectory
    """
    problem = trajectory.problem.with_endpoints(q0=q0, q1=q1, v0_guess=trajectory.velocity(trajectory.t0))
    return solve_bvp(problem)

