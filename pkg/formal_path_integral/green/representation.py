"""Green's function of the Jacobi operator along a classical path.

With Jacobi fields ``phi0`` (vanishing at t1) and ``phi1`` (vanishing at t0) and the
van Vleck matrix ``W``,

    G(s, t) = Theta(t - s) phi1(s) W^-1 phi0(t)^T + Theta(s - t) phi0(s) W^-T phi1(t)^T

and ``D_t[G(s, .)^T] = delta(s - t)`` with zero boundary values. The same kernel is
built independently by variation of parameters from the right half of ``M(t)^-1``,
``M = [[phi0, phi1], [dphi0, dphi1]]``.
"""
from dataclasses import dataclass

import numpy as np

from formal_path_integral import Config, generalLogger
from formal_path_integral.classical import van_vleck, jacobi_coefficients
from formal_path_integral.errors import DomainError, FocalTrajectoryError, InternalInconsistencyError

MODES = ("van_vleck", "variation_of_parameters")


@dataclass
class GreenValue:
    """Structured value of a (differentiated) Green's function.

    Attributes:
        smooth (numpy.ndarray): the finite part, ``[..., i, j]``.
        delta_coeff (numpy.ndarray): coefficient of ``delta(s - t)``; None unless both slots
            are differentiated.
    """

    smooth: np.ndarray
    delta_coeff: np.ndarray = None


def _theta_weights(sigma, tau):
    """``(Theta(t - s), Theta(s - t))`` with Theta(0) = 1/2."""
    upper = np.where(tau > sigma, 1.0, np.where(tau == sigma, 0.5, 0.0))
    return upper, 1.0 - upper


class GreenRep:
    """Both constructions of ``G`` along a nonfocal trajectory.

    Args:
        trajectory (Trajectory): nonfocal classical path.
        mode (str): default evaluation mode, ``van_vleck`` or ``variation_of_parameters``.
        check (bool): compare the two constructions on a grid on construction.
    """

    def __init__(self, trajectory, mode="van_vleck", check=True):
        if mode not in MODES:
            raise ValueError(f"Invalid value for `mode` ({mode}), must be one of {MODES}")
        if not trajectory.nonfocal:
            raise FocalTrajectoryError("the Jacobi operator has no Green's function on a focal trajectory",
                                       module="green")
        self.trajectory = trajectory
        self.dimension = trajectory.dimension
        self.mode = mode
        self.t0, self.t1 = trajectory.t0, trajectory.t1

        w, _ = van_vleck(trajectory)
        self.van_vleck = w
        self.w_inverse = np.linalg.inv(w)
        self.agreement = None
        if check:
            self.agreement = self.check_agreement()

    # ---------------------- building blocks ---------------------- #

    def _check(self, *times):
        checked = []
        for t in times:
            t = np.asarray(t, dtype=float)
            slack = 1e-12 * max(1.0, abs(self.t0), abs(self.t1))
            if np.any(t < self.t0 - slack) or np.any(t > self.t1 + slack):
                raise DomainError(f"time outside [{self.t0}, {self.t1}]", module="green")
            checked.append(np.clip(t, self.t0, self.t1))
        return checked

    def fields(self, t):
        """Jacobi fields ``(phi0, phi1, dphi0, dphi1)`` at ``t``."""
        return self.trajectory.jacobi_fields(t)

    def delta_coefficient(self, tau):
        """``a(tau)^-1``, the coefficient of ``delta(s - t)`` in ``d^2 G / ds dt``."""
        (tau,) = self._check(tau)
        a = self.trajectory.partials(tau, 2).a
        return np.linalg.inv(a)

    def psi(self, t):
        """Right half of ``M(t)^-1`` split as ``(psi0, psi1)``."""
        d = self.dimension
        phi0, phi1, dphi0, dphi1 = self.fields(t)
        m = np.concatenate([np.concatenate([phi0, phi1], axis=-1),
                            np.concatenate([dphi0, dphi1], axis=-1)], axis=-2)
        try:
            right = np.linalg.inv(m)[..., :, d:]
        except np.linalg.LinAlgError:
            raise InternalInconsistencyError("fundamental matrix of Jacobi fields is singular", module="green")
        return right[..., :d, :], right[..., d:, :]

    # ---------------------- evaluation ---------------------- #

    def smooth(self, sigma, tau, d_sigma=0, d_tau=0):
        """Finite part of ``d^{d_sigma} d^{d_tau} G`` by the van Vleck closed form."""
        sigma, tau = self._check(sigma, tau)
        sigma, tau = np.broadcast_arrays(sigma, tau)
        phi0_s, phi1_s, dphi0_s, dphi1_s = self.fields(sigma)
        phi0_t, phi1_t, dphi0_t, dphi1_t = self.fields(tau)

        left_upper = dphi1_s if d_sigma else phi1_s
        right_upper = dphi0_t if d_tau else phi0_t
        left_lower = dphi0_s if d_sigma else phi0_s
        right_lower = dphi1_t if d_tau else phi1_t

        upper = left_upper @ self.w_inverse @ np.swapaxes(right_upper, -1, -2)
        lower = left_lower @ self.w_inverse.T @ np.swapaxes(right_lower, -1, -2)
        weight_upper, weight_lower = _theta_weights(sigma, tau)
        return weight_upper[..., None, None] * upper + weight_lower[..., None, None] * lower

    def smooth_variation_of_parameters(self, sigma, tau, d_sigma=0, d_tau=0):
        """Finite part of ``G`` from ``psi``: ``G(s, t) = -a(s)^-1 g(s, t)^T`` with
        ``g = Theta(t - s) phi0(t) psi0(s) - Theta(s - t) phi1(t) psi1(s)``.

        Only one slot may be differentiated; the sigma derivative uses ``G(s, t) = G(t, s)^T``.
        """
        if d_sigma and d_tau:
            raise ValueError("variation of parameters supplies single derivatives only")
        if d_sigma:
            return np.swapaxes(self.smooth_variation_of_parameters(tau, sigma, 0, 1), -1, -2)
        sigma, tau = self._check(sigma, tau)
        sigma, tau = np.broadcast_arrays(sigma, tau)
        psi0, psi1 = self.psi(sigma)
        phi0_t, phi1_t, dphi0_t, dphi1_t = self.fields(tau)
        first = dphi0_t if d_tau else phi0_t
        second = dphi1_t if d_tau else phi1_t
        weight_upper, weight_lower = _theta_weights(sigma, tau)
        g = (weight_upper[..., None, None] * (first @ psi0)
             - weight_lower[..., None, None] * (second @ psi1))
        a_inverse = np.linalg.inv(self.trajectory.partials(sigma, 2).a)
        return -a_inverse @ np.swapaxes(g, -1, -2)

    def eval(self, sigma, tau, d_sigma=0, d_tau=0, mode=None):
        """Structured value of ``d^{d_sigma}_s d^{d_tau}_t G(s, t)``.

        :rtype: GreenValue
        """
        if d_sigma not in (0, 1) or d_tau not in (0, 1):
            raise ValueError("Invalid derivative order, must be 0 or 1 in each slot")
        mode = mode or self.mode
        if mode == "variation_of_parameters" and not (d_sigma and d_tau):
            smooth = self.smooth_variation_of_parameters(sigma, tau, d_sigma, d_tau)
        else:
            smooth = self.smooth(sigma, tau, d_sigma, d_tau)
        delta = self.delta_coefficient(tau) if d_sigma and d_tau else None
        return GreenValue(smooth, delta)

    def extended(self, sigma, tau):
        """The 2d x 2d kernel ``[[dd G, ds G], [dt G, G]]`` over (velocity, position) legs."""
        sigma, tau = self._check(sigma, tau)
        sigma, tau = np.broadcast_arrays(sigma, tau)
        phi0_s, phi1_s, dphi0_s, dphi1_s = self.fields(sigma)
        phi0_t, phi1_t, dphi0_t, dphi1_t = self.fields(tau)
        # rows (dphi(s), phi(s)), columns (dphi(t), phi(t))
        upper_left = np.concatenate([dphi1_s, phi1_s], axis=-2)
        upper_right = np.concatenate([dphi0_t, phi0_t], axis=-2)
        lower_left = np.concatenate([dphi0_s, phi0_s], axis=-2)
        lower_right = np.concatenate([dphi1_t, phi1_t], axis=-2)
        upper = upper_left @ self.w_inverse @ np.swapaxes(upper_right, -1, -2)
        lower = lower_left @ self.w_inverse.T @ np.swapaxes(lower_right, -1, -2)
        weight_upper, weight_lower = _theta_weights(sigma, tau)
        return weight_upper[..., None, None] * upper + weight_lower[..., None, None] * lower

    # ---------------------- checks ---------------------- #

    def check_agreement(self, points=None, tolerance=None):
        """Sup-norm difference between the two constructions on a grid, relative to ``max |G|``."""
        if points is None:
            points = Config.GREEN_CHECK_GRID
        if tolerance is None:
            tolerance = Config.GREEN_AGREEMENT_TOL
        grid = np.linspace(self.t0, self.t1, points)
        sigma, tau = np.meshgrid(grid, grid, indexing="ij")
        closed_form = self.smooth(sigma, tau)
        variation = self.smooth_variation_of_parameters(sigma, tau)
        scale = max(float(np.max(np.abs(closed_form))), np.finfo(float).tiny)
        difference = float(np.max(np.abs(closed_form - variation))) / scale
        generalLogger.debug(f"Green's function constructions agree to {difference:.3e} on a {points}x{points} grid")
        if difference > tolerance:
            raise InternalInconsistencyError(
                f"van Vleck and variation-of-parameters Green's functions differ by {difference:.3e}",
                module="green")
        return difference

    def operator_residual(self, sigma, tau, step=None):
        """``D_t`` applied to ``G(sigma, .)^T`` at ``tau``; second derivatives by central differences."""
        if step is None:
            step = Config.GREEN_FD_STEP
        sigma, tau = float(sigma), float(tau)
        if abs(sigma - tau) <= 2 * step:
            raise DomainError(f"|sigma - tau| = {abs(sigma - tau):.2e} is inside the difference stencil",
                              module="green")
        if tau - step < self.t0 or tau + step > self.t1:
            raise DomainError("difference stencil leaves the time interval", module="green")

        xi = self.smooth(sigma, tau).T
        dxi = self.smooth(sigma, tau, 0, 1).T
        ddxi = (self.smooth(sigma, tau + step, 0, 1) - self.smooth(sigma, tau - step, 0, 1)).T / (2 * step)
        a, l_qv, l_qq, da, dl_qv = jacobi_coefficients(self.trajectory, np.array(tau))
        return -a @ ddxi - (da + l_qv.T - l_qv) @ dxi + (l_qq - dl_qv.T) @ xi


def build(trajectory, mode="van_vleck"):
    """:rtype: GreenRep"""
    return GreenRep(trajectory, mode)
