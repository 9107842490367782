"""Euler-Lagrange dynamics and its linearisation, from Taylor jets of L.

Slots of the jet are ordered (tau, v1..vd, q1..qd). The equation of motion
``d/dtau L_v = L_q`` is solved for the acceleration as ``a acc = L_q - L_vq v - L_vtau``
with ``a = L_vv``.
"""
import numpy as np

from formal_path_integral import Config
from formal_path_integral.errors import NotPositiveDefiniteError, SingularMatrixError


class LagrangianPartials:
    """Partial derivatives of L up to third order at one point or a batch of points.

    Batch axes lead; the trailing axes index slots (tau, v, q).
    """

    def __init__(self, lagrangian, tau, v, q, order=3):
        d = lagrangian.dimension
        self.dimension = d
        slots = tuple(range(2 * d + 1))
        jet = lagrangian.jet(tau, v, q, order)
        self.value = jet.value
        self.gradient = jet.tensor(1, slots)
        self.hessian = jet.tensor(2, slots) if order >= 2 else None
        self.third = jet.tensor(3, slots) if order >= 3 else None
        self.v = np.asarray(v, dtype=float)
        self.q = np.asarray(q, dtype=float)
        self.v_slots = slice(1, d + 1)
        self.q_slots = slice(d + 1, 2 * d + 1)

    # ---------------------- first and second order ---------------------- #

    @property
    def momentum(self):
        return self.gradient[..., self.v_slots]

    @property
    def force(self):
        return self.gradient[..., self.q_slots]

    @property
    def a(self):
        return self.hessian[..., self.v_slots, self.v_slots]

    @property
    def l_vq(self):
        """``[i, j] = d^2 L / dv_i dq_j``."""
        return self.hessian[..., self.v_slots, self.q_slots]

    @property
    def l_qv(self):
        """``[i, j] = d^2 L / dq_i dv_j``."""
        return self.hessian[..., self.q_slots, self.v_slots]

    @property
    def l_qq(self):
        return self.hessian[..., self.q_slots, self.q_slots]

    @property
    def l_vt(self):
        return self.hessian[..., self.v_slots, 0]

    def check_regular(self):
        a = self.a
        eigenvalues = np.linalg.eigvalsh(a)
        smallest = np.min(np.abs(eigenvalues))
        if smallest <= Config.SINGULAR_TOL:
            raise SingularMatrixError(f"velocity Hessian is singular (|lambda| = {smallest:.3e})",
                                      module="classical")
        if np.any(eigenvalues <= 0):
            raise NotPositiveDefiniteError(
                "velocity Hessian d^2L/dv^2 is not positive-definite along the path", module="classical")

    # ---------------------- equation of motion ---------------------- #

    def rhs(self):
        return self.force - np.einsum("...ij,...j->...i", self.l_vq, self.v) - self.l_vt

    def acceleration(self):
        return np.linalg.solve(self.a, self.rhs()[..., None])[..., 0]

    def acceleration_jacobian(self, acceleration=None):
        """``(d acc / dq, d acc / dv)``, each with ``[i, k] = d acc_i / d x_k``."""
        if acceleration is None:
            acceleration = self.acceleration()
        t3 = self.third
        vs, qs = self.v_slots, self.q_slots
        v = self.v

        d_rhs_dq = (self.l_qq
                    - np.einsum("...ijk,...j->...ik", t3[..., vs, qs, qs], v)
                    - t3[..., vs, 0, qs])
        d_rhs_dv = (self.l_qv
                    - np.einsum("...ijk,...j->...ik", t3[..., vs, qs, vs], v)
                    - self.l_vq
                    - t3[..., vs, 0, vs])
        d_a_dq = np.einsum("...ijk,...j->...ik", t3[..., vs, vs, qs], acceleration)
        d_a_dv = np.einsum("...ijk,...j->...ik", t3[..., vs, vs, vs], acceleration)

        a = self.a
        return np.linalg.solve(a, d_rhs_dq - d_a_dq), np.linalg.solve(a, d_rhs_dv - d_a_dv)

    def el_residual(self, acceleration):
        """Scaled ``|a acc - rhs|`` for a given acceleration."""
        rhs = self.rhs()
        residual = np.einsum("...ij,...j->...i", self.a, acceleration) - rhs
        return np.linalg.norm(residual, axis=-1) / (1.0 + np.linalg.norm(rhs, axis=-1))

    # ---------------------- Jacobi operator coefficients ---------------------- #

    def time_derivatives(self, acceleration):
        """``(d/dtau a, d/dtau L_qv)`` along a path with the given acceleration."""
        t3 = self.third
        vs, qs = self.v_slots, self.q_slots
        v = self.v

        def along(block):
            return (block[..., 0]
                    + np.einsum("...ijk,...k->...ij", block[..., vs], acceleration)
                    + np.einsum("...ijk,...k->...ij", block[..., qs], v))

        return along(t3[..., vs, vs, :]), along(t3[..., qs, vs, :])


def unpack(state, dimension):
    """Split a flat ODE state into ``(q, v, flow)``; ``flow`` is the 2d x 2d Jacobian."""
    d = dimension
    q = state[..., :d]
    v = state[..., d:2 * d]
    flow = state[..., 2 * d:].reshape(state.shape[:-1] + (2 * d, 2 * d))
    return q, v, flow


def pack(q, v, flow):
    return np.concatenate([q, v, flow.reshape(flow.shape[:-2] + (-1,))], axis=-1)


def flow_rhs(lagrangian):
    """Right-hand side for (q, v) together with the variational flow ``Phi' = J Phi``."""
    d = lagrangian.dimension
    identity = np.eye(d)
    zeros = np.zeros((d, d))

    def rhs(tau, state):
        q, v, flow = unpack(state, d)
        partials = LagrangianPartials(lagrangian, tau, v, q, 3)
        acceleration = partials.acceleration()
        d_acc_dq, d_acc_dv = partials.acceleration_jacobian(acceleration)
        generator = np.block([[zeros, identity], [d_acc_dq, d_acc_dv]])
        return pack(v, acceleration, generator @ flow)

    return rhs
