from functools import lru_cache

import numpy as np

from formal_path_integral import Config
from formal_path_integral.errors import FocalTrajectoryError


@lru_cache(maxsize=None)
def gauss_legendre(order):
    return np.polynomial.legendre.leggauss(order)


def panel_nodes(t0, t1, panels=None, order=None):
    """Composite Gauss-Legendre nodes and weights on ``[t0, t1]``."""
    if panels is None:
        panels = Config.ACTION_PANELS
    if order is None:
        order = Config.ACTION_PANEL_ORDER
    nodes, weights = gauss_legendre(order)
    edges = np.linspace(t0, t1, panels + 1)
    half = np.diff(edges) / 2
    middle = (edges[:-1] + edges[1:]) / 2
    times = (middle[:, None] + half[:, None] * nodes[None, :]).ravel()
    return times, (half[:, None] * weights[None, :]).ravel()


def action(trajectory):
    """``S = int L(tau, gamma', gamma) dtau`` by composite Gauss-Legendre on the dense output."""
    times, weights = panel_nodes(trajectory.t0, trajectory.t1)
    q, v, _ = trajectory.state(times)
    values = trajectory.problem.lagrangian.value(times, v, q)
    return float(np.dot(weights, values))


def momenta(trajectory):
    """``(dL/dv at t0, dL/dv at t1)``."""
    ends = np.array([trajectory.t0, trajectory.t1])
    partials = trajectory.partials(ends, 1)
    return partials.momentum[0], partials.momentum[1]


def s_gradients(trajectory):
    """``(dS/dq0, dS/dq1) = (-p(t0), p(t1))``."""
    start, end = momenta(trajectory)
    return -start, end


def nonfocal_check(trajectory):
    return bool(trajectory.nonfocal)


def _endpoint_blocks(trajectory):
    ends = np.array([trajectory.t0, trajectory.t1])
    partials = trajectory.partials(ends, 2)
    _, _, dphi0, dphi1 = trajectory.jacobi_fields(ends)
    return partials.a, partials.l_vq, dphi0, dphi1


def van_vleck(trajectory):
    """``W = d^2(-S)/dq0 dq1`` from the Jacobi fields, and ``|det W|``.

    ``W[l, m] = -(a(t1) dphi0(t1))[m, l]``.
    """
    if not trajectory.nonfocal:
        raise FocalTrajectoryError("van Vleck matrix is undefined on a focal trajectory", module="classical")
    a, _, dphi0, _ = _endpoint_blocks(trajectory)
    w = -(a[1] @ dphi0[1]).T
    return w, float(abs(np.linalg.det(w)))


def s_hessian(trajectory):
    """The 2d x 2d matrix of second derivatives of S in (q0, q1)."""
    if not trajectory.nonfocal:
        raise FocalTrajectoryError("Hessian of S is undefined on a focal trajectory", module="classical")
    a, l_vq, dphi0, dphi1 = _endpoint_blocks(trajectory)
    s00 = -(a[0] @ dphi0[0] + l_vq[0])
    s11 = a[1] @ dphi1[1] + l_vq[1]
    s01 = (a[1] @ dphi0[1]).T
    return np.block([[s00, s01], [s01.T, s11]])


def jacobi_coefficients(trajectory, times):
    """Coefficients of the Jacobi operator along the path.

    Returns:
        tuple: ``(a, l_qv, l_qq, da, dl_qv)`` with batch axes leading; ``l_qv[i, j]`` is
        ``d^2 L / dq_i dv_j`` and ``da``, ``dl_qv`` are derivatives along the path.
    """
    partials = trajectory.partials(times, 3)
    acceleration = partials.acceleration()
    da, dl_qv = partials.time_derivatives(acceleration)
    return partials.a, partials.l_qv, partials.l_qq, da, dl_qv
