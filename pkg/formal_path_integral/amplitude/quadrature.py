"""Quadrature over the time cube of a diagram.

After the delta parts have merged time variables, ``k`` independent times remain. The
cube ``[t0, t1]^k`` is cut into the ``k!`` chambers of a total order; every step
function is constant inside a chamber, so each chamber gets a tensorised Gauss-Legendre
rule pulled back through the order-statistics map

    x_k = t0 + T u_k,   x_j = t0 + (x_{j+1} - t0) u_j,   j < k,

with Jacobian ``T prod_{j<k} (x_{j+1} - t0)``.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

import numpy as np

from formal_path_integral import Config
from formal_path_integral.classical import gauss_legendre


@dataclass
class QuadratureConfig:
    """Quadrature settings of the diagram evaluator.

    Attributes:
        order (int): Gauss-Legendre points per dimension in a chamber.
        high_dim_order (int): points per dimension once a chamber has 3+ times.
        delta_width (float): when set, delta parts become normalised Gaussians of this
            width instead of merging times (regularisation cross-check only).
        hermite_order (int): Gauss-Hermite points per smeared delta.
        jet_order (int): order of the Lagrangian jets; defaults to the largest valence.
        tolerance (float): when set, every integral is repeated with ``order + 8`` points
            and a relative change above this raises ConvergenceError.
    """

    order: int = field(default_factory=lambda: Config.QUAD_ORDER)
    high_dim_order: int = field(default_factory=lambda: Config.QUAD_ORDER_HIGH_DIM)
    delta_width: float = None
    hermite_order: int = 16
    jet_order: int = None
    tolerance: float = None

    def __post_init__(self):
        if self.order < 1 or self.high_dim_order < 1:
            raise ValueError("Invalid value for `order`, must be a value greater than or equal to `1`")
        if self.delta_width is not None and self.delta_width <= 0:
            raise ValueError("Invalid value for `delta_width`, must be a value greater than `0`")

    def order_for(self, dimension):
        return self.order if dimension < 3 else self.high_dim_order

    def refined(self):
        return QuadratureConfig(self.order + 8, self.high_dim_order + 8, self.delta_width,
                                self.hermite_order, self.jet_order, None)


@lru_cache(maxsize=None)
def unit_rule(order):
    """Gauss-Legendre on [0, 1]."""
    nodes, weights = gauss_legendre(order)
    return (nodes + 1) / 2, weights / 2


@lru_cache(maxsize=64)
def ordered_simplex_rule(k, order):
    """Nodes ``x`` (ascending along the last axis) and weights on ``0 < x_1 < ... < x_k < 1``."""
    nodes, weights = unit_rule(order)
    grids = np.meshgrid(*([nodes] * k), indexing="ij")
    u = np.stack([g.ravel() for g in grids], axis=-1)
    w = np.ones(u.shape[0])
    for g in np.meshgrid(*([weights] * k), indexing="ij"):
        w = w * g.ravel()

    x = np.empty_like(u)
    x[:, k - 1] = u[:, k - 1]
    for j in range(k - 2, -1, -1):
        x[:, j] = x[:, j + 1] * u[:, j]
        w = w * x[:, j + 1]
    return x, w


def chambers(t0, t1, k, order):
    """Yield ``(permutation, times, weights)`` for each order chamber of ``[t0, t1]^k``.

    ``times[:, c]`` is the time of variable ``c``; inside the chamber the variables are
    increasing in the order given by ``permutation``.
    """
    duration = t1 - t0
    x, w = ordered_simplex_rule(k, order)
    times_sorted = t0 + duration * x
    weights = w * duration ** k
    for permutation in permutations(range(k)):
        times = np.empty_like(times_sorted)
        times[:, list(permutation)] = times_sorted
        yield permutation, times, weights


def hermite_rule(order):
    """Nodes and weights of the standard normal density."""
    nodes, weights = np.polynomial.hermite_e.hermegauss(order)
    return nodes, weights / np.sqrt(2 * np.pi)
