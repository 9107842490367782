"""Diagrammatic derivatives of the classical data with respect to the endpoints.

Boundary coordinates are ``x = (q0, q1)``; a leaf attached at time ``tau`` carries the
Jacobi legs of both endpoints.
"""
from dataclasses import dataclass

import numpy as np

from formal_path_integral import generalLogger
from formal_path_integral.amplitude.delta_poly import DeltaPoly
from formal_path_integral.amplitude.evaluator import FeynmanGraph, PathKernels, evaluate_splits, required_jet_order
from formal_path_integral.amplitude.quadrature import QuadratureConfig
from formal_path_integral.classical import resolve, van_vleck
from formal_path_integral.errors import PreconditionError
from formal_path_integral.graphs import trees
from formal_path_integral.stphase import SymTensor
from formal_path_integral.utils.finite_differences import richardson_gradient

MAX_TREE_LEAVES = 6
TADPOLE = FeynmanGraph(1, ((0, 0),), (0,))


def s_derivative_trees(trajectory, green, n, quad=None):
    """``d^n(-S)/dx^n`` as the sum over trees with ``n`` ordered leaves.

    Rank 2 is the van Vleck block of ``s_hessian`` and is not produced here.

    :rtype: SymTensor
    """
    if not 3 <= n <= MAX_TREE_LEAVES:
        raise PreconditionError(f"tree derivatives cover ranks 3..{MAX_TREE_LEAVES}, got {n}; "
                                "use s_hessian for rank 2", module="amplitude")
    quad = quad or QuadratureConfig()
    graphs = [FeynmanGraph.from_tree(tree) for tree in trees(n)]
    kernels = PathKernels(trajectory, green, required_jet_order(graphs, quad))
    total = DeltaPoly([np.zeros((2 * trajectory.dimension,) * n)])
    for graph in graphs:
        total = total + evaluate_splits(graph, kernels, quad).value
    generalLogger.debug(f"Summed {len(graphs)} trees for rank-{n} derivatives of -S")
    return SymTensor(total.finite)


@dataclass
class TadpoleCheck:
    """Finite-difference ``d log|det W| / dx`` against the one-loop tadpole.

    Attributes:
        finite_difference (numpy.ndarray): Richardson-extrapolated derivative.
        tadpole (numpy.ndarray): finite part of the tadpole with one Jacobi leaf.
        residual (numpy.ndarray): ``|finite_difference - tadpole|`` per coordinate, or None
            when the tadpole diverges.
        divergent (dict): D0 degree to coefficient vector of the tadpole, empty if convergent.
    """

    finite_difference: np.ndarray
    tadpole: np.ndarray
    residual: np.ndarray
    divergent: dict

    @property
    def is_divergent(self):
        return bool(self.divergent)


def _log_abs_det(trajectory):
    d = trajectory.dimension

    def function(x):
        moved = resolve(trajectory, q0=x[:d], q1=x[d:])
        return np.log(van_vleck(moved)[1])

    return function


def tadpole_logdet_check(trajectory, green, quad=None, steps=None, tolerance=1e-10):
    """Compare both sides of ``d log|det W| / dx_a = tadpole_a``.

    :rtype: TadpoleCheck
    """
    quad = quad or QuadratureConfig()
    kernels = PathKernels(trajectory, green, required_jet_order([TADPOLE], quad))
    value = evaluate_splits(TADPOLE, kernels, quad).value

    x = np.concatenate([trajectory.problem.q0, trajectory.problem.q1])
    finite_difference, _ = richardson_gradient(_log_abs_det(trajectory), x, steps)
    divergent = {k: np.asarray(c) for k, c in value.divergent_part().items()
                 if np.max(np.abs(c)) > tolerance * max(1.0, float(np.max(np.abs(value.finite))))}
    residual = None if divergent else np.abs(finite_difference - value.finite)
    if divergent:
        generalLogger.warning(f"Tadpole diverges with D0 degrees {sorted(divergent)}; no residual reported")
    return TadpoleCheck(finite_difference, np.asarray(value.finite), residual, divergent)
