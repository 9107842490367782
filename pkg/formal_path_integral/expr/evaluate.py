import numpy as np

from formal_path_integral import Config
from formal_path_integral.errors import JetDomainError, SingularMatrixError
from formal_path_integral.expr.jet import Jet, jet_index, power, ELEMENTARY
from formal_path_integral.expr.nodes import (
    Number,
    Variable,
    Parameter,
    Negation,
    BinaryOp,
    Function,
)


def evaluate(node, inputs, dimension):
    """Propagate jets through a syntax tree.

    Args:
        node (Node): tree to evaluate.
        inputs (list of Jet): one jet per slot of (tau, v1..vd, q1..qd), all sharing
            one multi-index table and batch shape.
        dimension (int): d.

    Returns:
        Jet
    """
    template = inputs[0]

    if isinstance(node, Number):
        return Jet.constant(template.index, node.value, template.batch_shape)
    if isinstance(node, Parameter):
        return Jet.constant(template.index, node.value, template.batch_shape)
    if isinstance(node, Variable):
        return inputs[node.slot(dimension)]
    if isinstance(node, Negation):
        return -evaluate(node.operand, inputs, dimension)
    if isinstance(node, Function):
        return ELEMENTARY[node.name](evaluate(node.argument, inputs, dimension))
    if isinstance(node, BinaryOp):
        left = evaluate(node.left, inputs, dimension)
        right = evaluate(node.right, inputs, dimension)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            return left / right
        if node.op == "^":
            return power(left, right)
    raise TypeError(f"Unsupported node {node!r}")


def seed_jets(point, order):
    """Identity jets for every coordinate of ``point`` (last axis = coordinates)."""
    point = np.asarray(point, dtype=float)
    index = jet_index(point.shape[-1], order)
    return [Jet.variable(index, k, point[..., k]) for k in range(point.shape[-1])]


def jet_eval(expr, point, order):
    """Taylor jet of ``expr`` at ``point`` = (tau, v1..vd, q1..qd), truncated at ``order``.

    ``point`` may carry leading batch axes; the jet then holds one expansion per point.

    :rtype: Jet
    """
    if order < 0:
        raise ValueError("Invalid value for `order`, must be a value greater than or equal to `0`")
    point = np.asarray(point, dtype=float)
    if point.shape[-1] != 2 * expr.dimension + 1:
        raise ValueError(
            f"Invalid value for `point`, expected {2 * expr.dimension + 1} coordinates, got {point.shape[-1]}")
    if not np.all(np.isfinite(point)):
        raise JetDomainError("expansion point is not finite")

    with np.errstate(all="ignore"):
        jet = evaluate(expr.root, seed_jets(point, order), expr.dimension)
    if not np.all(np.isfinite(jet.coefficients)):
        raise JetDomainError(f"non-finite jet coefficients for `{expr.to_source()}`")
    return jet


def evaluate_point(expr, point):
    """Plain value of ``expr`` at ``point``."""
    return jet_eval(expr, point, 0).value


def velocity_slots(dimension):
    return tuple(range(1, dimension + 1))


def position_slots(dimension):
    return tuple(range(dimension + 1, 2 * dimension + 1))


def phase_slots(dimension):
    """Slots of (v1..vd, q1..qd), the legs of a vertex."""
    return tuple(range(1, 2 * dimension + 1))


def velocity_hessian(jet, dimension=None, tolerance=None):
    """Velocity Hessian ``a_ij = d^2 L / dv_i dv_j`` and its inverse.

    Args:
        jet (Jet): jet of L over (tau, v, q), order >= 2, possibly batched.
        dimension (int): d; inferred from the jet when omitted.
        tolerance (float): |det a| below which the point is declared non-regular.

    Returns:
        tuple: ``(a, a_inverse, positive_definite)``; batch axes lead.
    """
    if jet.order < 2:
        raise JetDomainError("velocity_hessian needs a jet of order at least 2")
    if dimension is None:
        dimension = (jet.index.n_vars - 1) // 2
    if tolerance is None:
        tolerance = Config.SINGULAR_TOL

    a = jet.tensor(2, velocity_slots(dimension))
    determinant = np.linalg.det(a)
    if np.any(np.abs(determinant) <= tolerance):
        raise SingularMatrixError(
            f"velocity Hessian is singular (|det a| = {np.min(np.abs(determinant)):.3e})")
    a_inverse = np.linalg.inv(a)
    positive_definite = bool(np.all(np.linalg.eigvalsh(a) > 0))
    return a, a_inverse, positive_definite
