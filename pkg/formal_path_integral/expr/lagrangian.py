import numpy as np

from formal_path_integral.errors import JetDomainError, PreconditionError
from formal_path_integral.expr.evaluate import evaluate, seed_jets, jet_eval


def stack_point(tau, v, q):
    """Stack (tau, v, q) into points with the coordinate axis last."""
    tau = np.asarray(tau, dtype=float)
    v = np.asarray(v, dtype=float)
    q = np.asarray(q, dtype=float)
    return np.concatenate([tau[..., None], v, q], axis=-1)


class Lagrangian:
    """A Lagrangian L(tau, v, q) on R^d that can be expanded into jets."""

    dimension = None

    def jet(self, tau, v, q, order):
        raise NotImplementedError

    def value(self, tau, v, q):
        return self.jet(tau, v, q, 0).value

    def describe(self):
        raise NotImplementedError


class ExpressionLagrangian(Lagrangian):
    """Lagrangian given by a parsed expression."""

    def __init__(self, expression):
        self.expression = expression
        self.dimension = expression.dimension

    def jet(self, tau, v, q, order):
        return jet_eval(self.expression, stack_point(tau, v, q), order)

    def describe(self):
        return self.expression.to_source()


class ComposedLagrangian(Lagrangian):
    """The pulled-back Lagrangian ``L~(tau, w, x) = L(tau, Df(x) w, f(x))``.

    Args:
        base (ExpressionLagrangian): Lagrangian in the original coordinates q.
        coordinate_map (list of Expression): components of q = f(x), written in q1..qd
            (read as the new coordinates x).
    """

    def __init__(self, base, coordinate_map):
        if len(coordinate_map) != base.dimension:
            raise PreconditionError(
                f"coordinate map has {len(coordinate_map)} components, dimension is {base.dimension}",
                module="expr")
        for component in coordinate_map:
            if component.dimension != base.dimension:
                raise PreconditionError("coordinate map component parsed in the wrong dimension", module="expr")
            if any(var.kind != "q" for var in component.variables()):
                raise PreconditionError(
                    f"coordinate map `{component.to_source()}` may depend on positions only", module="expr")
        self.base = base
        self.coordinate_map = list(coordinate_map)
        self.dimension = base.dimension

    def map_jets(self, x, order):
        """Jets of the map components at ``x`` over (tau, v, q) slots."""
        d = self.dimension
        x = np.asarray(x, dtype=float)
        point = stack_point(np.zeros(x.shape[:-1]), np.zeros_like(x), x)
        seeds = seed_jets(point, order)
        with np.errstate(all="ignore"):
            jets = [evaluate(component.root, seeds, d) for component in self.coordinate_map]
        for component_jet in jets:
            if not np.all(np.isfinite(component_jet.coefficients)):
                raise JetDomainError("non-finite coordinate map jet")
        return jets

    def map_value(self, x):
        """f(x) and the Jacobian df/dx at ``x`` (batch axes lead)."""
        d = self.dimension
        jets = self.map_jets(x, 1)
        value = np.stack([component.value for component in jets], axis=-1)
        jacobian = np.stack(
            [np.stack([component.partial(_unit(2 * d + 1, d + 1 + j)) for j in range(d)], axis=-1)
             for component in jets], axis=-2)
        return value, jacobian

    def jet(self, tau, w, x, order):
        d = self.dimension
        seeds = seed_jets(stack_point(tau, w, x), order + 1)
        with np.errstate(all="ignore"):
            images = [evaluate(component.root, seeds, d) for component in self.coordinate_map]

        inputs = [seeds[0].truncate(order)]
        velocities = [seeds[1 + j].truncate(order) for j in range(d)]
        for i in range(d):
            velocity = 0.0
            for j in range(d):
                velocity = images[i].derivative(d + 1 + j) * velocities[j] + velocity
            inputs.append(velocity)
        inputs.extend(image.truncate(order) for image in images)

        with np.errstate(all="ignore"):
            result = evaluate(self.base.expression.root, inputs, d)
        if not np.all(np.isfinite(result.coefficients)):
            raise JetDomainError("non-finite jet coefficients for the composed Lagrangian")
        return result

    def describe(self):
        mapping = "; ".join(component.to_source() for component in self.coordinate_map)
        return f"{self.base.describe()} pulled back along q = ({mapping})"


def _unit(n, k):
    alpha = [0] * n
    alpha[k] = 1
    return tuple(alpha)


def compose(lagrangian, coordinate_map):
    """Pull ``lagrangian`` back along the coordinate map q = f(x).

    :rtype: ComposedLagrangian
    """
    if not isinstance(lagrangian, ExpressionLagrangian):
        lagrangian = ExpressionLagrangian(lagrangian)
    return ComposedLagrangian(lagrangian, coordinate_map)
