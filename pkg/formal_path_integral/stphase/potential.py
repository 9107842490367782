import numpy as np

from formal_path_integral.expr import jet_eval, position_slots, stack_point
from formal_path_integral.stphase.symtensor import SymTensor


class Potential:
    """A function on R^N written as an expression in q1..qN (``q`` when N = 1)."""

    def __init__(self, expression):
        self.expression = expression
        self.dimension = expression.dimension

    def _point(self, x):
        x = np.asarray(x, dtype=float)
        return stack_point(np.zeros(x.shape[:-1]), np.zeros_like(x), x)

    def __call__(self, x):
        return jet_eval(self.expression, self._point(x), 0).value

    def derivatives(self, center, order):
        """``[A(c), A'(c), ..., A^(order)(c)]`` as SymTensors."""
        jet = jet_eval(self.expression, self._point(center), order)
        slots = position_slots(self.dimension)
        return [SymTensor(jet.value)] + [SymTensor(jet.tensor(rank, slots)) for rank in range(1, order + 1)]
