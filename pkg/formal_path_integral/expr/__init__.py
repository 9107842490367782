from formal_path_integral.expr.nodes import Expression
from formal_path_integral.expr.parser import parse, to_source
from formal_path_integral.expr.jet import Jet, JetIndex, jet_index
from formal_path_integral.expr.evaluate import (
    jet_eval,
    evaluate_point,
    velocity_hessian,
    velocity_slots,
    position_slots,
    phase_slots,
)
from formal_path_integral.expr.lagrangian import (
    Lagrangian,
    ExpressionLagrangian,
    ComposedLagrangian,
    compose,
    stack_point,
)
