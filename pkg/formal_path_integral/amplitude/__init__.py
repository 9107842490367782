from formal_path_integral.amplitude.delta_poly import DeltaPoly
from formal_path_integral.amplitude.quadrature import QuadratureConfig, chambers, ordered_simplex_rule
from formal_path_integral.amplitude.evaluator import (
    FeynmanGraph,
    PathKernels,
    evaluate_diagram,
    evaluate_graph,
    split_delta_edges,
)
from formal_path_integral.amplitude.propagator import (
    DiagramContribution,
    DivergenceEntry,
    PropagatorResult,
    assemble,
    divergence_report,
    finite_part,
)
from formal_path_integral.amplitude.derivatives import TadpoleCheck, s_derivative_trees, tadpole_logdet_check
