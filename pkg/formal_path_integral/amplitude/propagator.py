"""Assembly of the formal path integral near a classical path.

    U = (2 pi i hbar)^{-d/2} e^{i S / hbar} s(eta) |det W|^{1/2} sum_Gamma (i hbar)^{-chi} ev(Gamma) / |Aut Gamma|

with the sum over unmarked diagrams of minimal degree 3, ``W = d^2(-S)/dq0 dq1`` and ``s``
the sign factor. Each ``ev(Gamma)`` is a polynomial in ``D0``.
"""
from dataclasses import dataclass, field

import numpy as np

from formal_path_integral import Config, generalLogger
from formal_path_integral.amplitude.delta_poly import DeltaPoly
from formal_path_integral.amplitude.evaluator import (
    FeynmanGraph,
    PathKernels,
    evaluate_splits,
    required_jet_order,
)
from formal_path_integral.amplitude.quadrature import QuadratureConfig
from formal_path_integral.classical import action, morse_index, van_vleck
from formal_path_integral.errors import DivergentInputError
from formal_path_integral.graphs import enumerate_diagrams
from formal_path_integral.stphase import sign_factor


@dataclass
class DiagramContribution:
    diagram: object
    automorphism_order: int
    value: DeltaPoly
    nodes: int

    @property
    def contribution(self):
        return self.value / self.automorphism_order


@dataclass
class PropagatorResult:
    """Prefactor data and the loop series of ``U`` along one trajectory.

    Attributes:
        series (dict): loop order ``m = -chi`` to DeltaPoly; ``series[0]`` is exactly 1.
        contributions (list): per-diagram values, in enumeration order.
    """

    dimension: int
    t0: float
    t1: float
    q0: np.ndarray
    q1: np.ndarray
    action: float
    van_vleck: np.ndarray
    abs_det_w: float
    morse_index: int
    sign_convention: str
    series: dict
    contributions: list = field(default_factory=list)
    quad_order: int = None
    jet_order: int = None

    @property
    def log_abs_det_w(self):
        return float(np.log(self.abs_det_w))

    @property
    def max_order(self):
        return max(self.series)

    def prefactor(self, hbar):
        """``(2 pi i hbar)^{-d/2} e^{i S / hbar} s(eta) |det W|^{1/2}``."""
        return ((2j * np.pi * hbar) ** (-self.dimension / 2) * np.exp(1j * self.action / hbar)
                * sign_factor(self.morse_index, self.sign_convention) * np.sqrt(self.abs_det_w))

    def value(self, hbar, max_order=None):
        """Truncated ``U`` at ``hbar``; only defined once the ``D0`` content cancels."""
        max_order = self.max_order if max_order is None else max_order
        report = divergence_report(self)
        total = 0j
        for order in range(max_order + 1):
            entry = self.series.get(order, DeltaPoly())
            if order in report and not report[order].divergence_free:
                raise DivergentInputError(f"order {order} has D0 content that does not cancel; U has no numeric value",
                                          module="amplitude")
            total += (1j * hbar) ** order * entry.finite
        return self.prefactor(hbar) * total


def assemble(trajectory, green, max_order=None, quad=None, eta=None, sign_convention=None):
    """Diagram sum of ``U`` through loop order ``max_order``.

    :rtype: PropagatorResult
    """
    max_order = Config.LOOP_ORDER if max_order is None else max_order
    quad = quad or QuadratureConfig()
    sign_convention = sign_convention or Config.SIGN_CONVENTION
    if eta is None:
        eta = morse_index(trajectory)
    w, abs_det_w = van_vleck(trajectory)

    diagrams = [diagram for diagram in enumerate_diagrams(max_order) if diagram.loop_order >= 1]
    graphs = [FeynmanGraph.from_diagram(diagram) for diagram in diagrams]
    jet_order = required_jet_order(graphs, quad)
    kernels = PathKernels(trajectory, green, jet_order)

    series = {order: DeltaPoly() for order in range(max_order + 1)}
    series[0] = DeltaPoly([1.0])
    contributions = []
    for diagram, graph in zip(diagrams, graphs):
        evaluation = evaluate_splits(graph, kernels, quad)
        item = DiagramContribution(diagram, diagram.automorphism_order, evaluation.value, evaluation.nodes)
        contributions.append(item)
        series[diagram.loop_order] = series[diagram.loop_order] + item.contribution
        generalLogger.debug(f"{diagram.canonical_label}: ev = {evaluation.value}, |Aut| = {item.automorphism_order}")
    generalLogger.info(f"Assembled {len(diagrams)} diagrams through loop order {max_order}")

    problem = trajectory.problem
    return PropagatorResult(
        dimension=trajectory.dimension,
        t0=problem.t0,
        t1=problem.t1,
        q0=np.array(problem.q0),
        q1=np.array(problem.q1),
        action=action(trajectory),
        van_vleck=w,
        abs_det_w=abs_det_w,
        morse_index=int(eta),
        sign_convention=sign_convention,
        series=series,
        contributions=contributions,
        quad_order=quad.order,
        jet_order=jet_order,
    )


# ---------------------- reports ---------------------- #

@dataclass
class DivergenceEntry:
    """D0 content of one loop order.

    Attributes:
        coefficients (dict): D0 degree to the summed coefficient.
        scales (dict): D0 degree to the sum of the per-diagram magnitudes.
        divergence_free (bool): every summed coefficient is within tolerance of its scale, or of
            the summed finite magnitudes when the per-diagram coefficients are themselves negligible.
    """

    order: int
    coefficients: dict
    scales: dict
    divergence_free: bool

    def to_dict(self):
        return {
            "order": self.order,
            "coefficients": {str(k): float(v) for k, v in self.coefficients.items()},
            "scales": {str(k): float(v) for k, v in self.scales.items()},
            "divergence_free": self.divergence_free,
        }


def divergence_report(result, tolerance=None):
    """Per loop order, the D0-degree >= 1 coefficients of the series.

    :rtype: dict of int to DivergenceEntry
    """
    tolerance = Config.DIVERGENCE_TOL if tolerance is None else tolerance
    report = {}
    for order in sorted(result.series):
        items = [c.contribution for c in result.contributions if c.diagram.loop_order == order]
        top = max([result.series[order].degree] + [item.degree for item in items])
        coefficients, scales = {}, {}
        for degree in range(1, top + 1):
            coefficients[degree] = float(result.series[order].coefficient(degree))
            scales[degree] = float(sum(abs(item.coefficient(degree)) for item in items))
        # pointwise-vanishing loops leave only rounding noise in the D0 coefficients
        floor = float(sum(np.max(np.abs(item.finite)) for item in items))
        divergence_free = all(abs(coefficients[k]) <= tolerance * max(scales[k], floor) for k in coefficients)
        report[order] = DivergenceEntry(order, coefficients, scales, divergence_free)
    return report


def finite_part(result):
    """``{order: degree-0 coefficient}``."""
    return {order: float(entry.finite) for order, entry in sorted(result.series.items())}
