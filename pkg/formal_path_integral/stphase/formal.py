"""Formal stationary-phase integrals as sums over diagrams.

The formal integral of ``(i hbar)^-k B_0 ... B_{k-1} exp(-(i hbar)^-1 A)`` near a
nondegenerate critical point ``c`` is

    (2 pi i hbar)^{N/2} e^{-(i hbar)^-1 A(c)} s(eta) |det A''(c)|^{-1/2}
        * sum_Gamma (i hbar)^{-chi(Gamma)} ev(Gamma) / |Aut Gamma|

where unmarked vertices of degree n carry ``-A^(n)(c)``, mark ``a`` carries ``B_a^(n)(c)``,
edges carry ``A''(c)^-1`` and ``s(eta)`` is the sign factor of the chosen convention.
"""
from dataclasses import dataclass, field

import numpy as np

from formal_path_integral import Config, generalLogger
from formal_path_integral.errors import (
    GradientNotZeroError,
    PreconditionError,
)
from formal_path_integral.graphs import enumerate_diagrams
from formal_path_integral.stphase.symtensor import SymTensor

SIGN_CONVENTIONS = ("minus_i", "minus_one")


def sign_factor(eta, convention=None):
    """``(-i)^eta`` or ``(-1)^eta`` according to ``convention``."""
    if convention is None:
        convention = Config.SIGN_CONVENTION
    if convention == "minus_i":
        return (-1j) ** eta
    if convention == "minus_one":
        return complex((-1) ** eta)
    raise ValueError(f"Invalid value for `convention` ({convention}), must be one of {SIGN_CONVENTIONS}")


def _as_tensors(derivatives):
    return [d if isinstance(d, SymTensor) else SymTensor(d) for d in derivatives]


@dataclass
class Insertion:
    """A marked-vertex insertion ``B = sum_n (i hbar)^(lowest_power + n) B_n``.

    Attributes:
        grades (list): ``grades[n][r]`` is the rank-``r`` derivative tensor of ``B_n`` at the
            critical point; missing ranks are zero.
        lowest_power (int): power of ``(i hbar)`` carried by ``B_0``.
    """

    grades: list
    lowest_power: int = 0

    def __post_init__(self):
        self.grades = [_as_tensors(grade) for grade in self.grades]

    @classmethod
    def single(cls, derivatives):
        return cls([derivatives])

    def tensor(self, grade, rank):
        derivatives = self.grades[grade]
        if rank < len(derivatives):
            return derivatives[rank].array
        return None


@dataclass
class DiagramTerm:
    diagram: object
    power: int
    grades: tuple
    value: float


@dataclass
class AsymptoticExpansion:
    """Structured result of a formal integral.

    The prefactor is kept symbolic: ``(2 pi i hbar)^{dimension/2}``, the phase ``value``
    (``A(c)``), the sign exponent ``eta`` and ``abs_determinant`` (``|det A''(c)|``).
    ``series`` maps the power ``m`` of ``(i hbar)`` to its real coefficient.
    """

    dimension: int
    value: float
    eta: int
    abs_determinant: float
    series: dict
    max_order: int
    sign_convention: str = "minus_i"
    terms: list = field(default_factory=list)

    def coefficient(self, power):
        return self.series.get(power, 0.0)

    def prefactor(self, hbar):
        return ((2 * np.pi * 1j * hbar) ** (self.dimension / 2)
                * np.exp(1j * self.value / hbar)
                * sign_factor(self.eta, self.sign_convention)
                / np.sqrt(self.abs_determinant))

    def series_value(self, hbar, max_order=None):
        if max_order is None:
            max_order = self.max_order
        ih = 1j * hbar
        return sum(c * ih ** m for m, c in self.series.items() if m <= max_order)

    def evaluate(self, hbar, max_order=None):
        """Numeric value of the truncated expansion at ``hbar``."""
        return self.prefactor(hbar) * self.series_value(hbar, max_order)

    def to_dict(self):
        return {
            "dimension": self.dimension,
            "phase": self.value,
            "eta": self.eta,
            "sign_convention": self.sign_convention,
            "abs_det_hessian": self.abs_determinant,
            "series": {str(m): c for m, c in sorted(self.series.items())},
        }


def contract(diagram, vertex_tensor, edge_tensor):
    """Contract vertex tensors along the edges of ``diagram``.

    Args:
        diagram (Diagram): the graph.
        vertex_tensor (callable): ``vertex_tensor(vertex, degree)`` returns an array with
            ``degree`` axes, or None when the vertex rule vanishes.
        edge_tensor (numpy.ndarray): propagator matrix.

    Returns:
        float
    """
    operands = []
    half_edges = [[] for _ in range(diagram.vertex_count)]
    for label, (a, b) in enumerate(diagram.edges):
        left, right = 2 * label, 2 * label + 1
        half_edges[a].append(left)
        half_edges[b].append(right)
        operands += [edge_tensor, [left, right]]
    for vertex, legs in enumerate(half_edges):
        tensor = vertex_tensor(vertex, len(legs))
        if tensor is None:
            return 0.0
        operands += [np.asarray(tensor), legs]
    if not operands:
        return 1.0
    return float(np.einsum(*operands, [], optimize="greedy"))


def check_critical(derivatives, tolerance=None):
    """Raise unless ``||A'(c)|| <= tol * (1 + ||A''(c)||)``."""
    if tolerance is None:
        tolerance = Config.GRADIENT_TOL
    gradient = derivatives[1].norm()
    bound = tolerance * (1.0 + derivatives[2].norm())
    if gradient > bound:
        raise GradientNotZeroError(f"|A'(c)| = {gradient:.3e} exceeds {bound:.3e}; c is not critical",
                                   module="stphase")


def formal_integral(derivatives, insertions=(), eta=None, max_order=None, sign_convention=None):
    """Diagrammatic expansion of a formal integral near a critical point.

    Args:
        derivatives (list): ``derivatives[n]`` is ``A^(n)(c)`` (SymTensor or array), up to the
            rank required by ``max_order`` (``2 * max_order + 2`` without insertions).
        insertions (list of Insertion): up to two marked insertions, mark ids in list order.
        eta (int): number of negative eigenvalues of ``A''(c)``; checked when given.
        max_order (int): keep powers of ``(i hbar)`` up to this one.
        sign_convention (str): ``minus_i`` or ``minus_one``.

    Returns:
        AsymptoticExpansion
    """
    if max_order is None:
        max_order = Config.LOOP_ORDER
    if sign_convention is None:
        sign_convention = Config.SIGN_CONVENTION
    sign_factor(0, sign_convention)
    if len(insertions) > 2:
        raise PreconditionError("at most two marked insertions are supported", module="stphase")

    derivatives = _as_tensors(derivatives)
    if len(derivatives) < 3:
        raise PreconditionError("need A, A' and A'' at the critical point", module="stphase")
    check_critical(derivatives)

    hessian = derivatives[2]
    propagator = hessian.inverse.array
    signature = hessian.signature
    if eta is not None and eta != signature:
        raise PreconditionError(f"eta={eta} disagrees with the Hessian signature {signature}", module="stphase")

    marks = len(insertions)
    lowest = sum(insertion.lowest_power for insertion in insertions)
    # each marked vertex lowers -chi by one; the diagrams needed reach -chi = max_order - lowest
    max_minus_chi = max(max_order - lowest, 0)
    diagrams = enumerate_diagrams(max_minus_chi, marks)

    def unmarked_tensor(degree):
        if degree >= len(derivatives):
            raise PreconditionError(
                f"a degree-{degree} vertex needs A^({degree}), only {len(derivatives) - 1} derivatives given",
                module="stphase")
        return -derivatives[degree].array

    series = {}
    terms = []
    for diagram in diagrams:
        minus_chi = diagram.loop_order
        for grades in _grade_choices(insertions, max_order - minus_chi - lowest):
            power = minus_chi + lowest + sum(grades)

            def vertex_tensor(vertex, degree):
                mark = diagram.marks[vertex]
                if mark is None:
                    return unmarked_tensor(degree)
                return insertions[mark].tensor(grades[mark], degree)

            value = contract(diagram, vertex_tensor, propagator) / diagram.automorphism_order
            if value == 0.0:
                continue
            series[power] = series.get(power, 0.0) + value
            terms.append(DiagramTerm(diagram, power, grades, value))

    if not marks:
        series[0] = series.get(0, 0.0) + 1.0
    generalLogger.debug(f"Formal integral: {len(terms)} nonzero diagram terms up to (i hbar)^{max_order}")

    return AsymptoticExpansion(
        dimension=hessian.dimension,
        value=float(derivatives[0].array),
        eta=signature,
        abs_determinant=abs(hessian.determinant),
        series=series,
        max_order=max_order,
        sign_convention=sign_convention,
        terms=terms,
    )


def required_rank(max_order, marks=0, lowest_power=0):
    """Highest vertex degree among the diagrams a formal integral at ``max_order`` visits."""
    max_minus_chi = max(max_order - lowest_power, 0)
    diagrams = enumerate_diagrams(max_minus_chi, marks)
    return max((max(diagram.degrees, default=0) for diagram in diagrams), default=2)


def _grade_choices(insertions, budget):
    """Tuples of per-insertion grades with total at most ``budget``."""
    if not insertions:
        if budget >= 0:
            yield ()
        return
    head, rest = insertions[0], insertions[1:]
    for grade in range(min(len(head.grades) - 1, budget) + 1):
        for tail in _grade_choices(rest, budget - grade):
            yield (grade,) + tail
