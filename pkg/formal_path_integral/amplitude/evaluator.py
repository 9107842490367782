"""Feynman-rule evaluation of diagrams along a classical path.

Every vertex carries a time and the tensor ``-d^n L / d(v, q)^n`` at ``(tau, gamma', gamma)``;
every edge carries the extended kernel ``[[dd G, ds G], [dt G, G]]`` between the legs at
its two ends, and an optional leaf carries the Jacobi legs ``[[dphi0, dphi1], [phi0, phi1]]``.
The velocity-velocity block of an edge also holds ``delta(s - t) a^-1``. Expanding each edge
into its smooth and delta parts, the delta parts merge time variables; a delta part whose
ends are already merged contributes one power of ``D0 = delta(0)``.
"""
from dataclasses import dataclass
from math import prod

import numpy as np

from formal_path_integral import generalLogger
from formal_path_integral.amplitude.delta_poly import DeltaPoly
from formal_path_integral.amplitude.quadrature import QuadratureConfig, chambers, hermite_rule
from formal_path_integral.errors import ConvergenceError, PreconditionError
from formal_path_integral.expr.evaluate import phase_slots

BATCH = 0


@dataclass(frozen=True)
class FeynmanGraph:
    """Vertices ``0..vertex_count-1``, internal edges, and one vertex per external leaf."""

    vertex_count: int
    edges: tuple
    leaves: tuple = ()

    @classmethod
    def from_diagram(cls, diagram):
        if diagram.is_marked:
            raise PreconditionError("marked diagrams have no path-integral Feynman rule", module="amplitude")
        return cls(diagram.vertex_count, tuple(diagram.edges))

    @classmethod
    def from_tree(cls, tree):
        return cls(tree.internal_count, tuple(tree.internal_edges), tuple(tree.attachments))

    def degree(self, vertex):
        return (sum((a == vertex) + (b == vertex) for a, b in self.edges)
                + sum(1 for v in self.leaves if v == vertex))

    @property
    def max_degree(self):
        return max(self.degree(v) for v in range(self.vertex_count))


class _Layout:
    """Einsum labels: 0 is the quadrature batch, then one label per half-edge and leaf."""

    def __init__(self, graph):
        counter = iter(range(1, 53))
        self.vertex_legs = [[] for _ in range(graph.vertex_count)]
        self.edge_labels = []
        for a, b in graph.edges:
            left, right = next(counter), next(counter)
            self.vertex_legs[a].append(left)
            self.vertex_legs[b].append(right)
            self.edge_labels.append((left, right))
        self.leaf_labels = []
        for vertex in graph.leaves:
            leg, out = next(counter), next(counter)
            self.vertex_legs[vertex].append(leg)
            self.leaf_labels.append((vertex, leg, out))
        self.output = [out for _, _, out in self.leaf_labels]


class PathKernels:
    """Vertex, edge, delta and leaf factors sampled along one trajectory."""

    def __init__(self, trajectory, green, jet_order):
        self.trajectory = trajectory
        self.green = green
        self.dimension = trajectory.dimension
        self.jet_order = jet_order
        self.slots = phase_slots(self.dimension)

    def vertex_tensors(self, times, ranks):
        """``{n: -d^n L / d(v, q)^n}`` at each time, batch axis first."""
        q, v, _ = self.trajectory.state(times)
        jet = self.trajectory.problem.lagrangian.jet(times, v, q, self.jet_order)
        return {n: -jet.tensor(n, self.slots) for n in ranks}

    def edge(self, sigma, tau):
        return self.green.extended(sigma, tau)

    def delta(self, tau):
        d = self.dimension
        block = np.zeros(np.shape(tau) + (2 * d, 2 * d))
        block[..., :d, :d] = self.green.delta_coefficient(tau)
        return block

    def leaf(self, tau):
        phi0, phi1, dphi0, dphi1 = self.green.fields(tau)
        return np.concatenate([np.concatenate([dphi0, dphi1], axis=-1),
                               np.concatenate([phi0, phi1], axis=-1)], axis=-2)


# ---------------------- delta bookkeeping ---------------------- #

def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def split_delta_edges(vertex_count, edges, delta_edges):
    """Merge the ends of the delta edges.

    Returns:
        tuple: ``(classes, tree_edges, cycle_edges)``; ``classes[v]`` numbers the merged
        time variables from 0, ``cycle_edges`` are the delta edges that each contribute D0.
    """
    parent = list(range(vertex_count))
    tree_edges, cycle_edges = [], []
    for e in delta_edges:
        a, b = edges[e]
        root_a, root_b = _find(parent, a), _find(parent, b)
        if root_a == root_b:
            cycle_edges.append(e)
        else:
            parent[max(root_a, root_b)] = min(root_a, root_b)
            tree_edges.append(e)
    roots = sorted({_find(parent, v) for v in range(vertex_count)})
    numbering = {root: k for k, root in enumerate(roots)}
    classes = [numbering[_find(parent, v)] for v in range(vertex_count)]
    return classes, tree_edges, cycle_edges


# ---------------------- contraction ---------------------- #

def _contract(graph, layout, kernels, keys, times, weights, delta_edges, delta_weights=None):
    """Weighted quadrature sum of the contraction for one smooth/delta split.

    ``keys[v]`` selects the time array ``times[keys[v]]`` of vertex ``v``; factors are
    computed once per key (or pair of keys).
    """
    leaf_dims = (2 * kernels.dimension,) * len(graph.leaves)
    ranks = {}
    for v in range(graph.vertex_count):
        ranks.setdefault(keys[v], set()).add(graph.degree(v))
    tensors = {key: kernels.vertex_tensors(times[key], sorted(needed)) for key, needed in ranks.items()}

    operands = []
    for v in range(graph.vertex_count):
        tensor = tensors[keys[v]][graph.degree(v)]
        if not np.any(tensor):
            return np.zeros(leaf_dims) if leaf_dims else 0.0
        operands += [tensor, [BATCH] + layout.vertex_legs[v]]

    smooth_cache, delta_cache = {}, {}
    for e, (a, b) in enumerate(graph.edges):
        left, right = layout.edge_labels[e]
        if e in delta_edges:
            if keys[b] not in delta_cache:
                delta_cache[keys[b]] = kernels.delta(times[keys[b]])
            block = delta_cache[keys[b]]
            if delta_weights is not None and e in delta_weights:
                block = block * delta_weights[e][:, None, None]
        else:
            pair = (keys[a], keys[b])
            if pair not in smooth_cache:
                smooth_cache[pair] = kernels.edge(times[keys[a]], times[keys[b]])
            block = smooth_cache[pair]
        operands += [block, [BATCH, left, right]]

    for vertex, leg, out in layout.leaf_labels:
        operands += [kernels.leaf(times[keys[vertex]]), [BATCH, leg, out]]
    operands += [weights, [BATCH]]
    result = np.einsum(*operands, layout.output, optimize="greedy")
    return float(result) if not leaf_dims else result


def _merged_term(graph, layout, kernels, quad, delta_edges, classes):
    """Integral over the merged time variables, chamber by chamber."""
    k = max(classes) + 1
    order = quad.order_for(k)
    total, nodes = 0.0, 0
    t0, t1 = kernels.trajectory.t0, kernels.trajectory.t1
    for _, chamber_times, weights in chambers(t0, t1, k, order):
        times = {c: chamber_times[:, c] for c in range(k)}
        total = total + _contract(graph, layout, kernels, classes, times, weights, set(delta_edges))
        nodes += weights.size
    return total, nodes


def _regularised_term(graph, layout, kernels, quad, delta_edges, classes, tree_edges, cycle_edges):
    """Same split with every delta part replaced by a Gaussian of width ``quad.delta_width``.

    Tree edges are integrated by Gauss-Hermite in the offset ``tau_child - tau_parent``;
    cycle edges evaluate the Gaussian density at the difference of their end times.
    """
    width = quad.delta_width
    k = max(classes) + 1
    order = quad.order_for(k)
    t0, t1 = kernels.trajectory.t0, kernels.trajectory.t1
    z_nodes, z_weights = hermite_rule(quad.hermite_order)
    m = len(tree_edges)

    # parent links inside each merged class, from its smallest vertex
    roots = {}
    for v in range(graph.vertex_count):
        roots.setdefault(classes[v], v)
    slot_of_edge = {e: i for i, e in enumerate(tree_edges)}
    offsets = {}
    reached = set(roots.values())
    while len(reached) < graph.vertex_count:
        for e in tree_edges:
            a, b = graph.edges[e]
            if a in reached and b not in reached:
                offsets[b] = (a, slot_of_edge[e])
                reached.add(b)
            elif b in reached and a not in reached:
                offsets[a] = (b, slot_of_edge[e])
                reached.add(a)

    if m:
        grids = np.meshgrid(*([z_nodes] * m), indexing="ij")
        z = np.stack([g.ravel() for g in grids], axis=-1)
        z_weight = prod(g.ravel() for g in np.meshgrid(*([z_weights] * m), indexing="ij"))
    else:
        z = np.zeros((1, 0))
        z_weight = np.ones(1)

    total, nodes = 0.0, 0
    for _, chamber_times, weights in chambers(t0, t1, k, order):
        base = np.repeat(chamber_times, z.shape[0], axis=0)
        zz = np.tile(z, (chamber_times.shape[0], 1))
        w = np.repeat(weights, z.shape[0]) * np.tile(z_weight, chamber_times.shape[0])

        vertex_times = {}

        def time_of(v):
            if v not in vertex_times:
                if v in offsets:
                    parent, slot = offsets[v]
                    vertex_times[v] = time_of(parent) + width * zz[:, slot]
                else:
                    vertex_times[v] = base[:, classes[v]]
            return vertex_times[v]

        raw = {v: time_of(v) for v in range(graph.vertex_count)}
        inside = np.ones(w.shape, dtype=bool)
        for v in raw:
            inside &= (raw[v] >= t0) & (raw[v] <= t1)
        w = np.where(inside, w, 0.0)
        times = {v: np.clip(raw[v], t0, t1) for v in raw}

        densities = {}
        for e in cycle_edges:
            a, b = graph.edges[e]
            gap = (raw[a] - raw[b]) / width
            densities[e] = np.exp(-gap ** 2 / 2) / (width * np.sqrt(2 * np.pi))
        keys = list(range(graph.vertex_count))
        total = total + _contract(graph, layout, kernels, keys, times, w, set(delta_edges), densities)
        nodes += w.size
    return total, nodes


# ---------------------- public evaluation ---------------------- #

@dataclass
class Evaluation:
    """Value of one graph with its quadrature diagnostics."""

    value: DeltaPoly
    nodes: int
    splits: int


def required_jet_order(graphs, quad):
    needed = max((graph.max_degree for graph in graphs), default=0)
    order = quad.jet_order if quad.jet_order is not None else needed
    if order < needed:
        raise PreconditionError(f"jet order {order} is insufficient for vertices of valence {needed}",
                                module="amplitude")
    return order


def evaluate_graph(graph, trajectory, green, quad=None):
    """Sum over every smooth/delta split of the edges.

    :rtype: Evaluation
    """
    quad = quad or QuadratureConfig()
    kernels = PathKernels(trajectory, green, required_jet_order([graph], quad))
    evaluation = evaluate_splits(graph, kernels, quad)
    if quad.tolerance is not None:
        refined = evaluate_splits(graph, kernels, quad.refined()).value
        coarse = evaluation.value
        size = max(len(coarse.coefficients), len(refined.coefficients))
        scale = max(max(float(np.max(np.abs(c))) for c in refined.coefficients), np.finfo(float).tiny)
        change = max(float(np.max(np.abs(refined.coefficient(j) - coarse.coefficient(j)))) for j in range(size))
        if change > quad.tolerance * scale:
            raise ConvergenceError(f"quadrature changed by {change / scale:.3e} under refinement",
                                   module="amplitude")
    return evaluation


def evaluate_splits(graph, kernels, quad):
    layout = _Layout(graph)
    edge_count = len(graph.edges)
    result = DeltaPoly([np.zeros((2 * kernels.dimension,) * len(graph.leaves))] if graph.leaves else [0.0])
    nodes = 0
    for mask in range(2 ** edge_count):
        delta_edges = [e for e in range(edge_count) if mask >> e & 1]
        classes, tree_edges, cycle_edges = split_delta_edges(graph.vertex_count, graph.edges, delta_edges)
        if quad.delta_width is None:
            value, used = _merged_term(graph, layout, kernels, quad, delta_edges, classes)
            result = result + DeltaPoly.monomial(value, len(cycle_edges))
        else:
            value, used = _regularised_term(graph, layout, kernels, quad, delta_edges, classes,
                                            tree_edges, cycle_edges)
            result = result + DeltaPoly.monomial(value, 0)
        nodes += used
    return Evaluation(result, nodes, 2 ** edge_count)


def evaluate_diagram(diagram, trajectory, green, quad=None):
    """Value of an unmarked diagram as a polynomial in ``D0``; no ``1/|Aut|`` and no powers of hbar.

    :rtype: DeltaPoly
    """
    graph = FeynmanGraph.from_diagram(diagram)
    if graph.vertex_count and min(graph.degree(v) for v in range(graph.vertex_count)) < 3:
        raise PreconditionError("diagram vertices must have degree at least 3", module="amplitude")
    evaluation = evaluate_graph(graph, trajectory, green, quad)
    generalLogger.debug(f"{diagram.canonical_label}: {evaluation.value} "
                        f"({evaluation.splits} splits, {evaluation.nodes} nodes)")
    return evaluation.value
