import re
from collections import Counter
from functools import cached_property
from itertools import permutations, product
from math import factorial

DUMP_REGEX = re.compile(
    r"^V=(?P<v>\d+) marks=(?P<marks>[^ ]*) edges=(?P<edges>[^ ]*) chi=(?P<chi>-?\d+) aut=(?P<aut>\d+)$")


def _relabel(edges, mapping):
    relabelled = []
    for a, b in edges:
        x, y = mapping[a], mapping[b]
        relabelled.append((x, y) if x <= y else (y, x))
    return tuple(sorted(relabelled))


def _degrees(vertex_count, edges):
    degrees = [0] * vertex_count
    for a, b in edges:
        degrees[a] += 1
        degrees[b] += 1
    return degrees


def _vertex_invariants(vertex_count, marks, edges):
    """Isomorphism-invariant key per vertex; marked vertices sort first by mark id.

    Starts from (mark, degree, self-loops) and refines by the multiset of neighbour
    keys and edge multiplicities until the number of classes stops growing.
    """
    degrees = _degrees(vertex_count, edges)
    loops = Counter(a for a, b in edges if a == b)
    multiplicity = Counter(edges)
    neighbours = [[] for _ in range(vertex_count)]
    for (a, b), count in multiplicity.items():
        if a != b:
            neighbours[a].append((b, count))
            neighbours[b].append((a, count))

    keys = [(0 if marks[v] is not None else 1,
             marks[v] if marks[v] is not None else 0,
             -degrees[v],
             -loops[v]) for v in range(vertex_count)]
    ranks = _rank(keys)
    while True:
        refined = [(ranks[v], tuple(sorted((ranks[u], count) for u, count in neighbours[v])))
                   for v in range(vertex_count)]
        new_ranks = _rank(refined)
        if len(set(new_ranks)) == len(set(ranks)):
            return ranks
        ranks = new_ranks


def _rank(keys):
    order = {key: rank for rank, key in enumerate(sorted(set(keys)))}
    return [order[key] for key in keys]


def _class_orderings(keys):
    """Candidate vertex orders: vertices sorted by invariant, permuted within each class."""
    classes = {}
    for vertex, key in enumerate(keys):
        classes.setdefault(key, []).append(vertex)
    blocks = [classes[key] for key in sorted(classes)]
    for choice in product(*(permutations(block) for block in blocks)):
        yield [vertex for block in choice for vertex in block]


class Diagram:
    """Isomorphism class of a finite multigraph with optional marked vertices.

    The stored labelling is canonical: marked vertices come first in mark-id order,
    and the edge list is the lexicographic minimum over all admissible relabellings.

    Args:
        vertex_count (int): number of vertices V.
        edges (iterable): unordered vertex pairs; self-loops and repeats allowed.
        marks (iterable): per-vertex mark id (0 or 1) or None for unmarked vertices.
    """

    def __init__(self, vertex_count, edges, marks=None):
        if marks is None:
            marks = (None,) * vertex_count
        marks = tuple(marks)
        if len(marks) != vertex_count:
            raise ValueError("Invalid value for `marks`, must have one entry per vertex")
        mark_ids = [m for m in marks if m is not None]
        if len(set(mark_ids)) != len(mark_ids):
            raise ValueError("Invalid value for `marks`, mark ids must be distinct")
        edges = tuple(sorted((a, b) if a <= b else (b, a) for a, b in edges))
        for a, b in edges:
            if not (0 <= a < vertex_count and 0 <= b < vertex_count):
                raise ValueError(f"Invalid edge ({a},{b}) for {vertex_count} vertices")

        self.vertex_count = vertex_count
        self.marks, self.edges = self._canonicalize(vertex_count, marks, edges)

    @staticmethod
    def _canonicalize(vertex_count, marks, edges):
        keys = _vertex_invariants(vertex_count, marks, edges)
        best = None
        for order in _class_orderings(keys):
            mapping = {old: new for new, old in enumerate(order)}
            candidate = _relabel(edges, mapping)
            if best is None or candidate < best[1]:
                best = (tuple(marks[old] for old in order), candidate)
        if best is None:
            return (), ()
        return best

    # ---------------------- cached invariants ---------------------- #

    @property
    def edge_count(self):
        return len(self.edges)

    @cached_property
    def degrees(self):
        return tuple(_degrees(self.vertex_count, self.edges))

    @property
    def euler_characteristic(self):
        return self.vertex_count - self.edge_count

    @property
    def loop_order(self):
        return -self.euler_characteristic

    @property
    def marked_vertices(self):
        return tuple(v for v, m in enumerate(self.marks) if m is not None)

    @property
    def is_marked(self):
        return bool(self.marked_vertices)

    def vertex_of_mark(self, mark):
        return self.marks.index(mark)

    @cached_property
    def multiplicities(self):
        return Counter(self.edges)

    @cached_property
    def automorphism_order(self):
        return automorphism_order(self)

    @cached_property
    def canonical_label(self):
        marks = ",".join("-" if m is None else str(m) for m in self.marks)
        edges = ",".join(f"({a},{b})" for a, b in self.edges)
        return f"V{self.vertex_count}[{marks}]{{{edges}}}"

    @property
    def sort_key(self):
        return (self.loop_order, self.vertex_count, self.marks_key, self.edges)

    @property
    def marks_key(self):
        return tuple(-1 if m is None else m for m in self.marks)

    # ---------------------- comparison ---------------------- #

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return (self.vertex_count, self.marks, self.edges) == (other.vertex_count, other.marks, other.edges)

    def __hash__(self):
        return hash((self.vertex_count, self.marks, self.edges))

    def __repr__(self):
        return f"Diagram({dump(self)})"


def automorphism_order(diagram):
    """Order of the symmetry group of ``diagram`` acting on half-edges.

    Vertex permutations preserving the mark partition and all edge multiplicities,
    times ``2^l l!`` for ``l`` self-loops at a vertex and ``m!`` for ``m`` parallel edges.

    :rtype: int
    """
    vertex_count = diagram.vertex_count
    multiplicity = diagram.multiplicities
    keys = _vertex_invariants(vertex_count, diagram.marks, diagram.edges)

    reference = _reference_order(keys)
    vertex_symmetries = 0
    for order in _class_orderings(keys):
        mapping = dict(zip(reference, order))
        if all(multiplicity.get(_pair(mapping[a], mapping[b]), 0) == count
               for (a, b), count in multiplicity.items()):
            vertex_symmetries += 1

    edge_symmetries = 1
    for (a, b), count in multiplicity.items():
        if a == b:
            edge_symmetries *= 2 ** count * factorial(count)
        else:
            edge_symmetries *= factorial(count)
    return vertex_symmetries * edge_symmetries


def _reference_order(keys):
    classes = {}
    for vertex, key in enumerate(keys):
        classes.setdefault(key, []).append(vertex)
    return [vertex for key in sorted(classes) for vertex in classes[key]]


def _pair(a, b):
    return (a, b) if a <= b else (b, a)


def dump(diagram):
    """Text line ``V=<n> marks=<ids> edges=<(a,b),...> chi=<chi> aut=<|Aut|>``."""
    marks = ",".join(f"{v}:{m}" for v, m in enumerate(diagram.marks) if m is not None) or "-"
    edges = ",".join(f"({a},{b})" for a, b in diagram.edges) or "-"
    return (f"V={diagram.vertex_count} marks={marks} edges={edges} "
            f"chi={diagram.euler_characteristic} aut={diagram.automorphism_order}")


def parse_dump(line):
    """Inverse of :func:`dump`.

    :rtype: Diagram
    """
    match = DUMP_REGEX.match(line.strip())
    if match is None:
        raise ValueError(f"Invalid diagram line: {line!r}")
    vertex_count = int(match.group("v"))
    marks = [None] * vertex_count
    if match.group("marks") != "-":
        for item in match.group("marks").split(","):
            vertex, mark = item.split(":")
            marks[int(vertex)] = int(mark)
    edges = []
    if match.group("edges") != "-":
        for a, b in re.findall(r"\((\d+),(\d+)\)", match.group("edges")):
            edges.append((int(a), int(b)))
    return Diagram(vertex_count, edges, marks)
