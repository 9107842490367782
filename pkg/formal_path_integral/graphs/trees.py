from dataclasses import dataclass


@dataclass(frozen=True)
class LabelledTree:
    """Tree with ``leaf_count`` labelled leaves and unlabelled internal vertices of degree >= 3.

    Attributes:
        leaf_count (int): number of leaves n.
        internal_count (int): number of internal vertices.
        internal_edges (tuple): pairs of internal vertex ids.
        attachments (tuple): internal vertex id each leaf hangs from, indexed by leaf.
    """

    leaf_count: int
    internal_count: int
    internal_edges: tuple
    attachments: tuple

    def degree(self, vertex):
        return (sum(vertex in edge for edge in self.internal_edges)
                + sum(1 for attached in self.attachments if attached == vertex))

    def legs(self, vertex):
        """Leaves and internal edges meeting ``vertex``, as ('leaf', i) / ('edge', k)."""
        legs = [("leaf", leaf) for leaf, attached in enumerate(self.attachments) if attached == vertex]
        legs += [("edge", k) for k, edge in enumerate(self.internal_edges) if vertex in edge]
        return legs


def _grow(edges, internal_count, leaf):
    """Every way to attach leaf ``leaf`` to a tree given by ``edges`` over ('L', i)/('I', j) nodes."""
    for k, (x, y) in enumerate(edges):
        node = ("I", internal_count)
        rest = edges[:k] + edges[k + 1:]
        yield rest + [(x, node), (node, y), (node, ("L", leaf))], internal_count + 1
    for j in range(internal_count):
        yield edges + [(("I", j), ("L", leaf))], internal_count


def trees(n):
    """All trees with ``n`` labelled leaves whose internal vertices have degree >= 3.

    Built by inserting leaf ``k`` either on an existing edge or at an existing internal
    vertex of a tree on leaves ``0..k-1``; each tree is produced exactly once.

    :rtype: list of LabelledTree
    """
    if n < 3:
        raise ValueError("Invalid value for `n`, must be a value greater than or equal to `3`")
    stage = [([(("L", 0), ("L", 1))], 0)]
    for leaf in range(2, n):
        stage = [grown for edges, internal in stage for grown in _grow(edges, internal, leaf)]

    result = []
    for edges, internal_count in stage:
        internal_edges = []
        attachments = [None] * n
        for x, y in edges:
            if x[0] == "L":
                x, y = y, x
            if y[0] == "L":
                attachments[y[1]] = x[1]
            else:
                internal_edges.append(tuple(sorted((x[1], y[1]))))
        result.append(LabelledTree(n, internal_count, tuple(sorted(internal_edges)), tuple(attachments)))
    return result
