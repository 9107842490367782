from formal_path_integral import Config, generalLogger
from formal_path_integral.errors import LimitExceededError
from formal_path_integral.graphs.diagram import Diagram

MIN_DEGREE = 3


def _unmarked_profiles(count, total, largest):
    """Nonincreasing degree tuples of ``count`` unmarked vertices, each >= 3, summing to ``total``."""
    if count == 0:
        if total == 0:
            yield ()
        return
    upper = min(largest, total - MIN_DEGREE * (count - 1))
    for degree in range(upper, MIN_DEGREE - 1, -1):
        for rest in _unmarked_profiles(count - 1, total - degree, degree):
            yield (degree,) + rest


def _marked_profiles(count, total):
    """Degree tuples of ``count`` distinguishable marked vertices summing to ``total``."""
    if count == 0:
        if total == 0:
            yield ()
        return
    for degree in range(total + 1):
        for rest in _marked_profiles(count - 1, total - degree):
            yield (degree,) + rest


def realizations(degrees):
    """Every labelled edge multiset with the given degree sequence.

    Self-loops count twice towards the degree of their vertex.
    """
    vertex_count = len(degrees)
    remaining = list(degrees)
    edges = []

    def fill(i, j):
        if i == vertex_count:
            yield tuple(edges)
            return
        if j == vertex_count:
            if remaining[i] == 0:
                yield from fill(i + 1, i + 1)
            return
        if j == i:
            for loops in range(remaining[i] // 2, -1, -1):
                remaining[i] -= 2 * loops
                edges.extend([(i, i)] * loops)
                yield from fill(i, i + 1)
                del edges[len(edges) - loops:]
                remaining[i] += 2 * loops
            return
        for count in range(min(remaining[i], remaining[j]), -1, -1):
            remaining[i] -= count
            remaining[j] -= count
            edges.extend([(i, j)] * count)
            yield from fill(i, j + 1)
            del edges[len(edges) - count:]
            remaining[i] += count
            remaining[j] += count

    yield from fill(0, 0)


def enumerate_diagrams(max_minus_chi, marked_vertices=0, ceiling=None):
    """One representative per isomorphism class of diagram with ``-chi <= max_minus_chi``.

    Unmarked vertices have degree at least three; the ``marked_vertices`` marked vertices
    (mark ids 0, 1) may have any degree, including zero.

    Args:
        max_minus_chi (int): largest ``E - V`` to include.
        marked_vertices (int): 0, 1 or 2.
        ceiling (int): refuse ``max_minus_chi`` above this (``Config.MAX_MINUS_CHI_CEILING``).

    Returns:
        list of Diagram, sorted by (-chi, V, marks, edges).
    """
    if ceiling is None:
        ceiling = Config.MAX_MINUS_CHI_CEILING
    if max_minus_chi < 0:
        raise ValueError("Invalid value for `max_minus_chi`, must be a value greater than or equal to `0`")
    if marked_vertices not in (0, 1, 2):
        raise ValueError("Invalid value for `marked_vertices`, must be one of 0, 1, 2")
    if max_minus_chi > ceiling:
        raise LimitExceededError(
            f"max_minus_chi={max_minus_chi} exceeds the configured ceiling {ceiling}", module="graphs")

    marks = tuple(range(marked_vertices))
    found = {}
    for minus_chi in range(-marked_vertices, max_minus_chi + 1):
        # 2E >= 3U with E = U + k + minus_chi bounds the unmarked vertex count
        for unmarked in range(0, 2 * (marked_vertices + minus_chi) + 1):
            vertex_count = unmarked + marked_vertices
            edge_count = vertex_count + minus_chi
            if vertex_count == 0 or edge_count < 0:
                continue
            half_edges = 2 * edge_count
            for marked_total in range(half_edges + 1):
                for marked_degrees in _marked_profiles(marked_vertices, marked_total):
                    for unmarked_degrees in _unmarked_profiles(unmarked, half_edges - marked_total, half_edges):
                        degrees = marked_degrees + unmarked_degrees
                        vertex_marks = marks + (None,) * unmarked
                        for edges in realizations(degrees):
                            diagram = Diagram(vertex_count, edges, vertex_marks)
                            found.setdefault(diagram, diagram)
        generalLogger.debug(f"Diagram census: {len(found)} classes up to -chi={minus_chi} with {marked_vertices} marks")

    return sorted(found, key=lambda diagram: diagram.sort_key)
