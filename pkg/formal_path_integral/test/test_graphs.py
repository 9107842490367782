# coding: utf-8

from __future__ import absolute_import

import unittest
from collections import Counter
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from math import factorial

import networkx as nx

from formal_path_integral.errors import LimitExceededError
from formal_path_integral.graphs import (
    Diagram,
    count_pairings,
    dump,
    enumerate_diagrams,
    pairings,
    parse_dump,
    trees,
)
from formal_path_integral.test import BaseTestCase


# ---------------------- independent oracles ---------------------- #

def naive_classes(max_minus_chi):
    """Isomorphism classes of multigraphs with min degree 3 and ``E - V <= max_minus_chi``.

    Every edge multiset over at most ``2 * max_minus_chi`` vertices, deduplicated by
    exhaustive isomorphism testing.
    """
    classes = []
    for vertex_count in range(1, 2 * max_minus_chi + 1):
        pairs = [(a, b) for a in range(vertex_count) for b in range(a, vertex_count)]
        for minus_chi in range(1, max_minus_chi + 1):
            for edges in combinations_with_replacement(pairs, vertex_count + minus_chi):
                graph = nx.MultiGraph()
                graph.add_nodes_from(range(vertex_count))
                graph.add_edges_from(edges)
                # a self-loop counts twice in networkx degrees too
                if min(dict(graph.degree()).values()) < 3:
                    continue
                if not any(nx.is_isomorphic(graph, known) for known in classes):
                    classes.append(graph)
    return classes


def half_edge_automorphisms(diagram):
    """Permutations of half-edges preserving the edge pairing, the incidence and the marks."""
    vertex_of = []
    for a, b in diagram.edges:
        vertex_of += [a, b]
    count = 0
    for image in permutations(range(len(vertex_of))):
        if any(image[2 * e] // 2 != image[2 * e + 1] // 2 for e in range(diagram.edge_count)):
            continue
        sigma = {}
        consistent = True
        for h, target in enumerate(image):
            u, w = vertex_of[h], vertex_of[target]
            if sigma.setdefault(u, w) != w or diagram.marks[u] != diagram.marks[w]:
                consistent = False
                break
        if consistent and len(set(sigma.values())) == len(sigma):
            count += 1
    return count


def tree_splits(tree):
    graph = nx.Graph()
    for leaf, vertex in enumerate(tree.attachments):
        graph.add_edge(("L", leaf), ("I", vertex))
    for a, b in tree.internal_edges:
        graph.add_edge(("I", a), ("I", b))
    splits = set()
    for a, b in tree.internal_edges:
        graph.remove_edge(("I", a), ("I", b))
        side = nx.node_connected_component(graph, ("I", a))
        leaves = frozenset(node[1] for node in side if node[0] == "L")
        splits.add(min(leaves, frozenset(range(tree.leaf_count)) - leaves, key=sorted))
        graph.add_edge(("I", a), ("I", b))
    return frozenset(splits)


class TestDiagramCensus(BaseTestCase):
    """Diagram enumeration tests"""

    def test_no_diagrams_at_zero_loops(self):
        """Test case for enumerate_diagrams

        There are no closed min-degree-3 graphs with chi >= 0.
        """
        self.assertEqual(enumerate_diagrams(0), [])

    def test_two_loop_diagrams(self):
        diagrams = enumerate_diagrams(1)

        self.assertEqual(len(diagrams), 3)
        by_shape = {(d.vertex_count, d.edge_count, d.edges): d for d in diagrams}
        figure_eight = by_shape[(1, 2, ((0, 0), (0, 0)))]
        theta = by_shape[(2, 3, ((0, 1), (0, 1), (0, 1)))]
        barbell = by_shape[(2, 3, ((0, 0), (0, 1), (1, 1)))]

        self.assertEqual(figure_eight.automorphism_order, 8)
        self.assertEqual(theta.automorphism_order, 12)
        self.assertEqual(barbell.automorphism_order, 8)
        for diagram in diagrams:
            self.assertEqual(diagram.euler_characteristic, -1)
            self.assertEqual(diagram.euler_characteristic, diagram.vertex_count - len(diagram.edges))

    def test_matches_naive_generator(self):
        for max_minus_chi in (1, 2):
            census = enumerate_diagrams(max_minus_chi)
            self.assertEqual(len(census), len(naive_classes(max_minus_chi)))
            self.assertEqual(len(set(census)), len(census))
            for diagram in census:
                self.assertTrue(all(degree >= 3 for degree in diagram.degrees))

    def test_automorphisms_match_half_edge_brute_force(self):
        for diagram in enumerate_diagrams(2):
            if diagram.edge_count <= 4:
                self.assertEqual(diagram.automorphism_order, half_edge_automorphisms(diagram), dump(diagram))

    def test_automorphism_examples(self):
        self.assertEqual(Diagram(1, [(0, 0)]).automorphism_order, 2)
        self.assertEqual(Diagram(2, [(0, 1)] * 3).automorphism_order, 12)
        triangle = Diagram(3, [(0, 1), (1, 2), (0, 2)])
        self.assertEqual(triangle.automorphism_order, 6)
        self.assertEqual(triangle.automorphism_order, half_edge_automorphisms(triangle))

    def test_symmetry_factors_match_wick_pairings(self):
        census = enumerate_diagrams(2)
        for profile in ((3, 3), (4,), (4, 4), (3, 3, 4), (3, 3, 3, 3), (6,), (3, 5)):
            total = sum(Fraction(1, d.automorphism_order) for d in census
                        if tuple(sorted(d.degrees)) == tuple(sorted(profile)))
            denominator = 1
            for degree in profile:
                denominator *= factorial(degree)
            for multiplicity in Counter(profile).values():
                denominator *= factorial(multiplicity)
            self.assertEqual(total, Fraction(count_pairings(sum(profile)), denominator), profile)

    def test_isomorphic_inputs_share_a_label(self):
        first = Diagram(3, [(0, 0), (0, 1), (1, 2), (2, 2), (1, 2)])
        second = Diagram(3, [(2, 2), (2, 1), (1, 0), (0, 0), (1, 0)])
        self.assertEqual(first, second)
        self.assertEqual(first.canonical_label, second.canonical_label)
        self.assertNotEqual(first.canonical_label, Diagram(2, [(0, 1)] * 3).canonical_label)

    def test_marked_vertices(self):
        single = enumerate_diagrams(0, marked_vertices=1)
        shapes = {(d.vertex_count, d.edges) for d in single}
        # a lone mark, a mark with a self-loop, a mark on a tadpole stem
        self.assertIn((1, ()), shapes)
        self.assertIn((1, ((0, 0),)), shapes)
        self.assertIn((2, ((0, 1), (1, 1))), shapes)
        for diagram in single:
            self.assertEqual(diagram.marks[0], 0)
            self.assertTrue(all(diagram.degrees[v] >= 3 for v in range(1, diagram.vertex_count)))

        # mark ids are ordered: a loop on mark 0 differs from a loop on mark 1
        loop_on_first = Diagram(2, [(0, 0)], (0, 1))
        loop_on_second = Diagram(2, [(1, 1)], (0, 1))
        self.assertNotEqual(loop_on_first, loop_on_second)
        double = enumerate_diagrams(0, marked_vertices=2)
        self.assertIn(loop_on_first, double)
        self.assertIn(loop_on_second, double)

    def test_ceiling(self):
        with self.assertRaises(LimitExceededError):
            enumerate_diagrams(5)
        with self.assertRaises(LimitExceededError):
            enumerate_diagrams(2, ceiling=1)
        with self.assertRaises(ValueError):
            enumerate_diagrams(1, marked_vertices=3)

    def test_dump_round_trip(self):
        barbell = Diagram(2, [(0, 0), (0, 1), (1, 1)])
        self.assertEqual(dump(barbell), "V=2 marks=- edges=(0,0),(0,1),(1,1) chi=-1 aut=8")
        for diagram in enumerate_diagrams(2) + enumerate_diagrams(0, marked_vertices=2):
            self.assertEqual(parse_dump(dump(diagram)), diagram)
        with self.assertRaises(ValueError):
            parse_dump("V=two edges=-")


class TestPairings(BaseTestCase):
    """Perfect matching tests"""

    def test_small_cases(self):
        self.assertEqual(pairings(3), [])
        self.assertEqual(pairings(2), [((1, 2),)])
        self.assertEqual(pairings(4), [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))])
        self.assertEqual(pairings(0), [()])

    def test_counts(self):
        for n in range(0, 9):
            self.assertEqual(len(pairings(n)), count_pairings(n))
        self.assertEqual(count_pairings(6), 15)
        self.assertEqual(count_pairings(8), 105)
        for matching in pairings(6):
            self.assertEqual(sorted(x for pair in matching for x in pair), list(range(1, 7)))


class TestTrees(BaseTestCase):
    """Trees with labelled leaves"""

    def test_counts(self):
        for n, expected in ((3, 1), (4, 4), (5, 26), (6, 236)):
            self.assertEqual(len(trees(n)), expected)

    def test_trees_are_distinct_and_valid(self):
        for n in (4, 5):
            found = trees(n)
            self.assertEqual(len({tree_splits(tree) for tree in found}), len(found))
            for tree in found:
                self.assertEqual(len(tree.internal_edges), tree.internal_count - 1)
                for vertex in range(tree.internal_count):
                    self.assertGreaterEqual(tree.degree(vertex), 3)

    def test_too_few_leaves(self):
        with self.assertRaises(ValueError):
            trees(2)


if __name__ == '__main__':
    unittest.main()
