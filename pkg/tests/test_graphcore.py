# Copyright (C) 2025 tifs-toolkit contributors

# This file is part of tifs-toolkit.

# tifs-toolkit is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public License
# as published by the Free Software Foundation; either version 3
# of the License, or (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program; if not, see <https://www.gnu.org/licenses>.


import random
import unittest

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from tifs.constants import DOT, GRAPH6_HEADER, JSON
from tifs.construct import bug
from tifs.enumgen import SearchSpec, generate
from tifs.errors import GraphFormatError, PreconditionError
from tifs.graphcore import (
    ExclusivityGraph,
    are_isomorphic,
    canonical_form,
    cliques_of_size,
    contains_subgraph,
    count_subgraph_embeddings,
    greechie_lines,
    is_biconnected,
    maximal_cliques,
    parse,
    serialize,
)

from .support import atlas, from_networkx, to_networkx


def random_graph(n: int, p: float, seed: int) -> ExclusivityGraph:
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return ExclusivityGraph.from_edges(n, edges)


def shuffled(g: ExclusivityGraph, seed: int) -> ExclusivityGraph:
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return g.relabel(perm)


class ExclusivityGraphTest(unittest.TestCase):
    def test_rows_must_be_symmetric(self):
        with self.assertRaises(PreconditionError):
            ExclusivityGraph(2, (0b10, 0))

    def test_self_loop_rejected(self):
        with self.assertRaises(PreconditionError):
            ExclusivityGraph(1, (1,))
        with self.assertRaises(PreconditionError):
            ExclusivityGraph.from_edges(3, [(1, 1)])

    def test_vertex_limit(self):
        with self.assertRaises(PreconditionError):
            ExclusivityGraph(65, (0,) * 65)
        self.assertEqual(ExclusivityGraph(64, (0,) * 64).n, 64)

    def test_bug_shape(self):
        g = bug().graph
        self.assertEqual(g.n, 8)
        self.assertEqual(g.edge_count, 11)
        self.assertEqual(cliques_of_size(g, 3), [(1, 3, 5), (2, 4, 6)])
        self.assertEqual(g.label(0), "A")
        self.assertEqual(g.label(7), "B")


class Graph6Test(unittest.TestCase):
    def assert_matches_networkx(self, g):
        expected = nx.to_graph6_bytes(to_networkx(g), header=False).strip()
        self.assertEqual(serialize(g), expected)
        self.assertEqual(parse(expected).rows, g.rows)

    def test_agrees_with_networkx(self):
        self.assert_matches_networkx(bug().graph)
        for seed, n in enumerate([1, 2, 5, 8, 13, 20, 31]):
            self.assert_matches_networkx(random_graph(n, 0.4, seed))

    def test_large_vertex_counts(self):
        for n in (62, 63, 64):
            self.assert_matches_networkx(random_graph(n, 0.2, n))

    def test_header_is_accepted(self):
        data = GRAPH6_HEADER + serialize(bug().graph) + b"\n"
        self.assertEqual(parse(data).rows, bug().graph.rows)

    def test_errors_carry_a_position(self):
        with self.assertRaises(GraphFormatError) as ctx:
            parse(b"G?")
        self.assertIsInstance(ctx.exception.position, int)
        with self.assertRaises(GraphFormatError) as ctx:
            parse(b"A\x01")
        self.assertEqual(ctx.exception.position, 1)
        with self.assertRaises(GraphFormatError):
            parse(b"")
        with self.assertRaises(GraphFormatError):
            parse(b"A__")

    def test_json_keeps_labels(self):
        g = bug().graph
        back = parse(serialize(g, JSON), JSON)
        self.assertEqual(back.rows, g.rows)
        self.assertEqual(back.labels, g.labels)

    def test_dot_is_write_only(self):
        text = serialize(bug().graph, DOT, 3).decode()
        self.assertTrue(text.startswith("graph G {"))
        self.assertIn('[label="B"]', text)
        with self.assertRaises(GraphFormatError):
            parse(text, DOT)


class CanonicalFormTest(unittest.TestCase):
    def test_relabelling_does_not_change_the_form(self):
        g = bug().graph
        form = canonical_form(g)
        for seed in range(10):
            self.assertEqual(canonical_form(shuffled(g, seed)).bytes, form.bytes)
        self.assertEqual(canonical_form(g.relabel(form.labeling)).bytes, form.bytes)

    def test_relabelling_random_graphs(self):
        rng = random.Random(1000)
        for seed in range(1000):
            g = random_graph(rng.randint(1, 10), rng.random(), seed)
            self.assertEqual(canonical_form(shuffled(g, seed)).bytes, canonical_form(g).bytes, serialize(g))

    def test_bug_has_four_automorphisms(self):
        self.assertEqual(canonical_form(bug().graph).automorphism_count, 4)

    def test_atlas_classes_are_distinct(self):
        graphs = atlas(1, 6)
        self.assertEqual(len(graphs), 208)
        self.assertEqual(len({canonical_form(g).bytes for g in graphs}), 208)

    def test_automorphism_counts_match_networkx(self):
        for g in atlas(1, 5):
            G = to_networkx(g)
            expected = sum(1 for _ in GraphMatcher(G, G).isomorphisms_iter())
            self.assertEqual(canonical_form(g).automorphism_count, expected, serialize(g))

    def test_are_isomorphic(self):
        g = random_graph(11, 0.35, 7)
        self.assertTrue(are_isomorphic(g, shuffled(g, 3)))
        cycle = from_networkx(nx.cycle_graph(8))
        self.assertFalse(are_isomorphic(bug().graph, cycle))

    def test_colours_restrict_isomorphisms(self):
        g = bug().graph
        self.assertNotEqual(canonical_form(g, [1, 0, 0, 0, 0, 0, 0, 0]).bytes, canonical_form(g, [0, 1, 0, 0, 0, 0, 0, 0]).bytes)
        self.assertEqual(canonical_form(g, [1, 0, 0, 0, 0, 0, 0, 0]).bytes, canonical_form(g, [0, 0, 0, 0, 0, 0, 0, 1]).bytes)


class GenerationCountTest(unittest.TestCase):
    def test_unfiltered_counts(self):
        for n, expected in zip(range(1, 7), [1, 2, 4, 11, 34, 156]):
            self.assertEqual(sum(1 for _ in generate(SearchSpec.unfiltered(n))), expected, n)

    @pytest.mark.slow
    def test_unfiltered_seven_vertices(self):
        self.assertEqual(sum(1 for _ in generate(SearchSpec.unfiltered(7))), 1044)


class StructureTest(unittest.TestCase):
    def test_biconnectivity_matches_networkx(self):
        for g in atlas(2, 6):
            self.assertEqual(is_biconnected(g), nx.is_biconnected(to_networkx(g)), serialize(g))

    def test_maximal_cliques_match_networkx(self):
        for seed in range(8):
            g = random_graph(12, 0.45, seed)
            expected = sorted(tuple(sorted(c)) for c in nx.find_cliques(to_networkx(g)))
            self.assertEqual(maximal_cliques(g), expected)

    def test_subgraph_containment(self):
        k4 = from_networkx(nx.complete_graph(4))
        k3 = from_networkx(nx.complete_graph(3))
        c4 = from_networkx(nx.cycle_graph(4))
        self.assertTrue(contains_subgraph(k4, c4))
        self.assertFalse(contains_subgraph(c4, k3))
        self.assertEqual(count_subgraph_embeddings(k4, k3), 4)
        self.assertEqual(count_subgraph_embeddings(k4, c4), 3)

    def test_anchored_containment(self):
        # triangle on 0,1,2 plus a pendant vertex 3
        g = ExclusivityGraph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        k3 = from_networkx(nx.complete_graph(3))
        self.assertTrue(contains_subgraph(g, k3, anchor=0))
        self.assertFalse(contains_subgraph(g, k3, anchor=3))

    def test_bug_diagram_has_seven_lines(self):
        lines = greechie_lines(bug().graph, 3)
        self.assertEqual(len(lines), 7)
        self.assertEqual(lines[:2], [(1, 3, 5), (2, 4, 6)])
