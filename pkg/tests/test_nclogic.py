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


import os
import random
import unittest
from unittest import mock

import networkx as nx
import pytest

from tifs import nclogic
from tifs.constants import CONFIRM_RESIDUAL, ENV_PURE_PYTHON
from tifs.construct import bug, enumerate_minimal_tifs, tits_from_tifs
from tifs.errors import PreconditionError
from tifs.graphcore import ExclusivityGraph, canonical_form, serialize
from tifs.nclogic import (
    Kind,
    classify_all_pairs,
    classify_pair,
    count_assignments,
    designated_key,
    find_assignment,
    forbidden_family,
    is_critical_tifs,
    is_tifs,
    is_tits,
    is_true_iff_true,
    minimal_forbidden_patterns,
    passes_dimension_filters,
    using_native_kernel,
)
from tifs.realize import numeric_realization_search

from .support import atlas, brute_force_assignments, brute_force_tifs, brute_force_verdicts, from_networkx


class AssignmentCountTest(unittest.TestCase):
    def test_counts_match_brute_force(self):
        for g in atlas(3, 6):
            for d in (3, 4):
                self.assertEqual(count_assignments(g, d), len(brute_force_assignments(g, d)), (serialize(g), d))
                self.assertEqual(
                    count_assignments(g, d, {0: True}),
                    len(brute_force_assignments(g, d, {0: True})),
                    (serialize(g), d),
                )

    def assert_verdicts_match_brute_force(self, graphs, d):
        for g in graphs:
            for (a, b), expected in brute_force_verdicts(g, d).items():
                got = (is_tifs(g, d, a, b), is_tits(g, d, a, b), is_true_iff_true(g, d, a, b))
                self.assertEqual(got, expected, (serialize(g), d, a, b))

    def test_tifs_verdicts_match_brute_force(self):
        for g in atlas(3, 5):
            for a in range(g.n):
                for b in range(g.n):
                    if a != b and not g.has_edge(a, b):
                        self.assertEqual(is_tifs(g, 3, a, b), brute_force_tifs(g, 3, a, b), (serialize(g), a, b))

    def test_verdicts_match_brute_force(self):
        for d in (3, 4):
            self.assert_verdicts_match_brute_force(atlas(3, 6), d)

    @pytest.mark.slow
    def test_verdicts_match_brute_force_on_seven_vertices(self):
        for d in (3, 4):
            self.assert_verdicts_match_brute_force(atlas(7, 7), d)

    def test_limit_stops_early(self):
        g = bug().graph
        self.assertEqual(count_assignments(g, 3, limit=1), 1)
        self.assertGreater(count_assignments(g, 3), 1)

    def test_witness_is_valid(self):
        g = bug().graph
        witness = find_assignment(g, 3, {0: True})
        self.assertTrue(witness.values[0])
        self.assertTrue(witness.is_valid(g, 3))
        self.assertIsNone(find_assignment(g, 3, {0: True, 7: True}))

    def test_fixed_exclusive_pair_is_rejected(self):
        with self.assertRaises(PreconditionError):
            count_assignments(bug().graph, 3, {0: True, 1: True})

    def test_dimension_below_three_is_rejected(self):
        with self.assertRaises(PreconditionError):
            count_assignments(bug().graph, 2)

    def test_saturated_compiled_count_is_recounted(self):
        kernel = mock.Mock()
        kernel.solve.return_value = (nclogic.NATIVE_COUNT_CAP, None)
        with mock.patch.object(nclogic, "_native_kernel", kernel), mock.patch.dict(os.environ, {ENV_PURE_PYTHON: ""}):
            self.assertTrue(using_native_kernel())
            self.assertEqual(count_assignments(bug().graph, 3), len(brute_force_assignments(bug().graph, 3)))
        kernel.solve.assert_called()

    def test_pure_python_switch(self):
        with mock.patch.dict(os.environ, {ENV_PURE_PYTHON: "1"}):
            self.assertFalse(using_native_kernel())
            self.assertEqual(count_assignments(bug().graph, 3), len(brute_force_assignments(bug().graph, 3)))


@unittest.skipIf(nclogic._native_kernel is None, "compiled kernel not built")
class NativeKernelTest(unittest.TestCase):
    def test_native_and_python_agree(self):
        for g in atlas(4, 6) + [bug().graph]:
            cliques = list(nclogic._problem(g, 3))
            for fixed in (0, 1):
                native = nclogic._native_kernel.solve(list(g.rows), cliques, g.n, fixed, 0, 0)
                python = nclogic._python_solve(g.rows, tuple(cliques), g.n, fixed, 0, 0)
                self.assertEqual(native, python, serialize(g))


class ClassificationTest(unittest.TestCase):
    def setUp(self):
        self.bug = bug().graph

    def test_bug_is_a_tifs(self):
        self.assertTrue(is_tifs(self.bug, 3, 0, 7))
        self.assertTrue(is_tifs(self.bug, 3, 7, 0))
        self.assertFalse(is_tits(self.bug, 3, 0, 7))

    def test_true_iff_true(self):
        # two triangles sharing the edge 1-2
        g = ExclusivityGraph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
        self.assertTrue(is_true_iff_true(g, 3, 0, 3))
        self.assertTrue(is_tits(g, 3, 0, 3))
        tits = tits_from_tifs(bug()).graph
        self.assertTrue(is_tits(tits, 3, 0, 9))
        self.assertFalse(is_true_iff_true(tits, 3, 0, 9))
        triangles = from_networkx(nx.disjoint_union(nx.complete_graph(3), nx.complete_graph(3)))
        self.assertFalse(is_true_iff_true(triangles, 3, 0, 3))
        with self.assertRaises(PreconditionError):
            is_true_iff_true(g, 3, 0, 0)
        with self.assertRaises(PreconditionError):
            is_true_iff_true(g, 3, 0, 1)

    def test_classify_all_pairs_lists_both_orders(self):
        verdicts = [(c.kind, c.a, c.b_or_c) for c in classify_all_pairs(self.bug, 3)]
        self.assertIn((Kind.TIFS, 0, 7), verdicts)
        self.assertIn((Kind.TIFS, 7, 0), verdicts)
        self.assertEqual(verdicts, sorted(verdicts, key=lambda v: (v[1], v[2])))

    def test_classify_pair(self):
        c = classify_pair(self.bug, 3, Kind.TIFS, 0, 7)
        self.assertEqual(c.kind, Kind.TIFS)
        self.assertTrue(c.witness_sat.is_valid(self.bug, 3))
        self.assertEqual(classify_pair(self.bug, 3, Kind.TITS, 0, 7).kind, Kind.NONE)

    def test_adjacent_or_equal_pairs_are_rejected(self):
        with self.assertRaises(PreconditionError):
            is_tifs(self.bug, 3, 0, 1)
        with self.assertRaises(PreconditionError):
            is_tifs(self.bug, 3, 0, 0)

    def test_vacuous_pairs_are_hidden_by_default(self):
        # K4 admits no assignment in dimension 3; vertex 4 is isolated
        g = from_networkx(nx.complete_graph(4)).add_vertex(0)
        self.assertEqual(classify_all_pairs(g, 3), [])
        vacuous = classify_all_pairs(g, 3, include_vacuous=True)
        self.assertTrue(vacuous)
        self.assertTrue(all(c.kind == Kind.NONE and c.raw_step2_verdict for c in vacuous))
        self.assertEqual(classify_pair(g, 3, Kind.TIFS, 0, 4).kind, Kind.NONE)

    def test_verdicts_follow_a_relabelling(self):
        rng = random.Random(9)
        cases = [(self.bug, 3), (tits_from_tifs(bug()).graph, 3), (enumerate_minimal_tifs(4)[0].graph, 4)]
        for g, d in cases:
            perm = list(range(g.n))
            rng.shuffle(perm)
            expected = sorted((c.kind, perm[c.a], perm[c.b_or_c]) for c in classify_all_pairs(g, d))
            got = sorted((c.kind, c.a, c.b_or_c) for c in classify_all_pairs(g.relabel(perm), d))
            self.assertEqual(got, expected, serialize(g))

    def test_triangle_has_no_pairs(self):
        self.assertEqual(classify_all_pairs(from_networkx(nx.complete_graph(3)), 3), [])

    def test_bug_is_critical(self):
        self.assertTrue(is_critical_tifs(self.bug, 3, 0, 7))
        padded = self.bug.add_vertex(1 << 1)
        self.assertTrue(is_tifs(padded, 3, 0, 7))
        self.assertFalse(is_critical_tifs(padded, 3, 0, 7))

    def test_designated_key_respects_the_order(self):
        self.assertEqual(designated_key(self.bug, 0, 7), designated_key(self.bug, 7, 0))
        swapped = self.bug.relabel([7, 1, 2, 3, 4, 5, 6, 0])
        self.assertEqual(designated_key(swapped, 7, 0), designated_key(self.bug, 0, 7))
        self.assertNotEqual(designated_key(self.bug, 0, 7), designated_key(self.bug, 0, 3))


class ForbiddenFamilyTest(unittest.TestCase):
    def test_low_dimensions(self):
        (k2,) = forbidden_family(1).patterns
        self.assertEqual((k2.n, k2.edge_count), (2, 1))
        (path,) = forbidden_family(2).patterns
        self.assertEqual((path.n, path.edge_count), (3, 2))

    def test_dimension_three(self):
        family = forbidden_family(3).patterns
        self.assertEqual(sorted(p.edge_count for p in family), [4, 5, 6])
        self.assertTrue(all(p.n == 4 for p in family))
        (c4,) = minimal_forbidden_patterns(3)
        self.assertEqual(canonical_form(c4).bytes, canonical_form(from_networkx(nx.cycle_graph(4))).bytes)

    def test_patterns_are_distinct(self):
        for d in (4, 5, 6):
            family = forbidden_family(d).patterns
            self.assertTrue(all(p.n == d + 1 for p in family))
            self.assertEqual(len({canonical_form(p).bytes for p in family}), len(family))

    def test_dimension_filters(self):
        self.assertTrue(passes_dimension_filters(bug().graph, 3))
        self.assertFalse(passes_dimension_filters(from_networkx(nx.complete_graph(4)), 3))
        self.assertFalse(passes_dimension_filters(from_networkx(nx.cycle_graph(6)), 3))
        with self.assertRaises(PreconditionError):
            passes_dimension_filters(bug().graph, 2)

    def test_minimal_patterns_have_no_realization(self):
        for d in (3, 4):
            for p in minimal_forbidden_patterns(d):
                result = numeric_realization_search(p, d, restarts=5, iterations=1000)
                self.assertGreater(result.residual, CONFIRM_RESIDUAL, (d, serialize(p)))

    def test_bad_dimension(self):
        with self.assertRaises(PreconditionError):
            forbidden_family(0)


class AssignmentTypeTest(unittest.TestCase):
    def test_round_trip_through_mask(self):
        g = ExclusivityGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        witness = find_assignment(g, 3, {2: True})
        self.assertEqual(witness.true_vertices(), [2])
        self.assertEqual(witness.true_mask, 0b100)
