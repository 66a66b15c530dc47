"""
Structures tests: combinatorics, relational storage, graphs, hypergraphs and samplers.
"""

import sys
import unittest
from itertools import combinations
from math import comb
from pathlib import Path

SRC_PATH = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(SRC_PATH))

import numpy as np

from core.errors import CapacityError, InvalidArityError, PreconditionError, SignatureMismatchError
from core.models import Signature
from core.prng import Prng
from structures import (
    Graph,
    Hypergraph,
    RelStructure,
    check_capacity,
    combinations_array,
    encode_tuple,
    enumerate_structures,
    falling_factorial,
    graph_from_structure,
    iter_structures,
    restricted_growth_strings,
    rgs_by_class_count,
    sample_random_graph,
    sample_random_hypergraph,
    sample_random_structure,
    structure_cell_count,
    structure_codes,
    structure_from_graph,
    word_count,
)
from structures.graphs import candidate_edge_count


class TestCombinatorics(unittest.TestCase):
    """Subset and partition enumeration."""

    def test_combinations_array_matches_itertools(self):
        for n, k in [(5, 0), (5, 1), (5, 2), (6, 3), (4, 4)]:
            expected = list(combinations(range(n), k))
            got = [tuple(r) for r in combinations_array(n, k).tolist()]
            self.assertEqual(got, expected)

    def test_combinations_array_out_of_range(self):
        self.assertEqual(combinations_array(3, 4).shape, (0, 4))

    def test_falling_factorial(self):
        self.assertEqual(falling_factorial(5, 2), 20)
        self.assertEqual(falling_factorial(5, 0), 1)
        self.assertEqual(falling_factorial(2, 3), 0)

    def test_restricted_growth_strings(self):
        self.assertEqual(restricted_growth_strings(2), [(0, 0), (0, 1)])
        self.assertEqual(
            restricted_growth_strings(3),
            [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 1, 2)],
        )
        # Bell numbers
        self.assertEqual([len(restricted_growth_strings(a)) for a in range(1, 6)], [1, 2, 5, 15, 52])

    def test_rgs_grouping(self):
        groups = rgs_by_class_count(3)
        self.assertEqual(groups[2], [(0, 0, 1), (0, 1, 0), (0, 1, 1)])
        self.assertEqual(groups[3], [(0, 1, 2)])

    def test_word_count(self):
        self.assertEqual(word_count(1), 1)
        self.assertEqual(word_count(64), 1)
        self.assertEqual(word_count(65), 2)


class TestRelStructure(unittest.TestCase):
    """Dense relational structures."""

    def setUp(self):
        self.sig = Signature.of(("R", 2), ("U", 1))

    def test_from_tuples_and_queries(self):
        A = RelStructure.from_tuples(self.sig, 3, {"R": [(0, 1), (2, 2)], 1: [(1,)]})
        self.assertTrue(A.holds("R", (0, 1)))
        self.assertFalse(A.holds("R", (1, 0)))
        self.assertEqual(A.tuples("R").tolist(), [[0, 1], [2, 2]])
        self.assertEqual(A.tuple_counts(), {"R": 2, "U": 1})

    def test_read_only(self):
        A = RelStructure.empty(self.sig, 3)
        with self.assertRaises(ValueError):
            A.relations[0][0, 0] = True

    def test_shape_mismatch(self):
        with self.assertRaises(SignatureMismatchError):
            RelStructure(self.sig, 3, (np.zeros((3, 3), bool),))
        with self.assertRaises(SignatureMismatchError):
            RelStructure(self.sig, 3, (np.zeros((3,), bool), np.zeros((3,), bool)))

    def test_bad_tuples(self):
        with self.assertRaises(PreconditionError):
            RelStructure.from_tuples(self.sig, 3, {"R": [(0, 3)]})
        with self.assertRaises(PreconditionError):
            RelStructure.from_tuples(self.sig, 3, {"R": [(0,)]})

    def test_relabel(self):
        A = RelStructure.from_tuples(self.sig, 3, {"R": [(0, 1)], "U": [(2,)]})
        B = A.relabel([2, 0, 1])
        self.assertTrue(B.holds("R", (2, 0)))
        self.assertTrue(B.holds("U", (1,)))
        self.assertEqual(B.tuple_counts(), A.tuple_counts())
        with self.assertRaises(PreconditionError):
            A.relabel([0, 0, 1])

    def test_capacity(self):
        self.assertEqual(check_capacity(10, 3), 1000)
        with self.assertRaises(CapacityError):
            check_capacity(1 << 11, 4)

    def test_encode_tuple(self):
        self.assertEqual(encode_tuple((1, 2), 3), 5)


class TestGraphs(unittest.TestCase):
    """Graphs and hypergraphs."""

    def test_graph_validation(self):
        with self.assertRaises(PreconditionError):
            Graph(np.array([[False, True], [False, False]]))
        with self.assertRaises(PreconditionError):
            Graph(np.eye(2, dtype=bool))
        with self.assertRaises(PreconditionError):
            Graph.from_edges(3, [(0, 0)])

    def test_graph_basics(self):
        G = Graph.cycle(5)
        self.assertEqual(G.edge_count(), 5)
        self.assertEqual(G.degrees().tolist(), [2] * 5)
        self.assertEqual(G.neighbors(0).tolist(), [1, 4])
        self.assertEqual(Graph.complete(4).edge_count(), 6)
        self.assertEqual(G.edges().tolist()[0], [0, 1])

    def test_graph_relabel(self):
        G = Graph.from_edges(3, [(0, 1)])
        H = G.relabel([1, 2, 0])
        self.assertEqual(H, Graph.from_edges(3, [(1, 2)]))

    def test_hypergraph_canonical(self):
        H = Hypergraph.from_edges(5, 3, [(2, 1, 0), (4, 3, 0), (0, 1, 2)])
        self.assertEqual(H.edges.tolist(), [[0, 1, 2], [0, 3, 4]])
        self.assertTrue(H.has_edge((1, 0, 2)))
        self.assertFalse(H.has_edge((0, 1, 1)))
        self.assertTrue(H.indicator[2, 0, 1])

    def test_hypergraph_arity(self):
        with self.assertRaises(InvalidArityError):
            Hypergraph.empty(3, 4)
        with self.assertRaises(InvalidArityError):
            Hypergraph.empty(3, 1)
        with self.assertRaises(PreconditionError):
            Hypergraph.from_edges(4, 2, [(0, 0)])

    def test_complete_hypergraph(self):
        self.assertEqual(Hypergraph.complete(6, 3).edge_count(), 20)
        self.assertEqual(candidate_edge_count(6, 3), 20)

    def test_structure_round_trip(self):
        G = Graph.cycle(4)
        A = structure_from_graph(G)
        self.assertEqual(A.sig.arities, (2,))
        self.assertEqual(graph_from_structure(A), G)
        with self.assertRaises(SignatureMismatchError):
            graph_from_structure(RelStructure.empty(Signature.of(("U", 1)), 3))


class TestSampling(unittest.TestCase):
    """Seeded samplers and exhaustive enumeration."""

    def test_sampler_determinism(self):
        self.assertEqual(sample_random_graph(30, Prng(1)), sample_random_graph(30, Prng(1)))
        self.assertNotEqual(sample_random_graph(30, Prng(1)), sample_random_graph(30, Prng(2)))
        sig = Signature.of(("R", 2), ("U", 1))
        self.assertEqual(sample_random_structure(sig, 6, Prng(3)), sample_random_structure(sig, 6, Prng(3)))

    def test_sampler_rewinds(self):
        rng = Prng(4)
        first = sample_random_graph(20, rng)
        rng.bits(100)
        self.assertEqual(sample_random_graph(20, rng), first)

    def test_edge_density(self):
        G = sample_random_graph(200, Prng(5))
        density = G.edge_count() / comb(200, 2)
        self.assertGreater(density, 0.45)
        self.assertLess(density, 0.55)

    def test_cell_marginals_are_half(self):
        trials = 10000
        tolerance = 4 * np.sqrt(0.25 / trials)
        rng = Prng(21)
        edges = np.zeros((4, 4))
        sig = Signature.of(("R", 2), ("U", 1))
        cells = [np.zeros((3, 3)), np.zeros(3)]
        for i in range(trials):
            edges += sample_random_graph(4, rng.child(i)).adjacency
            A = sample_random_structure(sig, 3, rng.child(trials + i))
            for total, rel in zip(cells, A.relations):
                total += rel
        rows, cols = np.triu_indices(4, 1)
        self.assertLess(np.abs(edges[rows, cols] / trials - 0.5).max(), tolerance)
        for total in cells:
            self.assertLess(np.abs(total / trials - 0.5).max(), tolerance)

    def test_random_hypergraph(self):
        H = sample_random_hypergraph(12, 3, Prng(6))
        self.assertEqual(H.t, 3)
        self.assertGreater(H.edge_count(), 0)
        self.assertLess(H.edge_count(), comb(12, 3))
        with self.assertRaises(InvalidArityError):
            sample_random_hypergraph(3, 4, Prng(6))

    def test_enumerate_structures(self):
        sig = Signature.of(("R", 2), ("U", 1))
        self.assertEqual(structure_cell_count(sig, 2), 6)
        batches = enumerate_structures(sig, 2)
        self.assertEqual(batches[0].shape, (64, 2, 2))
        self.assertEqual(batches[1].shape, (64, 2))
        np.testing.assert_array_equal(structure_codes(batches), np.arange(64))
        # all distinct
        flat = np.concatenate([b.reshape(64, -1) for b in batches], axis=1)
        self.assertEqual(np.unique(flat, axis=0).shape[0], 64)

    def test_enumeration_cap(self):
        with self.assertRaises(PreconditionError):
            enumerate_structures(Signature.of(("R", 3)), 3)

    def test_iter_structures(self):
        structures = list(iter_structures(Signature.of(("U", 1)), 2))
        self.assertEqual(len(structures), 4)
        self.assertEqual(structures[1].tuples("U").tolist(), [[0]])


if __name__ == '__main__':
    unittest.main()
