"""
Rado construction tests: tournaments, universal sets, perfect hash families
and the assembled graphs and structures.
"""

import sys
import unittest
from itertools import combinations
from pathlib import Path

SRC_PATH = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(SRC_PATH))

import numpy as np

from core.errors import InfeasibleParametersError, PreconditionError
from core.models import Signature
from core.prng import Prng
from extension_axioms import check_ea_graph, check_ea_structure
from rado import (
    PerfectHashFamily,
    RadoCertificate,
    Tournament,
    UniversalSet,
    build_perfect_hash_family,
    build_universal_set,
    cyclic_pattern,
    find_dominating_tournament,
    first_uncovered_phf,
    first_uncovered_universal,
    first_undominated,
    minimal_feasible_n,
    part_boundaries,
    permutation_closure,
    rado_graph,
    rado_structure,
    rebuild_from_certificate,
    tournament_failure_bound,
    verify_phf,
    verify_tournament_domination,
    verify_universal_set,
)
from rado.universal import _CoverProblem, _HashCover, _UniversalCover


class TestTournaments(unittest.TestCase):
    """k-dominating tournaments."""

    def test_transitive_tournament_is_not_dominating(self):
        self.assertEqual(first_undominated(Tournament.transitive(5), 1), (0,))

    def test_validation(self):
        with self.assertRaises(PreconditionError):
            Tournament(np.zeros((3, 3), dtype=bool))
        with self.assertRaises(PreconditionError):
            Tournament(np.ones((3, 3), dtype=bool))

    def test_cyclic_triangle(self):
        T = Tournament.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
        self.assertTrue(verify_tournament_domination(T, 1))
        self.assertFalse(verify_tournament_domination(T, 2))

    def test_search(self):
        for k in (1, 2):
            T = find_dominating_tournament(k, Prng(0))
            self.assertEqual(T.m, 1 << (3 * k))
            self.assertTrue(verify_tournament_domination(T, k))
        self.assertLess(tournament_failure_bound(2), 1e-3)
        with self.assertRaises(PreconditionError):
            find_dominating_tournament(5, Prng(0))

    def test_random_tournaments_usually_dominate(self):
        hits = sum(verify_tournament_domination(Tournament.random(64, Prng(seed)), 2) for seed in range(20))
        self.assertGreaterEqual(hits, 18)

    def test_random_is_deterministic(self):
        self.assertEqual(Tournament.random(16, Prng(7)), Tournament.random(16, Prng(7)))


class TestUniversalSets(unittest.TestCase):
    """(n,k)-universal sets and perfect hash families."""

    def test_greedy_universal_set(self):
        U = build_universal_set(20, 3, "greedy", Prng(1))
        self.assertTrue(verify_universal_set(U))
        for S in combinations(range(20), 3):
            traces = {tuple(s for s in S if row[s]) for row in U.sets}
            self.assertEqual(len(traces), 8)

    def test_randomized_universal_set(self):
        U = build_universal_set(12, 2, "randomized", Prng(2))
        self.assertTrue(verify_universal_set(U))
        self.assertTrue(verify_universal_set(U, mode="sampled", trials=500, rng=Prng(3)))

    def test_first_uncovered_trace(self):
        U = UniversalSet(5, 2, np.zeros((1, 5), dtype=bool))
        self.assertEqual(first_uncovered_universal(U), ((0, 1), (0,)))

    def test_perfect_hash_family(self):
        F = build_perfect_hash_family(12, 3, "greedy", Prng(4))
        self.assertTrue(verify_phf(F))
        for S in combinations(range(12), 3):
            self.assertTrue(any(set(row[list(S)].tolist()) == {1, 2, 3} for row in F.funcs))
        R = build_perfect_hash_family(10, 2, "randomized", Prng(5))
        self.assertTrue(verify_phf(R))

    def test_first_uncovered_phf(self):
        F = PerfectHashFamily(4, 2, np.array([[1, 1, 2, 2]]))
        self.assertEqual(first_uncovered_phf(F), (0, 1))
        with self.assertRaises(PreconditionError):
            PerfectHashFamily(3, 2, np.array([[1, 3, 2]]))

    def test_parameter_checks(self):
        with self.assertRaises(PreconditionError):
            build_universal_set(5, 3, "greedy", Prng())
        with self.assertRaises(PreconditionError):
            build_universal_set(20, 2, "quantum", Prng())
        with self.assertRaises(PreconditionError):
            build_perfect_hash_family(10, 5, "greedy", Prng())

    def test_permutation_closure(self):
        index, perm = permutation_closure(PerfectHashFamily(4, 2, np.array([[1, 2, 1, 2]])))
        self.assertEqual(index.tolist(), [0, 0])
        self.assertEqual(perm.tolist(), [[1, 2], [2, 1]])
        index, perm = permutation_closure(PerfectHashFamily(3, 1, np.ones((1, 3))))
        self.assertEqual(perm.tolist(), [[1]])

    def test_cover_problems_implement_every_hook(self):
        with self.assertRaises(TypeError):
            _CoverProblem(6, 2)
        for cover in (_UniversalCover(6, 2), _HashCover(6, 2)):
            self.assertGreater(cover.pending(), 0)


class TestRadoGraph(unittest.TestCase):
    """Deterministic EA_k graphs."""

    def test_layout_helpers(self):
        starts = part_boundaries(10, 4)
        self.assertEqual(starts.tolist(), [0, 3, 6, 8, 10])
        self.assertEqual(cyclic_pattern(starts, 2).tolist(), [0, 1, 0, 0, 1, 0, 0, 1, 0, 1])
        self.assertEqual(minimal_feasible_n("graph", 2, 4), 256)
        with self.assertRaises(PreconditionError):
            minimal_feasible_n("digraph", 1, 2)

    def test_ea1_over_seeds(self):
        for seed in range(5):
            with self.subTest(seed=seed):
                G, cert = rado_graph(64, 1, Prng(seed))
                self.assertTrue(check_ea_graph(G, 1).holds)
                self.assertEqual(cert.tournament.m, 8)
                self.assertEqual(rebuild_from_certificate(cert), G)

    def test_no_edges_inside_a_part(self):
        G, cert = rado_graph(64, 1, Prng(1))
        starts = cert.part_starts.tolist()
        for a, b in zip(starts[:-1], starts[1:]):
            self.assertFalse(G.adjacency[a:b, a:b].any())

    def test_ea2_over_seeds(self):
        for seed in range(5):
            with self.subTest(seed=seed):
                G, cert = rado_graph(4096, 2, Prng(seed))
                self.assertEqual(cert.tournament.m, 64)
                self.assertTrue(check_ea_graph(G, 2).holds)

    def test_deterministic(self):
        first, _ = rado_graph(64, 1, Prng(5))
        second, _ = rado_graph(64, 1, Prng(5))
        self.assertEqual(first, second)

    def test_infeasible(self):
        with self.assertRaises(InfeasibleParametersError) as ctx:
            rado_graph(10, 2, Prng(0))
        self.assertEqual(ctx.exception.minimal_n, 256)
        with self.assertRaises(PreconditionError):
            rado_graph(64, 0, Prng(0))

    def test_certificate_validation(self):
        _, cert = rado_graph(64, 1, Prng(2))
        with self.assertRaises(PreconditionError):
            RadoCertificate(
                kind="graph", n=64, k=1, tournament=cert.tournament,
                part_starts=cert.part_starts, pattern=np.zeros(64, dtype=np.int64),
                universal=cert.universal,
            )
        with self.assertRaises(PreconditionError):
            RadoCertificate(
                kind="digraph", n=64, k=1, tournament=cert.tournament,
                part_starts=cert.part_starts, pattern=cert.pattern, universal=cert.universal,
            )


class TestRadoStructure(unittest.TestCase):
    """Deterministic EA^sigma_k structures."""

    def test_binary_relation(self):
        sig = Signature.of(("R", 2))
        for seed in range(5):
            with self.subTest(seed=seed):
                A, cert = rado_structure(sig, 64, 1, Prng(seed))
                self.assertTrue(check_ea_structure(A, 1).holds)
                self.assertEqual(cert.range_size, 8)
                self.assertEqual(rebuild_from_certificate(cert), A)

    def test_unary_relation(self):
        sig = Signature.of(("R", 1))
        with self.assertRaises(InfeasibleParametersError) as ctx:
            rado_structure(sig, 15, 1, Prng(4))
        self.assertEqual(ctx.exception.minimal_n, 16)
        A, cert = rado_structure(sig, 16, 1, Prng(4))
        self.assertTrue(check_ea_structure(A, 1).holds)
        self.assertEqual(cert.range_size, 2)
        self.assertTrue(0 < A.tuple_counts()["R"] < 16)

    def test_mixed_signature(self):
        sig = Signature.of(("E", 2), ("U", 1))
        A, cert = rado_structure(sig, 128, 1, Prng(1))
        self.assertTrue(check_ea_structure(A, 1).holds)
        self.assertEqual(cert.type_bits, 4)

    def test_infeasible(self):
        sig = Signature.of(("R", 2))
        with self.assertRaises(InfeasibleParametersError) as ctx:
            rado_structure(sig, 63, 1, Prng(0))
        self.assertEqual(ctx.exception.minimal_n, 64)
        with self.assertRaises(InfeasibleParametersError) as ctx:
            rado_structure(Signature.of(("R", 3)), 32, 2, Prng(0))
        self.assertGreater(ctx.exception.minimal_n, 32)


if __name__ == '__main__':
    unittest.main()
