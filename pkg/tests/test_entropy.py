"""
Entropy tests: signature orders, the existence classification, synthesized
transductions and the type-counting distinguisher.
"""

import sys
import unittest
from itertools import combinations_with_replacement, product
from math import factorial
from pathlib import Path

SRC_PATH = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(SRC_PATH))

import numpy as np

from core.errors import (
    CapacityError,
    OrderViolationError,
    PreconditionError,
    SignatureMismatchError,
)
from core.models import Logic, Signature, Verdict
from core.prng import Prng
from entropy import (
    And,
    Atom,
    Const,
    Eq,
    Neq,
    Or,
    QFTransduction,
    apply_qf_transduction,
    build_statistical_transduction,
    check_uniformity,
    ck_type_entries,
    ck_type_of,
    classify,
    estimate_distinguishing_advantage,
    eval_type_realization,
    find_distinguisher_c,
    geq_lex,
    geq_surj,
    realized_type_codes,
    stirling2,
    surjection_count,
    transduction_multiplicities,
    type_count_bound,
)
from structures import RelStructure, iter_structures, sample_random_structure


def sig(*arities):
    return Signature.from_arities(list(arities))


def small_signatures(max_relations, max_arity):
    for count in range(1, max_relations + 1):
        for arities in combinations_with_replacement(range(max_arity, 0, -1), count):
            yield sig(*arities)


BRUTE_FORCE_MAPS = 1 << 21

STIRLING_ROWS = {
    1: [1],
    2: [1, 1],
    3: [1, 3, 1],
    4: [1, 7, 6, 1],
    5: [1, 15, 25, 10, 1],
    6: [1, 31, 90, 65, 15, 1],
    7: [1, 63, 301, 350, 140, 21, 1],
    8: [1, 127, 966, 1701, 1050, 266, 28, 1],
}


class TestOrders(unittest.TestCase):
    """Surjection counts and the two signature orders."""

    def test_surjection_count_examples(self):
        self.assertEqual(surjection_count(3, 2), 6)
        self.assertEqual(surjection_count(2, 3), 0)
        for a in range(1, 9):
            self.assertEqual(surjection_count(a, 1), 1)
        with self.assertRaises(PreconditionError):
            surjection_count(0, 1)
        with self.assertRaises(CapacityError):
            surjection_count(13, 2)

    def test_surjections_match_stirling(self):
        for a in range(1, 9):
            for k in range(0, 9):
                self.assertEqual(surjection_count(a, k), stirling2(a, k) * factorial(k), msg=f"{a},{k}")

    def test_surjections_match_brute_force(self):
        for a in range(1, 9):
            for k in range(1, 9):
                if k ** a > BRUTE_FORCE_MAPS:
                    continue
                index = np.arange(k ** a, dtype=np.int64)
                image = np.zeros_like(index)
                for position in range(a):
                    image |= 1 << (index // k ** position % k)
                onto = int((image == (1 << k) - 1).sum())
                self.assertEqual(surjection_count(a, k), onto, msg=f"{a},{k}")

    def test_surjections_match_known_stirling_rows(self):
        for a, row in STIRLING_ROWS.items():
            for k, value in enumerate(row, start=1):
                self.assertEqual(surjection_count(a, k), value * factorial(k), msg=f"{a},{k}")
            self.assertEqual(surjection_count(a, a + 1), 0)

    def test_lex_examples(self):
        self.assertTrue(geq_lex(sig(3), sig(*[2] * 10)))
        self.assertTrue(geq_lex(sig(2), sig(2)))
        self.assertFalse(geq_lex(sig(1, 1), sig(2)))

    def test_surj_examples(self):
        self.assertEqual(geq_surj(sig(3, 1, 1), sig(2, 2, 2)), (True, None))
        self.assertEqual(geq_surj(sig(2), sig(1, 1)), (False, 1))
        self.assertEqual(geq_surj(sig(1, 1), sig(2)), (False, 2))
        self.assertEqual(geq_surj(sig(3), sig(2, 2, 2)), (False, 1))

    def test_surj_refines_lex_and_lex_is_total(self):
        signatures = list(small_signatures(3, 4))
        for sigma in signatures:
            for tau in signatures:
                if geq_surj(sigma, tau)[0]:
                    self.assertTrue(geq_lex(sigma, tau), msg=f"{sigma.arities} {tau.arities}")
                self.assertTrue(geq_lex(sigma, tau) or geq_lex(tau, sigma))


class TestClassify(unittest.TestCase):
    """Existence verdicts by generator and adversary logic."""

    def test_binary_to_ternary_grid(self):
        sigma, tau = sig(2), sig(3)
        for gen in ("FO", "LFP"):
            for adv in ("FO", "LFP", "LFPparity"):
                self.assertEqual(classify(gen, adv, sigma, tau).verdict, Verdict.NOT_EXISTS)
        self.assertEqual(classify("LFPparity", "FO", sigma, tau).verdict, Verdict.EXISTS)
        self.assertEqual(classify("LFPparity", "LFP", sigma, tau).verdict, Verdict.EXISTS)
        self.assertEqual(classify(Logic.LFP_PARITY, Logic.LFP_PARITY, sigma, tau).verdict, Verdict.IFF_OWF)

    def test_surjective_order_decides_weak_generators(self):
        result = classify("FO", "FO", sig(3, 1, 1), sig(2, 2, 2))
        self.assertEqual(result.verdict, Verdict.EXISTS)
        result = classify("LFP", "FO", sig(3), sig(2, 2, 2))
        self.assertIn("k=1", result.reason)

    def test_unary_sources(self):
        self.assertEqual(classify("LFPparity", "FO", sig(1, 1), sig(1)).verdict, Verdict.EXISTS)
        self.assertEqual(classify("LFPparity", "FO", sig(1), sig(1, 1)).verdict, Verdict.NOT_EXISTS)
        self.assertEqual(classify("LFPparity", "LFP", sig(1, 1, 1), sig(2)).verdict, Verdict.NOT_EXISTS)
        self.assertEqual(classify("LFPparity", "LFPparity", sig(1), sig(2)).verdict, Verdict.NOT_EXISTS)

    def test_lex_order_with_parity(self):
        self.assertEqual(
            classify("LFPparity", "LFPparity", sig(3), sig(*[2] * 10)).verdict, Verdict.EXISTS
        )

    def test_unknown_logic(self):
        with self.assertRaises(ValueError):
            classify("SO", "FO", sig(1), sig(1))


class TestSynthesis(unittest.TestCase):
    """Exactly uniform quantifier-free transductions."""

    def test_worked_example(self):
        theta = build_statistical_transduction(sig(3, 1, 1), sig(2, 2, 2))
        self.assertEqual(
            [str(f) for f in theta.formulas],
            [
                "(or (and (eq x1 x2) (atom R1 x1 x1 x1)) (and (neq x1 x2) (atom R1 x1 x1 x2)))",
                "(or (and (eq x1 x2) (atom R2 x1)) (and (neq x1 x2) (atom R1 x1 x2 x1)))",
                "(or (and (eq x1 x2) (atom R3 x1)) (and (neq x1 x2) (atom R1 x1 x2 x2)))",
            ],
        )

    def test_worked_example_is_a_bijection_at_two(self):
        theta = build_statistical_transduction(sig(3, 1, 1), sig(2, 2, 2))
        report = check_uniformity(theta, 2)
        self.assertEqual(report.inputs, 4096)
        self.assertEqual(report.distinct_hit, 4096)
        self.assertEqual(report.max_count, 1)
        self.assertTrue(report.exactly_uniform)

    def test_identity_routing(self):
        theta = build_statistical_transduction(sig(2), sig(2))
        routes = theta.routing(3)
        self.assertTrue(all(source == target for target, source in routes.items()))
        A = sample_random_structure(sig(2), 7, Prng(1))
        self.assertEqual(apply_qf_transduction(theta, A), A)

    def test_order_violation(self):
        with self.assertRaises(OrderViolationError) as ctx:
            build_statistical_transduction(sig(2), sig(1, 1))
        self.assertEqual(ctx.exception.violating_k, 1)

    def test_exhaustive_uniformity(self):
        signatures = [sig(*a) for count in (1, 2) for a in product((1, 2, 3), repeat=count)]
        checked = 0
        for sigma in signatures:
            for tau in signatures:
                if not geq_surj(sigma, tau)[0]:
                    continue
                theta = build_statistical_transduction(sigma, tau)
                for n in (1, 2):
                    report = check_uniformity(theta, n)
                    self.assertTrue(
                        report.exactly_uniform,
                        msg=f"{sigma.arities} -> {tau.arities} at n={n}: {report.as_metrics()}",
                    )
                    checked += 1
        self.assertGreater(checked, 50)

    def test_routing_is_injective(self):
        theta = build_statistical_transduction(sig(3, 1, 1), sig(2, 2, 2))
        routes = theta.routing(3)
        self.assertEqual(len(routes), 27)
        self.assertEqual(len(set(routes.values())), 27)

    def test_routing_rejects_shared_or_mixed_reads(self):
        unary, binary = sig(1), sig(2)
        mixed = QFTransduction(unary, binary, (And((Atom("R1", (0,)), Atom("R1", (1,)))),))
        with self.assertRaises(PreconditionError):
            mixed.routing(2)
        shared = QFTransduction(unary, sig(1, 1), (Atom("R1", (0,)), Atom("R1", (0,))))
        with self.assertRaises(PreconditionError):
            shared.routing(2)

    def test_non_uniform_transduction(self):
        theta = QFTransduction(sig(1), sig(1), (Or((Atom("R1", (0,)), Const(True))),))
        histogram = transduction_multiplicities(theta, 2)
        self.assertEqual(dict(histogram), {3: 4})
        self.assertFalse(check_uniformity(theta, 2).exactly_uniform)


class TestTransductions(unittest.TestCase):
    """Formula evaluation and validation."""

    def test_identity_and_false(self):
        s = Signature.of(("E", 2), ("U", 1))
        A = sample_random_structure(s, 6, Prng(2))
        self.assertEqual(apply_qf_transduction(QFTransduction.identity(s), A), A)
        blank = QFTransduction(s, s, (Const(False), Const(False)))
        self.assertEqual(apply_qf_transduction(blank, A), RelStructure.empty(s, 6))

    def test_equality_guards(self):
        s = sig(2)
        loops = QFTransduction(s, sig(1), (Atom("R1", (0, 0)),))
        A = RelStructure.from_tuples(s, 3, {"R1": [(1, 1), (0, 2)]})
        self.assertEqual(apply_qf_transduction(loops, A).tuples("R1").tolist(), [[1]])
        flip = QFTransduction(s, s, (And((Neq(0, 1), Atom("R1", (1, 0)))),))
        self.assertEqual(apply_qf_transduction(flip, A).tuples("R1").tolist(), [[2, 0]])
        diagonal = QFTransduction(s, s, (Eq(0, 1),))
        self.assertEqual(apply_qf_transduction(diagonal, A).tuple_counts()["R1"], 3)

    def test_validation(self):
        with self.assertRaises(SignatureMismatchError):
            QFTransduction(sig(1), sig(1, 1), (Atom("R1", (0,)),))
        with self.assertRaises(PreconditionError):
            QFTransduction(sig(1), sig(1), (Atom("R1", (1,)),))
        with self.assertRaises(SignatureMismatchError):
            QFTransduction(sig(1), sig(1), (Atom("Q", (0,)),))
        with self.assertRaises(SignatureMismatchError):
            apply_qf_transduction(QFTransduction.identity(sig(1)), sample_random_structure(sig(2), 3, Prng()))


class TestTypes(unittest.TestCase):
    """(c,k)-types and the distinguisher built on them."""

    def test_type_of_small_structures(self):
        s = Signature.of(("R", 2))
        empty = RelStructure.empty(s, 3)
        self.assertEqual(ck_type_of(empty, [0, 2], 2).entries, frozenset())
        full = RelStructure(s, 3, (np.ones((3, 3), dtype=bool),))
        self.assertEqual(ck_type_of(full, [1], 1).entries, frozenset({(0, (1,), (1, 1))}))
        with self.assertRaises(PreconditionError):
            ck_type_of(full, [1, 1], 1)
        with self.assertRaises(PreconditionError):
            ck_type_of(full, [0, 1], 3)

    def test_type_is_invariant_under_relabeling(self):
        s = Signature.of(("R", 2), ("U", 1))
        A = sample_random_structure(s, 8, Prng(3))
        perm = Prng(4).generator.permutation(8)
        ys = [1, 4, 6]
        moved = [int(perm[y]) for y in ys]
        self.assertEqual(ck_type_of(A, ys, 2), ck_type_of(A.relabel(perm), moved, 2))

    def test_type_count_bound(self):
        self.assertEqual(type_count_bound(sig(1), 3, 2), 3)
        self.assertEqual(type_count_bound(sig(2), 3, 2), 9)
        self.assertEqual(type_count_bound(sig(2, 1), 0, 0), 0)
        self.assertEqual(len(ck_type_entries(sig(2), 3, 2)), 9)

    def test_find_distinguisher_c(self):
        self.assertEqual(find_distinguisher_c(sig(1), sig(2), 2), 2)
        self.assertEqual(find_distinguisher_c(sig(2), sig(1, 1), 1), 1)
        self.assertEqual(find_distinguisher_c(sig(3), sig(2, 2, 2), 1), 1)
        with self.assertRaises(PreconditionError):
            find_distinguisher_c(sig(3, 1, 1), sig(2, 2, 2), 1)

    def test_eval_type_realization(self):
        s = sig(1)
        half = RelStructure.from_tuples(s, 2, {"R1": [(0,)]})
        self.assertEqual(eval_type_realization(half, 1, 1), (True, None))
        full = RelStructure(s, 4, (np.ones(4, dtype=bool),))
        realized, missing = eval_type_realization(full, 1, 1)
        self.assertFalse(realized)
        self.assertEqual(missing.entries, frozenset())

    def test_random_structures_realize_every_type(self):
        realized = sum(
            eval_type_realization(sample_random_structure(sig(2), 60, Prng(seed)), 2, 1)[0]
            for seed in range(100)
        )
        self.assertGreaterEqual(realized, 98)

    def test_transduced_structures_realize_few_types(self):
        sigma, tau = sig(1), sig(2)
        theta = QFTransduction(sigma, tau, (Or((Atom("R1", (0,)), Atom("R1", (1,)))),))
        source_types, image_types = set(), set()
        for A in iter_structures(sigma, 4):
            source_types.update(realized_type_codes(A, 2, 2).tolist())
            image_types.update(realized_type_codes(apply_qf_transduction(theta, A), 2, 2).tolist())
        self.assertLessEqual(len(source_types), 2 ** type_count_bound(sigma, 2, 2))
        self.assertLessEqual(len(image_types), 4)
        self.assertEqual(2 ** len(ck_type_entries(tau, 2, 2)), 16)

    def test_realization_limits(self):
        B = sample_random_structure(sig(3), 4, Prng(5))
        with self.assertRaises(CapacityError):
            realized_type_codes(B, 4, 3)
        with self.assertRaises(PreconditionError):
            realized_type_codes(B, 2, 3)

    def test_distinguishing_advantage(self):
        theta = QFTransduction(sig(1), sig(2), (Atom("R1", (0,)),))
        estimate = estimate_distinguishing_advantage(theta, 2, 2, 30, 10, Prng(6))
        self.assertEqual(estimate.transduced_hits, 0)
        self.assertGreaterEqual(estimate.advantage, 0.9)
        pooled = estimate_distinguishing_advantage(theta, 2, 2, 30, 10, Prng(6), threads=3)
        self.assertEqual(pooled, estimate)


if __name__ == '__main__':
    unittest.main()
