"""
Core tests: models, errors, configuration, budget, PRNG and run logging.
"""

import json
import os
import sys
import tempfile
import unittest
from pathlib import Path
from unittest import mock

SRC_PATH = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(SRC_PATH))

import numpy as np
from pydantic import ValidationError

from core.config_manager import BUDGET_ENV_VAR, ConfigManager, ensure_within_budget, resolve_budget
from core.errors import (
    BudgetExceededError,
    ConfigError,
    InfeasibleParametersError,
    ParseError,
    PreconditionError,
    RadoforgeError,
)
from core.logger import ExecutionLogger, RunAnalyzer
from core.models import (
    AtomicType,
    CKType,
    EAReport,
    GraphViolation,
    ParityPattern,
    RadoforgeConfig,
    RunReport,
    Signature,
)
from core.prng import Prng


class TestErrors(unittest.TestCase):
    """Exception hierarchy and messages."""

    def test_parse_error_carries_line(self):
        err = ParseError("bad token", 7)
        self.assertEqual(err.line, 7)
        self.assertTrue(str(err).startswith("line 7:"))
        self.assertIsInstance(err, ValueError)
        self.assertIsInstance(err, RadoforgeError)

    def test_infeasible_reports_minimal_n(self):
        err = InfeasibleParametersError("too small", minimal_n=64)
        self.assertEqual(err.minimal_n, 64)
        self.assertIn("minimal feasible n: 64", str(err))

    def test_budget_error_is_runtime_error(self):
        err = BudgetExceededError("check", 10, 5)
        self.assertIsInstance(err, RuntimeError)
        self.assertEqual((err.required, err.budget), (10, 5))


class TestSignature(unittest.TestCase):
    """Signature parsing and validation."""

    def test_parse_inline(self):
        sig = Signature.parse_inline("R 3; S 1; T 1")
        self.assertEqual(sig.arities, (3, 1, 1))
        self.assertEqual(sig.names, ("R", "S", "T"))
        self.assertEqual(sig.to_inline(), "R 3; S 1; T 1")
        self.assertEqual(Signature.parse_inline(sig.to_inline()), sig)

    def test_parse_inline_rejects_garbage(self):
        with self.assertRaises(ValueError):
            Signature.parse_inline("R")
        with self.assertRaises(ValueError):
            Signature.parse_inline(" ; ")

    def test_arity_and_name_checks(self):
        with self.assertRaises(ValidationError):
            Signature.of(("R", 0))
        with self.assertRaises(ValidationError):
            Signature.of(("R", 9))
        with self.assertRaises(ValidationError):
            Signature.of(("R", 2), ("R", 1))
        with self.assertRaises(ValidationError):
            Signature.of(("1R", 2))

    def test_helpers(self):
        sig = Signature.from_arities([2, 1])
        self.assertEqual(sig.names, ("R1", "R2"))
        self.assertEqual(sig.max_arity, 2)
        self.assertEqual(sig.index_of("R2"), 1)
        self.assertFalse(sig.is_all_unary())
        self.assertTrue(Signature.from_arities([1, 1]).is_all_unary())
        self.assertEqual(len(sig), 2)


class TestModels(unittest.TestCase):
    """Validated report and type models."""

    def test_ea_report_consistency(self):
        EAReport(holds=True, k=1)
        EAReport(holds=False, k=1, violation=GraphViolation(S=(0,), T=()))
        with self.assertRaises(ValidationError):
            EAReport(holds=True, k=1, violation=GraphViolation(S=(0,), T=()))
        with self.assertRaises(ValidationError):
            EAReport(holds=False, k=1)

    def test_atomic_type_validation(self):
        sig = Signature.of(("R", 2))
        AtomicType(k=1, entries=frozenset({(0, (0, 1))})).validate_against(sig)
        with self.assertRaises(ValueError):
            AtomicType(k=1, entries=frozenset({(0, (1, 1))})).validate_against(sig)
        with self.assertRaises(ValueError):
            AtomicType(k=1, entries=frozenset({(0, (0,))})).validate_against(sig)

    def test_ck_type_requires_surjections(self):
        CKType(c=2, k=2, entries=frozenset({(0, (1, 2), (2, 1))}))
        with self.assertRaises(ValidationError):
            CKType(c=2, k=2, entries=frozenset({(0, (1, 2), (1, 1))}))
        with self.assertRaises(ValidationError):
            CKType(c=2, k=1, entries=frozenset({(0, (1, 2), (1, 2))}))

    def test_parity_pattern_members(self):
        p = ParityPattern.of([3, 1], [[3], [3, 1]])
        self.assertEqual(p.base_set, (1, 3))
        self.assertEqual(p.sorted_members(), [(3,), (1, 3)])
        with self.assertRaises(ValidationError):
            ParityPattern.of([1], [[2]])
        with self.assertRaises(ValidationError):
            ParityPattern(base_set=(1,), pattern=frozenset({()}))

    def test_run_report_text(self):
        report = RunReport(
            command="generate random-graph",
            parameters={"n": 5},
            seed=1,
            outcome="generated",
            metrics={"edges": 4},
        )
        text = report.to_text()
        self.assertIn("command: generate random-graph", text)
        self.assertIn("param.n: 5", text)
        self.assertIn("seed: 1", text)
        self.assertIn("metric.edges: 4", text)
        self.assertIn("exit_code: 0", text)
        self.assertEqual(json.loads(report.to_json())["metrics"], {"edges": 4})


class TestConfigManager(unittest.TestCase):
    """radoforge.yaml handling and budget resolution."""

    def setUp(self):
        self.temp_dir = tempfile.TemporaryDirectory()
        self.path = Path(self.temp_dir.name)

    def tearDown(self):
        self.temp_dir.cleanup()

    def test_missing_file_gives_defaults(self):
        config = ConfigManager.load(self.path)
        self.assertEqual(config, RadoforgeConfig())
        self.assertEqual(config.budget, 10 ** 10)
        self.assertEqual(config.universal_backend, "greedy")

    def test_save_and_load(self):
        config = RadoforgeConfig(budget=1000, threads=4, default_seed=9)
        ConfigManager.save(config, self.path)
        self.assertEqual(ConfigManager.load(self.path), config)

    def test_create_default(self):
        ConfigManager.create_default(self.path)
        self.assertTrue((self.path / "radoforge.yaml").exists())

    def test_invalid_yaml(self):
        (self.path / "radoforge.yaml").write_text("budget: [1, 2\n", encoding="utf-8")
        with self.assertRaises(ConfigError):
            ConfigManager.load(self.path)

    def test_invalid_values(self):
        (self.path / "radoforge.yaml").write_text("threads: 0\n", encoding="utf-8")
        with self.assertRaises(ConfigError):
            ConfigManager.load(self.path)
        (self.path / "radoforge.yaml").write_text("universal_backend: magic\n", encoding="utf-8")
        with self.assertRaises(ConfigError):
            ConfigManager.load(self.path)

    def test_env_overrides_budget(self):
        with mock.patch.dict(os.environ, {BUDGET_ENV_VAR: "12345"}):
            self.assertEqual(ConfigManager.effective_budget(RadoforgeConfig()), 12345)
            self.assertEqual(resolve_budget(), 12345)
        with mock.patch.dict(os.environ, {BUDGET_ENV_VAR: "1e6"}):
            self.assertEqual(resolve_budget(), 10 ** 6)
        with mock.patch.dict(os.environ, {BUDGET_ENV_VAR: "lots"}):
            with self.assertRaises(ConfigError):
                resolve_budget()

    def test_ensure_within_budget(self):
        self.assertEqual(ensure_within_budget("x", 10, 10), 10)
        with self.assertRaises(BudgetExceededError):
            ensure_within_budget("x", 11, 10)
        with self.assertRaises(ConfigError):
            resolve_budget(0)


class TestPrng(unittest.TestCase):
    """Seeded streams."""

    def test_same_seed_same_stream(self):
        a = Prng(5).generator.random(8)
        b = Prng(5).generator.random(8)
        np.testing.assert_array_equal(a, b)

    def test_streams_differ(self):
        a = Prng(5).bits(64)
        b = Prng(5).child(0).bits(64)
        c = Prng(5).child(1).bits(64)
        self.assertFalse(np.array_equal(a, b))
        self.assertFalse(np.array_equal(b, c))

    def test_child_is_deterministic(self):
        self.assertEqual(Prng(3).child(7).stream, Prng(3).child(7).stream)

    def test_fresh_rewinds(self):
        rng = Prng(11)
        first = rng.bits(16)
        rng.bits(16)
        np.testing.assert_array_equal(rng.fresh().bits(16), first)

    def test_rejects_negative_seed(self):
        with self.assertRaises(ValueError):
            Prng(-1)


class TestExecutionLogger(unittest.TestCase):
    """JSONL run logging."""

    def setUp(self):
        self.temp_dir = tempfile.TemporaryDirectory()
        self.log_dir = Path(self.temp_dir.name) / "logs"

    def tearDown(self):
        self.temp_dir.cleanup()

    def test_logging(self):
        logger = ExecutionLogger(self.log_dir)
        logger.log(
            command="generate rado-graph",
            operation="generate",
            parameters={"n": 64, "k": 1},
            metrics={"edges": 1000, "duration_ms": 20},
            seed=7,
        )
        logger.log(
            command="check ea",
            operation="check",
            metrics={"duration_ms": 5},
            error="boom",
        )
        stats = logger.get_stats()
        self.assertEqual(stats["total_entries"], 2)
        self.assertEqual(stats["total_time_ms"], 25)
        self.assertEqual(stats["by_command"]["check ea"]["errors"], 1)

        lines = logger.log_file.read_text(encoding="utf-8").splitlines()
        self.assertEqual(json.loads(lines[0])["seed"], 7)
        self.assertEqual(json.loads(lines[1])["status"], "error")

    def test_run_analyzer(self):
        with ExecutionLogger(self.log_dir) as logger:
            logger.log(command="classify", operation="classify")
        runs = RunAnalyzer(self.log_dir).list_runs()
        self.assertEqual(len(runs), 1)
        self.assertEqual(runs[0]["commands"], ["classify"])
        entries = RunAnalyzer(self.log_dir).load_run(runs[0]["run_id"])
        self.assertEqual(entries[0].status, "success")
        self.assertIsNone(entries[0].seed)
        self.assertEqual(RunAnalyzer(Path(self.temp_dir.name) / "none").list_runs(), [])


if __name__ == '__main__':
    unittest.main()
