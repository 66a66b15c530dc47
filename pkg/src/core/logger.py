"""
JSONL run log.

Every CLI invocation that has a log directory appends one LogEntry to
`<log_dir>/<run_id>.jsonl`. Entries are pydantic models, so the analyzer
reads back exactly what the logger wrote.
"""

import json
import uuid
from collections import defaultdict
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError


def new_run_id() -> str:
    return f"{datetime.now().strftime('%Y%m%d_%H%M%S')}_{uuid.uuid4().hex[:8]}"


class LogEntry(BaseModel):
    """One logged command."""
    timestamp: str = Field(default_factory=lambda: datetime.now().isoformat())
    run_id: str
    command: str
    operation: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    metrics: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    status: str = "success"
    error: Optional[str] = None

    @property
    def duration_ms(self) -> float:
        return self.metrics.get("duration_ms", 0)


class ExecutionLogger:
    """
    Buffered JSONL writer for one run.

    Use as a context manager so the buffer is flushed on exit.
    """

    buffer_size = 10

    def __init__(self, log_dir: Path):
        self.log_dir = Path(log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)
        self.run_id = new_run_id()
        self.log_file = self.log_dir / f"{self.run_id}.jsonl"
        self.buffer: List[LogEntry] = []

    def log(
        self,
        command: str,
        operation: str,
        parameters: Optional[Dict[str, Any]] = None,
        metrics: Optional[Dict[str, Any]] = None,
        error: Optional[str] = None,
        seed: Optional[int] = None,
    ) -> LogEntry:
        """
        Record one command.

        Args:
            command: Full CLI command ("generate rado-graph", "check ea", ...)
            operation: Top-level subcommand
            parameters: Parsed flags
            metrics: Report metrics, including `duration_ms`
            error: Error message when the command failed
            seed: Seed of a randomized run
        """
        entry = LogEntry(
            run_id=self.run_id,
            command=command,
            operation=operation,
            parameters=parameters or {},
            metrics=metrics or {},
            seed=seed,
            status="error" if error else "success",
            error=error or None,
        )
        self.buffer.append(entry)
        if len(self.buffer) >= self.buffer_size:
            self.flush()
        return entry

    def flush(self):
        if not self.buffer:
            return
        with open(self.log_file, 'a', encoding='utf-8') as f:
            for entry in self.buffer:
                f.write(entry.model_dump_json(exclude_none=True) + '\n')
        self.buffer = []

    def close(self):
        self.flush()

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()

    def get_stats(self) -> Dict[str, Any]:
        """Calls, errors and wall time of this run, grouped by command."""
        self.flush()
        entries = read_entries(self.log_file)
        if not entries:
            return {}
        by_command: Dict[str, Dict[str, float]] = defaultdict(lambda: {"calls": 0, "errors": 0, "time_ms": 0})
        for entry in entries:
            group = by_command[entry.command]
            group["calls"] += 1
            group["errors"] += entry.status == "error"
            group["time_ms"] += entry.duration_ms
        return {
            "run_id": self.run_id,
            "total_entries": len(entries),
            "total_time_ms": sum(g["time_ms"] for g in by_command.values()),
            "by_command": dict(by_command),
        }


class RunAnalyzer:
    """Summaries of the runs stored in a log directory."""

    def __init__(self, log_dir: Path):
        self.log_dir = Path(log_dir)

    def load_run(self, run_id: str) -> List[LogEntry]:
        return read_entries(self.log_dir / f"{run_id}.jsonl")

    def list_runs(self) -> List[Dict[str, Any]]:
        """One summary per run file, newest first."""
        if not self.log_dir.is_dir():
            return []
        runs = []
        for log_file in self.log_dir.glob("*.jsonl"):
            entries = read_entries(log_file)
            if not entries:
                continue
            runs.append({
                "run_id": entries[0].run_id,
                "timestamp": entries[0].timestamp,
                "commands": [e.command for e in entries],
                "errors": sum(e.status == "error" for e in entries),
                "file": str(log_file),
            })
        return sorted(runs, key=lambda run: run["timestamp"], reverse=True)


def read_entries(log_file: Path) -> List[LogEntry]:
    """Parse a run file, skipping lines that are not valid entries."""
    if not log_file.exists():
        return []
    entries = []
    for line in log_file.read_text(encoding='utf-8').splitlines():
        try:
            entries.append(LogEntry.model_validate(json.loads(line)))
        except (json.JSONDecodeError, ValidationError):
            continue
    return entries
