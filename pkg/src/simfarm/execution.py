"""Chunked batch execution with early stopping.

``run_batches`` splits a design into row-order chunks, hands each chunk to a
runner, and evaluates a stop criterion on cumulative results after every
chunk.  Runners must return exactly one result row per input row, aligned by
design-row index; failed executions are rows with status ``failed``, never
dropped.  Rows inside a chunk may be computed in parallel by the runner, but
chunk boundaries are strict synchronization points.
"""

from __future__ import annotations

import csv
import subprocess
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .doe import Continuous, Design, Boolean, Integer
from .errors import (
    ConfigurationError,
    ContractViolationError,
    CriterionError,
    InvalidArgumentError,
)
from .tables import (
    RESERVED_INDEX,
    STATUS_FAILED,
    ResultTable,
    format_float,
)

__all__ = [
    "DesignChunk",
    "ExecutionReport",
    "run_batches",
    "mean_convergence_criterion",
    "SubprocessRunner",
    "register_runner",
    "get_runner",
    "runner_names",
]


@dataclass(frozen=True)
class DesignChunk:
    """A contiguous block of design rows with their original row indices."""

    design: Design
    indices: np.ndarray

    @property
    def n(self) -> int:
        return self.design.n

    def column(self, name: str) -> np.ndarray:
        return self.design.column(name)


Runner = Callable[[DesignChunk], ResultTable]
StopCriterion = Callable[[ResultTable, ResultTable], bool]

STOP_CRITERION_MET = "criterion_met"
STOP_DESIGN_EXHAUSTED = "design_exhausted"


@dataclass
class ExecutionReport:
    chunks_executed: int
    rows_executed: int
    stop_reason: str
    stop_chunk: int | None
    chunk_seconds: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "chunks_executed": self.chunks_executed,
            "rows_executed": self.rows_executed,
            "stop_reason": self.stop_reason,
            "stop_chunk": self.stop_chunk,
            "chunk_seconds": self.chunk_seconds,
        }


def _check_contract(result: ResultTable, chunk: DesignChunk) -> None:
    if not isinstance(result, ResultTable):
        raise ContractViolationError(
            f"runner returned {type(result).__name__}, expected ResultTable"
        )
    if result.n_rows != chunk.n:
        raise ContractViolationError(
            f"runner returned {result.n_rows} rows for a {chunk.n}-row chunk"
        )
    if not np.array_equal(result.index, chunk.indices):
        raise ContractViolationError("runner result indices are misaligned with the chunk")


def run_batches(
    design: Design,
    runner: Runner,
    criterion: StopCriterion | None,
    chunk_size: int,
) -> tuple[ResultTable, ExecutionReport]:
    """Run ``design`` through ``runner`` in sequential chunks.

    After each chunk the criterion is called as
    ``criterion(cumulative_after, cumulative_before)``; a true return skips
    the remaining chunks.  ``criterion=None`` always runs to exhaustion.
    """
    if chunk_size < 1:
        raise InvalidArgumentError(f"chunk_size must be >= 1, got {chunk_size}")
    n = design.n
    if n == 0:
        raise InvalidArgumentError("design is empty")

    cumulative = None
    chunk_seconds: list[float] = []
    stop_reason = STOP_DESIGN_EXHAUSTED
    stop_chunk: int | None = None
    n_chunks = (n + chunk_size - 1) // chunk_size

    for c in range(n_chunks):
        lo = c * chunk_size
        hi = min(lo + chunk_size, n)
        positions = np.arange(lo, hi, dtype=np.int64)
        chunk = DesignChunk(design=design.take(positions), indices=positions)
        t0 = time.perf_counter()
        result = runner(chunk)
        chunk_seconds.append(time.perf_counter() - t0)
        _check_contract(result, chunk)
        before = cumulative if cumulative is not None else ResultTable.empty(result.column_names)
        cumulative = ResultTable.concat([before, result]) if before.n_rows else result
        if criterion is not None:
            try:
                should_stop = bool(criterion(cumulative, before))
            except ConfigurationError:
                raise
            except Exception as exc:
                raise CriterionError(
                    f"stop criterion raised after chunk {c + 1}: {exc}"
                ) from exc
            if should_stop:
                stop_reason = STOP_CRITERION_MET
                stop_chunk = c + 1
                break

    report = ExecutionReport(
        chunks_executed=len(chunk_seconds),
        rows_executed=cumulative.n_rows,
        stop_reason=stop_reason,
        stop_chunk=stop_chunk,
        chunk_seconds=chunk_seconds,
    )
    return cumulative, report


def mean_convergence_criterion(metric: str, epsilon: float, floor: float = 1e-9) -> StopCriterion:
    """Stop when the cumulative mean of ``metric`` over ok rows settles.

    Stops iff ``|m_now - m_prev| / max(|m_prev|, floor) < epsilon``.  Returns
    false on the first chunk (empty prior table) and whenever either side has
    no ok rows yet.  Failed rows never contribute to the means.
    """
    if epsilon <= 0:
        raise InvalidArgumentError(f"epsilon must be > 0, got {epsilon}")
    if floor <= 0:
        raise InvalidArgumentError(f"floor must be > 0, got {floor}")

    def criterion(now: ResultTable, prev: ResultTable) -> bool:
        if prev.n_rows == 0:
            return False
        if metric not in now.columns:
            raise ConfigurationError(
                f"convergence metric column {metric!r} not present in results"
            )
        ok_now = now.column(metric)[now.ok_mask()]
        ok_prev = prev.column(metric)[prev.ok_mask()]
        if ok_now.size == 0 or ok_prev.size == 0:
            return False
        m_now = float(np.mean(ok_now))
        m_prev = float(np.mean(ok_prev))
        return abs(m_now - m_prev) / max(abs(m_prev), floor) < epsilon

    return criterion


class SubprocessRunner:
    """Run chunks through an external command: ``cmd <in.csv> <out.csv>``.

    The chunk is written as a Design CSV prefixed with the reserved
    ``_index`` column; the command must write a ResultTable CSV (``_index``,
    ``_status``, output columns) to the second path.  A nonzero exit marks
    every chunk row as failed.
    """

    def __init__(self, command: Sequence[str], timeout: float | None = None):
        if not command:
            raise InvalidArgumentError("runner command must be non-empty")
        self.command = [str(c) for c in command]
        self.timeout = timeout

    def _write_chunk(self, chunk: DesignChunk, path: Path) -> None:
        design = chunk.design
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow([RESERVED_INDEX, *(f.name for f in design.factors)])
            for i in range(design.n):
                row = [str(int(chunk.indices[i]))]
                for f in design.factors:
                    v = design.columns[f.name][i]
                    if isinstance(f.kind, Continuous):
                        row.append(format_float(v))
                    elif isinstance(f.kind, Integer):
                        row.append(str(int(v)))
                    elif isinstance(f.kind, Boolean):
                        row.append("true" if v else "false")
                    else:
                        row.append(str(v))
                writer.writerow(row)

    def __call__(self, chunk: DesignChunk) -> ResultTable:
        with tempfile.TemporaryDirectory(prefix="simfarm-chunk-") as tmp:
            in_path = Path(tmp) / "in.csv"
            out_path = Path(tmp) / "out.csv"
            self._write_chunk(chunk, in_path)
            proc = subprocess.run(
                [*self.command, str(in_path), str(out_path)],
                capture_output=True,
                timeout=self.timeout,
            )
            if proc.returncode != 0 or not out_path.exists():
                return ResultTable(
                    index=chunk.indices,
                    status=np.array([STATUS_FAILED] * chunk.n, dtype=object),
                    columns={},
                )
            return ResultTable.from_csv(out_path)


# -- built-in runner registry -------------------------------------------------

_RUNNERS: dict[str, Callable[..., Runner]] = {}


def register_runner(name: str, factory: Callable[..., Runner]) -> None:
    _RUNNERS[name] = factory


def get_runner(name: str, **options) -> Runner:
    if name not in _RUNNERS:
        raise ConfigurationError(
            f"unknown runner {name!r}; available: {sorted(_RUNNERS)}"
        )
    return _RUNNERS[name](**options)


def runner_names() -> list[str]:
    return sorted(_RUNNERS)
