import stat
import sys
import textwrap

import numpy as np
import pytest

from simfarm.doe import Continuous, FactorSpec, lhs_design
from simfarm.errors import (
    ConfigurationError,
    ContractViolationError,
    CriterionError,
    InvalidArgumentError,
)
from simfarm.execution import (
    DesignChunk,
    SubprocessRunner,
    mean_convergence_criterion,
    run_batches,
)
from simfarm.tables import ResultTable

FACTORS = [FactorSpec("x", Continuous(0.0, 1.0))]


def echo_runner(chunk: DesignChunk) -> ResultTable:
    return ResultTable(
        index=chunk.indices,
        status=np.array(["ok"] * chunk.n, dtype=object),
        columns={"x_out": chunk.column("x").astype(float)},
    )


def scripted_criterion(stop_after_chunk: int, chunk_size: int):
    def criterion(now: ResultTable, prev: ResultTable) -> bool:
        return now.n_rows >= stop_after_chunk * chunk_size

    return criterion


class TestRunBatches:
    def test_scripted_stop_after_two_chunks(self):
        design = lhs_design(FACTORS, 1000, seed=1)
        results, report = run_batches(design, echo_runner, scripted_criterion(2, 100), 100)
        assert report.rows_executed == 200
        assert report.chunks_executed == 2
        assert report.stop_reason == "criterion_met"
        assert report.stop_chunk == 2
        assert results.n_rows == 200

    def test_never_stopping_exhausts_design(self):
        design = lhs_design(FACTORS, 1000, seed=1)
        results, report = run_batches(design, echo_runner, lambda now, prev: False, 100)
        assert report.rows_executed == 1000
        assert report.stop_reason == "design_exhausted"
        assert report.stop_chunk is None
        assert results.n_rows == 1000

    def test_echo_runner_alignment(self):
        design = lhs_design(FACTORS, 250, seed=3)
        results, report = run_batches(design, echo_runner, None, 100)
        assert np.array_equal(results.index, np.arange(250))
        assert np.array_equal(results.column("x_out"), design.column("x"))
        assert report.chunks_executed == 3  # 100 + 100 + 50

    def test_chunk_accounting_short_final_chunk(self):
        design = lhs_design(FACTORS, 250, seed=3)
        _, report = run_batches(design, echo_runner, None, 100)
        assert report.rows_executed == 250
        assert len(report.chunk_seconds) == report.chunks_executed

    def test_prefix_property(self):
        design = lhs_design(FACTORS, 500, seed=5)
        full, _ = run_batches(design, echo_runner, None, 100)
        stopped, report = run_batches(design, echo_runner, scripted_criterion(2, 100), 100)
        assert report.rows_executed == 200
        assert np.array_equal(stopped.column("x_out"), full.column("x_out")[:200])
        assert np.array_equal(stopped.index, full.index[:200])

    def test_determinism_modulo_timings(self):
        design = lhs_design(FACTORS, 300, seed=9)
        r1, rep1 = run_batches(design, echo_runner, scripted_criterion(2, 100), 100)
        r2, rep2 = run_batches(design, echo_runner, scripted_criterion(2, 100), 100)
        assert np.array_equal(r1.column("x_out"), r2.column("x_out"))
        d1, d2 = rep1.to_dict(), rep2.to_dict()
        d1.pop("chunk_seconds"), d2.pop("chunk_seconds")
        assert d1 == d2

    def test_chunk_size_zero_rejected(self):
        design = lhs_design(FACTORS, 10, seed=0)
        with pytest.raises(InvalidArgumentError):
            run_batches(design, echo_runner, None, 0)

    def test_wrong_row_count_aborts(self):
        def bad(chunk):
            good = echo_runner(chunk)
            return good.take(np.arange(chunk.n - 1))

        design = lhs_design(FACTORS, 20, seed=0)
        with pytest.raises(ContractViolationError):
            run_batches(design, bad, None, 10)

    def test_misaligned_indices_abort(self):
        def bad(chunk):
            good = echo_runner(chunk)
            return ResultTable(
                index=good.index + 1000,
                status=good.status,
                columns=dict(good.columns),
            )

        design = lhs_design(FACTORS, 20, seed=0)
        with pytest.raises(ContractViolationError):
            run_batches(design, bad, None, 10)

    def test_raising_criterion_aborts_with_diagnostic(self):
        def exploding(now, prev):
            raise RuntimeError("boom")

        design = lhs_design(FACTORS, 20, seed=0)
        with pytest.raises(CriterionError, match="boom"):
            run_batches(design, echo_runner, exploding, 10)

    def test_failed_rows_do_not_abort(self):
        def partial(chunk):
            status = np.array(
                ["failed" if i % 2 else "ok" for i in range(chunk.n)], dtype=object
            )
            return ResultTable(
                index=chunk.indices,
                status=status,
                columns={"x_out": chunk.column("x").astype(float)},
            )

        design = lhs_design(FACTORS, 30, seed=0)
        results, report = run_batches(design, partial, None, 10)
        assert report.rows_executed == 30
        assert results.ok_mask().sum() == 15


class TestMeanConvergence:
    def run(self, criterion, now_values, prev_values):
        def table(values):
            n = len(values)
            return ResultTable(
                index=np.arange(n),
                status=np.array(["ok"] * n, dtype=object),
                columns={"m": np.asarray(values, dtype=float)},
            )

        return criterion(table(now_values), table(prev_values))

    def test_small_relative_change_stops(self):
        crit = mean_convergence_criterion("m", epsilon=0.01)
        # m_prev = 10.00, m_now = 10.04: relative change 0.004 < 0.01
        assert self.run(crit, [10.04] * 10, [10.0] * 5) is True

    def test_floor_guards_zero_mean(self):
        crit = mean_convergence_criterion("m", epsilon=0.01, floor=1e-9)
        assert self.run(crit, [0.1] * 10, [0.0] * 5) is False

    def test_first_chunk_is_false(self):
        crit = mean_convergence_criterion("m", epsilon=0.5)
        now = ResultTable(
            index=np.arange(3),
            status=np.array(["ok"] * 3, dtype=object),
            columns={"m": np.array([1.0, 1.0, 1.0])},
        )
        assert crit(now, ResultTable.empty(["m"])) is False

    def test_failed_rows_excluded_from_mean(self):
        crit = mean_convergence_criterion("m", epsilon=0.01)
        prev = ResultTable(
            index=np.arange(4),
            status=np.array(["ok", "ok", "failed", "failed"], dtype=object),
            columns={"m": np.array([10.0, 10.0, 999.0, 999.0])},
        )
        now = ResultTable(
            index=np.arange(8),
            status=np.array(["ok"] * 2 + ["failed"] * 2 + ["ok"] * 4, dtype=object),
            columns={"m": np.array([10.0, 10.0, 999.0, 999.0, 10.0, 10.0, 10.0, 10.0])},
        )
        assert crit(now, prev) is True  # failed 999s never pollute the means

    def test_missing_metric_is_configuration_error(self):
        crit = mean_convergence_criterion("absent", epsilon=0.01)
        design = lhs_design(FACTORS, 20, seed=0)
        with pytest.raises(ConfigurationError, match="absent"):
            run_batches(design, echo_runner, crit, 10)

    def test_bad_parameters_rejected(self):
        with pytest.raises(InvalidArgumentError):
            mean_convergence_criterion("m", epsilon=0.0)
        with pytest.raises(InvalidArgumentError):
            mean_convergence_criterion("m", epsilon=0.1, floor=0.0)


class TestSubprocessRunner:
    @pytest.fixture()
    def doubler_cmd(self, tmp_path):
        script = tmp_path / "doubler.py"
        script.write_text(
            textwrap.dedent(
                """
                import csv, sys

                with open(sys.argv[1]) as fh:
                    rows = list(csv.reader(fh))
                header, body = rows[0], rows[1:]
                xi = header.index("x")
                with open(sys.argv[2], "w", newline="") as fh:
                    w = csv.writer(fh, lineterminator="\\n")
                    w.writerow(["_index", "_status", "doubled"])
                    for row in body:
                        w.writerow([row[0], "ok", float(row[xi]) * 2])
                """
            )
        )
        return [sys.executable, str(script)]

    def test_roundtrip_through_subprocess(self, doubler_cmd):
        design = lhs_design(FACTORS, 25, seed=4)
        results, report = run_batches(design, SubprocessRunner(doubler_cmd), None, 10)
        assert report.rows_executed == 25
        assert np.allclose(results.column("doubled"), design.column("x") * 2)

    def test_nonzero_exit_marks_chunk_failed(self, tmp_path):
        script = tmp_path / "crash.py"
        script.write_text("import sys; sys.exit(3)\n")
        design = lhs_design(FACTORS, 10, seed=4)
        results, report = run_batches(
            design, SubprocessRunner([sys.executable, str(script)]), None, 5
        )
        assert report.rows_executed == 10
        assert not results.ok_mask().any()
