"""
Tests for AnalysisTaskProcessor
"""

import threading
import time

import pytest

from abgroup import BudgetExceeded
from task_processor import AnalysisTaskProcessor, TaskStatus


def _value(v):
    return lambda: v


def _fail(message):
    def handler():
        raise RuntimeError(message)
    return handler


class TestAnalysisTaskProcessor:
    """Concurrent analyses with ordered results"""

    def setup_method(self):
        self.processor = AnalysisTaskProcessor(max_concurrent_tasks=2, default_timeout=5)

    @pytest.mark.asyncio
    async def test_results_follow_input_order(self):
        def slow():
            time.sleep(0.05)
            return "slow"

        tasks = await self.processor.run_all([("first", slow), ("second", _value("fast"))])
        assert [t.name for t in tasks] == ["first", "second"]
        assert [t.result for t in tasks] == ["slow", "fast"]
        assert all(t.status is TaskStatus.COMPLETED for t in tasks)

    @pytest.mark.asyncio
    async def test_failure_is_isolated(self):
        tasks = await self.processor.run_all([
            ("centroid", _fail("degenerate")), ("killing", _value(42)),
        ])
        assert tasks[0].status is TaskStatus.FAILED
        assert tasks[0].error == "degenerate"
        assert isinstance(tasks[0].exception, RuntimeError)
        assert tasks[1].status is TaskStatus.COMPLETED
        assert tasks[1].result == 42

    @pytest.mark.asyncio
    async def test_budget_exceeded_is_kept(self):
        def search():
            raise BudgetExceeded("too many nodes")

        tasks = await self.processor.run_all([("reduce", search)])
        assert tasks[0].status is TaskStatus.FAILED
        assert isinstance(tasks[0].exception, BudgetExceeded)
        assert self.processor.failed_tasks == 1

    @pytest.mark.asyncio
    async def test_per_task_timeout(self):
        processor = AnalysisTaskProcessor(max_concurrent_tasks=1, default_timeout=5,
                                          task_timeouts={'identities': 0.05})

        def stuck():
            time.sleep(0.3)
            return "late"

        tasks = await processor.run_all([("identities", stuck)])
        assert tasks[0].status is TaskStatus.TIMEOUT
        assert "timed out" in tasks[0].error
        assert processor.timed_out_tasks == 1
        assert processor.timeout_for('centroid') == 5

    @pytest.mark.asyncio
    async def test_concurrency_bound(self):
        running = 0
        peak = 0
        lock = threading.Lock()

        def handler():
            nonlocal running, peak
            with lock:
                running += 1
                peak = max(peak, running)
            time.sleep(0.05)
            with lock:
                running -= 1
            return True

        await self.processor.run_all([(f"task{i}", handler) for i in range(6)])
        assert peak <= 2

    @pytest.mark.asyncio
    async def test_status_and_history(self):
        await self.processor.run_all([("a", _value(1)), ("b", _fail("x")), ("c", _value(3))])
        status = self.processor.get_status()
        assert status["active_tasks"] == 0
        assert status["total_processed"] == 3
        assert status["successful"] == 2
        assert status["failed"] == 1
        assert status["max_concurrent_tasks"] == 2
        assert len(self.processor.completed_tasks) == 3

    def test_run_all_sync(self):
        tasks = self.processor.run_all_sync([("centroid", _value(1))])
        assert tasks[0].result == 1
        assert tasks[0].duration >= 0
        assert len(tasks[0].short_id) == 8

    def test_concurrency_is_at_least_one(self):
        assert AnalysisTaskProcessor(max_concurrent_tasks=0).max_concurrent_tasks == 1


class TestAnalysisTimeouts:
    """A timed-out analysis releases the caller without waiting for its thread"""

    def test_sync_run_returns_at_the_timeout(self):
        release = threading.Event()
        processor = AnalysisTaskProcessor(default_timeout=0.2)
        started = time.monotonic()
        try:
            tasks = processor.run_all_sync([("slow", lambda: release.wait(5))])
            elapsed = time.monotonic() - started
        finally:
            release.set()
        assert tasks[0].status is TaskStatus.TIMEOUT
        assert elapsed < 1.0

    @pytest.mark.asyncio
    async def test_other_analyses_finish_after_a_timeout(self):
        release = threading.Event()
        processor = AnalysisTaskProcessor(max_concurrent_tasks=2, default_timeout=0.1)
        try:
            tasks = await processor.run_all([("stuck", lambda: release.wait(5)), ("quick", _value(7))])
        finally:
            release.set()
        assert [t.status for t in tasks] == [TaskStatus.TIMEOUT, TaskStatus.COMPLETED]
        assert tasks[1].result == 7
        assert processor.get_status()["timed_out"] == 1

    def test_late_result_is_discarded(self):
        release = threading.Event()
        finished = threading.Event()

        def late():
            release.wait(5)
            finished.set()
            return "late"

        processor = AnalysisTaskProcessor(default_timeout=0.05)
        tasks = processor.run_all_sync([("late", late)])
        release.set()
        assert finished.wait(2)
        assert tasks[0].status is TaskStatus.TIMEOUT
        assert tasks[0].result is None
