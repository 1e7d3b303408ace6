"""
Analysis Task Processor

Runs the independent analyses of one graded algebra concurrently. Each analysis
is a blocking callable executed in a daemon worker thread; results are collected
back in submission order so reports do not depend on completion order.
"""

import asyncio
import threading
import uuid
import logging
from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from abgroup import BudgetExceeded

HISTORY_LIMIT = 100


class TaskStatus(Enum):
    """Task execution status"""
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"
    TIMEOUT = "timeout"


@dataclass
class AnalysisTask:
    """One analysis run against an algebra"""
    task_id: str
    name: str
    status: TaskStatus
    created_at: datetime
    started_at: Optional[datetime] = None
    completed_at: Optional[datetime] = None
    result: Any = None
    error: Optional[str] = None
    exception: Optional[BaseException] = None

    @property
    def short_id(self) -> str:
        return self.task_id[:8]

    @property
    def duration(self) -> float:
        if not self.started_at or not self.completed_at:
            return 0.0
        return (self.completed_at - self.started_at).total_seconds()


class AnalysisTaskProcessor:
    """
    Runs analyses in parallel worker threads.

    Features:
    - Bounded concurrency (jobs)
    - Per-analysis timeouts
    - Task tracking with a bounded completed history
    - Error isolation: one failing analysis never cancels the others
    """

    def __init__(self, max_concurrent_tasks: int = 1, default_timeout: float = 600,
                 task_timeouts: Optional[Dict[str, float]] = None,
                 logger: Optional[logging.Logger] = None):
        self.max_concurrent_tasks = max(1, int(max_concurrent_tasks))
        self.default_timeout = default_timeout
        self.task_timeouts = dict(task_timeouts or {})

        self.active_tasks: Dict[str, AnalysisTask] = {}
        self.completed_tasks: Dict[str, AnalysisTask] = {}

        self.total_tasks = 0
        self.successful_tasks = 0
        self.failed_tasks = 0
        self.timed_out_tasks = 0

        self.logger = logger or logging.getLogger("task_processor")
        self.logger.debug(f"🔄 Analysis processor ready ({self.max_concurrent_tasks} jobs)")

    def timeout_for(self, name: str) -> float:
        return self.task_timeouts.get(name, self.default_timeout)

    def _start_worker(self, record: AnalysisTask, handler: Callable[[], Any]) -> asyncio.Future:
        """
        Run handler on a daemon thread and return a future for its outcome.

        A timed-out analysis cannot be interrupted; its thread is abandoned and
        never keeps the event loop or the interpreter alive.
        """
        loop = asyncio.get_running_loop()
        future = loop.create_future()

        def deliver(setter, value):
            if not future.done():
                setter(value)

        def work():
            try:
                outcome = (future.set_result, handler())
            except BaseException as e:
                outcome = (future.set_exception, e)
            try:
                loop.call_soon_threadsafe(deliver, *outcome)
            except RuntimeError:
                # loop already closed
                self.logger.debug(f"Discarding late result of abandoned analysis {record.name}")

        threading.Thread(target=work, name=f"analysis-{record.short_id}", daemon=True).start()
        return future

    async def _process(self, record: AnalysisTask, handler: Callable[[], Any],
                       semaphore: asyncio.Semaphore) -> AnalysisTask:
        async with semaphore:
            record.status = TaskStatus.RUNNING
            record.started_at = datetime.now()
            timeout = self.timeout_for(record.name)
            self.logger.debug(f"🚀 Starting analysis {record.short_id} ({record.name})")

            try:
                record.result = await asyncio.wait_for(self._start_worker(record, handler), timeout=timeout)
                record.status = TaskStatus.COMPLETED
                self.successful_tasks += 1
                record.completed_at = datetime.now()
                self.logger.debug(f"✅ Analysis {record.name} completed in {record.duration:.1f}s")

            except asyncio.TimeoutError:
                record.status = TaskStatus.TIMEOUT
                record.error = f"Analysis timed out after {timeout} seconds"
                record.completed_at = datetime.now()
                self.timed_out_tasks += 1
                self.logger.warning(f"⏰ Analysis {record.name} timed out after {timeout}s")

            except BudgetExceeded as e:
                record.status = TaskStatus.FAILED
                record.error = str(e)
                record.exception = e
                record.completed_at = datetime.now()
                self.failed_tasks += 1
                self.logger.warning(f"📏 Analysis {record.name} exceeded its budget: {e}")

            except Exception as e:
                record.status = TaskStatus.FAILED
                record.error = str(e)
                record.exception = e
                record.completed_at = datetime.now()
                self.failed_tasks += 1
                self.logger.error(f"❌ Analysis {record.name} failed: {e}", exc_info=True)

            finally:
                self._cleanup_task(record)
            return record

    async def run_all(self, analyses: Sequence[Tuple[str, Callable[[], Any]]]) -> List[AnalysisTask]:
        """Run every (name, handler) pair; the returned list follows the input order"""
        semaphore = asyncio.Semaphore(self.max_concurrent_tasks)
        records = []
        for name, _ in analyses:
            record = AnalysisTask(task_id=str(uuid.uuid4()), name=name,
                                  status=TaskStatus.PENDING, created_at=datetime.now())
            self.active_tasks[record.task_id] = record
            self.total_tasks += 1
            records.append(record)

        await asyncio.gather(*(self._process(record, handler, semaphore)
                               for record, (_, handler) in zip(records, analyses)))
        return records

    def run_all_sync(self, analyses: Sequence[Tuple[str, Callable[[], Any]]]) -> List[AnalysisTask]:
        return asyncio.run(self.run_all(analyses))

    def _cleanup_task(self, record: AnalysisTask):
        """Move a finished task to the bounded history"""
        self.completed_tasks[record.task_id] = record
        if len(self.completed_tasks) > HISTORY_LIMIT:
            oldest_id = min(self.completed_tasks, key=lambda k: self.completed_tasks[k].completed_at)
            del self.completed_tasks[oldest_id]
        self.active_tasks.pop(record.task_id, None)

    def get_status(self) -> Dict[str, Any]:
        """Current processor statistics"""
        active_count = len(self.active_tasks)
        return {
            "active_tasks": active_count,
            "pending_tasks": sum(1 for t in self.active_tasks.values() if t.status == TaskStatus.PENDING),
            "running_tasks": sum(1 for t in self.active_tasks.values() if t.status == TaskStatus.RUNNING),
            "max_concurrent_tasks": self.max_concurrent_tasks,
            "total_processed": self.total_tasks,
            "successful": self.successful_tasks,
            "failed": self.failed_tasks,
            "timed_out": self.timed_out_tasks,
            "success_rate": (self.successful_tasks / max(self.total_tasks, 1)) * 100,
        }
