# core/harness/scheduler.py
"""基准任务调度器：并发上限 + 单任务超时监控"""
import asyncio
import threading
import time
import uuid
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Dict, List, Optional

from core.harness.models import BenchRecord, JobStatus, RecordKind
from core.prover.models import ProofStatus, stoppable
from util.log import get_logger

logger = get_logger("Scheduler")


@dataclass
class BenchJob:
    """一条 (问题, 条件句类型) 的运行任务

    run 是同步函数（证明器是纯 CPU 计算），由调度器放进线程执行；
    其中创建的 Deadline 会响应调度器的停止信号。
    """
    problem: str
    kind: RecordKind
    run: Callable[[], BenchRecord]
    timeout: Optional[float] = None  # 秒；None 表示不设监控超时
    expected: Optional[str] = None
    job_id: str = field(default_factory=lambda: str(uuid.uuid4()))
    status: JobStatus = JobStatus.PENDING
    result: Optional[BenchRecord] = None
    error: Optional[str] = None

    def timed_out_record(self, elapsed_ms: float) -> BenchRecord:
        return BenchRecord(
            problem=self.problem,
            kind=self.kind,
            status=ProofStatus.NOT_PROVED.value,
            expected=self.expected,
            elapsed_ms=elapsed_ms,
        )


def _run_stoppable(run: Callable[[], BenchRecord], stop: threading.Event) -> BenchRecord:
    with stoppable(stop):
        return run()


async def _drain(worker: asyncio.Future) -> None:
    """等待已收到停止信号的工作线程结束（结果与异常都丢弃）"""
    try:
        await worker
    except Exception as e:
        logger.debug(f"stopped worker ended with {type(e).__name__}: {e}")


class BenchScheduler:
    """基准调度器 - 管理并发上限，每个任务在 asyncio.wait_for 监控下执行"""

    def __init__(self, max_concurrent_jobs: int = 1):
        """初始化调度器

        Args:
            max_concurrent_jobs: 最大并发任务数（1 为确定性模式）
        """
        if max_concurrent_jobs < 1:
            raise ValueError("max_concurrent_jobs must be at least 1")
        self.max_concurrent_jobs = max_concurrent_jobs
        self._running_jobs: Dict[str, asyncio.Task] = {}
        logger.debug(f"Initialized with max_concurrent_jobs={max_concurrent_jobs}")

    def can_schedule(self) -> bool:
        return len(self._running_jobs) < self.max_concurrent_jobs

    async def schedule(self, job: BenchJob) -> bool:
        """调度任务执行

        Returns:
            bool: 是否成功调度（达到并发上限时返回 False）
        """
        if not self.can_schedule():
            logger.debug(
                f"Cannot schedule job {job.job_id[:8]}: concurrent limit reached "
                f"({len(self._running_jobs)}/{self.max_concurrent_jobs})"
            )
            return False
        job.status = JobStatus.RUNNING
        logger.debug(f"Scheduling job {job.job_id[:8]} ({job.problem}, {job.kind.value})")
        task = asyncio.create_task(self._execute_with_monitoring(job))
        task.add_done_callback(partial(self._release, job))
        self._running_jobs[job.job_id] = task
        return True

    def _release(self, job: BenchJob, _task: asyncio.Task) -> None:
        # 启动前就被取消的任务不会进入协程体
        self._running_jobs.pop(job.job_id, None)
        if job.status is JobStatus.RUNNING:
            job.status = JobStatus.FAILED
            job.error = "cancelled"

    async def _execute_with_monitoring(self, job: BenchJob) -> None:
        """执行任务并监控超时；超时记为 NotProvedWithinBudget

        超时或取消时置位停止信号，并等工作线程在下一次截止检查时退出后再释放并发名额。
        """
        start = time.monotonic()
        stop = threading.Event()
        worker = asyncio.ensure_future(asyncio.to_thread(_run_stoppable, job.run, stop))
        try:
            job.result = await asyncio.wait_for(asyncio.shield(worker), timeout=job.timeout)
            job.status = JobStatus.COMPLETED
            logger.debug(f"Job {job.job_id[:8]} completed in {time.monotonic() - start:.2f}s")
        except asyncio.TimeoutError:
            elapsed_ms = (time.monotonic() - start) * 1000.0
            logger.info(f"Job {job.problem}/{job.kind.value} timed out after {job.timeout}s")
            stop.set()
            await _drain(worker)
            job.result = job.timed_out_record(elapsed_ms)
            job.status = JobStatus.COMPLETED
        except asyncio.CancelledError:
            logger.info(f"Job {job.job_id[:8]} was cancelled")
            stop.set()
            await _drain(worker)
            job.status = JobStatus.FAILED
            job.error = "cancelled"
        except Exception as e:
            logger.error(f"Job {job.problem}/{job.kind.value} failed with error: {e}")
            job.status = JobStatus.FAILED
            job.error = str(e)

    async def cancel_job(self, job_id: str) -> bool:
        async_task = self._running_jobs.get(job_id)
        if async_task:
            async_task.cancel()
            logger.info(f"Cancelled running job {job_id[:8]}")
            return True
        return False

    def get_running_count(self) -> int:
        return len(self._running_jobs)

    async def run_all(self, jobs: List[BenchJob], on_done: Optional[Callable[[BenchJob], None]] = None) -> List[BenchJob]:
        """按给定顺序调度全部任务并等待结束

        Args:
            jobs: 任务列表
            on_done: 每个任务结束后的回调（进度条用）

        Returns:
            List[BenchJob]: 与输入同序的任务
        """
        pending = list(jobs)
        watched: Dict[str, BenchJob] = {}
        while pending or self._running_jobs:
            while pending and self.can_schedule():
                job = pending.pop(0)
                await self.schedule(job)
                watched[job.job_id] = job
            if self._running_jobs:
                await asyncio.wait(list(self._running_jobs.values()), return_when=asyncio.FIRST_COMPLETED)
            for job_id in [jid for jid in watched if jid not in self._running_jobs]:
                done = watched.pop(job_id)
                if on_done is not None:
                    on_done(done)
        return jobs
