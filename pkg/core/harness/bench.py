# core/harness/bench.py
"""基准运行：每个问题的三类条件句各一条记录"""
import asyncio
from functools import partial
from typing import List, Optional

from tqdm import tqdm

import config
from core.counterfactual.engine import prove_counterfactual
from core.counterfactual.models import CfConfig
from core.harness.dataset import DatasetEntry, load_dataset, queries_by_kind
from core.harness.models import BenchRecord, BenchReport, JobStatus, RecordKind
from core.harness.scheduler import BenchJob, BenchScheduler
from core.kernel.models import Query
from core.kernel.printer import print_formula
from core.prover.models import Budget
from core.prover.prover import prove
from util.log import get_logger

logger = get_logger("Bench")

MONITOR_SLACK_S = 5.0  # 监控超时在引擎自身时限之外的余量（秒）
_KIND_ORDER = {kind: i for i, kind in enumerate(RecordKind)}


def run_record(
    entry: DatasetEntry,
    kind: RecordKind,
    query: Query,
    cfg: CfConfig,
    budget: Budget,
) -> BenchRecord:
    """同步执行一条记录"""
    problem = entry.problem
    expected = entry.expected.get(kind)
    if kind is RecordKind.MATERIAL_ABSURD:
        outcome = prove(problem.assumptions, query.goal, budget, problem.signature)
        return BenchRecord(
            problem=entry.name, kind=kind, status=outcome.status.value,
            expected=expected, elapsed_ms=outcome.elapsed_ms,
        )
    result = prove_counterfactual(problem.assumptions, query.antecedent, query.consequent, cfg, problem.signature)
    witness = None
    if result.witness is not None:
        witness = [print_formula(f) for f in result.witness.subset]
    counters = result.counters
    return BenchRecord(
        problem=entry.name,
        kind=kind,
        status=result.status.value,
        expected=expected,
        elapsed_ms=result.elapsed_ms,
        subsets_examined=counters.subsets_examined,
        subsets_pruned=counters.subsets_pruned,
        consistency_calls=counters.consistency_calls,
        entailment_calls=counters.entailment_calls,
        witness=witness,
    )


def _monitor_timeout(kind: RecordKind, cfg: CfConfig, budget: Budget) -> float:
    limit_ms = budget.timeout_ms if kind is RecordKind.MATERIAL_ABSURD else cfg.overall_cap_ms
    return limit_ms / 1000.0 + MONITOR_SLACK_S


def run_benchmark(
    dataset_dir: str = config.DATASET_DIR,
    cfg: Optional[CfConfig] = None,
    budget: Optional[Budget] = None,
    workers: int = config.BENCH_WORKERS,
    progress: bool = False,
) -> BenchReport:
    """运行整个数据集

    Args:
        dataset_dir: 数据集目录
        cfg: 反事实查询的子集搜索配置
        budget: material-absurd 查询的证明预算
        workers: 并发问题数；1 为确定性模式（同一输入得到同样的状态与见证）
        progress: 是否在 stderr 显示 tqdm 进度条

    Returns:
        BenchReport: 按 (问题, 类型) 排序的记录

    Raises:
        DatasetError: 数据集无法读取
    """
    cfg = cfg or CfConfig()
    budget = budget or Budget()
    dataset = load_dataset(dataset_dir)
    jobs: List[BenchJob] = []
    for entry in dataset.entries:
        for kind, query in sorted(queries_by_kind(entry.problem).items(), key=lambda kv: _KIND_ORDER[kv[0]]):
            jobs.append(BenchJob(
                problem=entry.name,
                kind=kind,
                run=partial(run_record, entry, kind, query, cfg, budget),
                timeout=_monitor_timeout(kind, cfg, budget),
                expected=entry.expected.get(kind),
            ))
    logger.info(f"running {len(jobs)} records from {dataset_dir} with {workers} worker(s)")

    bar = tqdm(total=len(jobs), desc="bench", unit="query", disable=not progress)
    scheduler = BenchScheduler(max_concurrent_jobs=workers)
    try:
        asyncio.run(scheduler.run_all(jobs, on_done=lambda _job: bar.update(1)))
    finally:
        bar.close()

    records = []
    for job in jobs:
        if job.status is JobStatus.FAILED or job.result is None:
            logger.error(f"{job.problem}/{job.kind.value} produced no record: {job.error}")
            continue
        records.append(job.result)
    records.sort(key=lambda r: (r.problem, _KIND_ORDER[r.kind]))
    return BenchReport(
        dataset=dataset_dir,
        seed=config.RANDOM_SEED,
        settings={
            "cf": cfg.model_dump(mode="json"),
            "budget": budget.model_dump(mode="json"),
            "workers": workers,
        },
        records=records,
    )
