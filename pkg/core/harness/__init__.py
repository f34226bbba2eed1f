# core/harness/__init__.py
"""命令行、基准数据集、基准运行与命题真值表判定器"""
from core.harness.bench import run_benchmark, run_record
from core.harness.dataset import (
    Dataset, DatasetEntry, DatasetError, classify, load_dataset, queries_by_kind, validate_dataset,
)
from core.harness.generators import FormulaGenerator, lift
from core.harness.models import (
    BenchRecord, BenchReport, JobStatus, RecordKind, ValidationIssue, ValidationReport,
)
from core.harness.oracle import (
    FragmentError, OracleVerdict, TruthTable, oracle_consistent, oracle_counterfactual, oracle_entails,
)
from core.harness.report import emit_report, format_summary, parse_report, summary_table
from core.harness.scheduler import BenchJob, BenchScheduler

__all__ = [
    "run_benchmark", "run_record",
    "Dataset", "DatasetEntry", "DatasetError", "classify", "load_dataset", "queries_by_kind", "validate_dataset",
    "FormulaGenerator", "lift",
    "BenchRecord", "BenchReport", "JobStatus", "RecordKind", "ValidationIssue", "ValidationReport",
    "FragmentError", "OracleVerdict", "TruthTable", "oracle_consistent", "oracle_counterfactual", "oracle_entails",
    "emit_report", "format_summary", "parse_report", "summary_table",
    "BenchJob", "BenchScheduler",
]
