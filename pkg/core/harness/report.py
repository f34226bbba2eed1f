# core/harness/report.py
"""基准报告：按条件句类型汇总的定宽表格 + JSON 文档"""
from typing import List, Sequence

import pandas as pd

from core.harness.models import BenchRecord, BenchReport, RecordKind

SUMMARY_COLUMNS = ["Formula-kind", "Mean", "Min", "Max"]

_KIND_LABELS = {
    RecordKind.CF: "φ ↪ ψ",
    RecordKind.MATERIAL_ABSURD: "φ → ⊥",
    RecordKind.CF_ABSURD: "φ ↪ ⊥",
}


def records_frame(records: Sequence[BenchRecord]) -> pd.DataFrame:
    """每条记录一行（耗时换算为秒）"""
    rows = [
        {
            "problem": r.problem,
            "kind": r.kind.value,
            "status": r.status,
            "expected": r.expected,
            "seconds": r.elapsed_ms / 1000.0,
            "subsets_examined": r.subsets_examined,
            "entailment_calls": r.entailment_calls,
        }
        for r in records
    ]
    return pd.DataFrame(rows, columns=[
        "problem", "kind", "status", "expected", "seconds", "subsets_examined", "entailment_calls",
    ])


def summary_table(records: Sequence[BenchRecord]) -> pd.DataFrame:
    """每类条件句的 Mean / Min / Max 耗时（秒），行序固定为 cf、material-absurd、cf-absurd

    Args:
        records: 基准记录

    Returns:
        pd.DataFrame: 列为 Formula-kind / Mean / Min / Max；没有记录的类型不出现
    """
    frame = records_frame(records)
    if frame.empty:
        return pd.DataFrame(columns=SUMMARY_COLUMNS)
    grouped = frame.groupby("kind")["seconds"].agg(["mean", "min", "max"])
    rows = []
    for kind in RecordKind:
        if kind.value not in grouped.index:
            continue
        stats = grouped.loc[kind.value]
        rows.append({
            "Formula-kind": _KIND_LABELS[kind],
            "Mean": float(stats["mean"]),
            "Min": float(stats["min"]),
            "Max": float(stats["max"]),
        })
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


def format_summary(records: Sequence[BenchRecord]) -> str:
    """定宽文本表格"""
    table = summary_table(records)
    return table.to_string(index=False, float_format=lambda v: f"{v:10.3f}", col_space=12, justify="right")


def unexpected(records: Sequence[BenchRecord]) -> List[BenchRecord]:
    return [r for r in records if not r.as_expected]


# ==================== JSON ====================

def emit_report(report: BenchReport, indent: int = 2) -> str:
    return report.model_dump_json(indent=indent)


def parse_report(text: str) -> BenchReport:
    """emit_report 的逆操作

    Raises:
        pydantic.ValidationError: 文档不符合 BenchReport 模型
    """
    return BenchReport.model_validate_json(text)
