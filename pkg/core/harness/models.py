# core/harness/models.py
"""基准测试与数据集校验的数据模型"""
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class RecordKind(str, Enum):
    """每个问题的三类条件句"""
    CF = "cf"                            # φ ↪ ψ，期望 Proved
    MATERIAL_ABSURD = "material-absurd"  # φ → ⊥，期望 Proved（Γ ⊢ ¬φ）
    CF_ABSURD = "cf-absurd"              # φ ↪ ⊥，期望 NotProvedWithinBudget


class JobStatus(Enum):
    """基准任务状态"""
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


class BenchRecord(BaseModel):
    """单条 (问题, 条件句类型) 的运行结果"""
    problem: str = Field(description="问题名")
    kind: RecordKind = Field(description="条件句类型")
    status: str = Field(description="Proved / NotProvedWithinBudget")
    expected: Optional[str] = Field(default=None, description="清单中的期望状态")
    elapsed_ms: float = Field(ge=0, description="耗时（毫秒）")
    subsets_examined: int = Field(default=0, ge=0)
    subsets_pruned: int = Field(default=0, ge=0)
    consistency_calls: int = Field(default=0, ge=0)
    entailment_calls: int = Field(default=0, ge=0)
    witness: Optional[List[str]] = Field(default=None, description="见证子集 Γ′（打印形式）")

    @property
    def as_expected(self) -> bool:
        return self.expected is None or self.status == self.expected


class BenchReport(BaseModel):
    """一次基准运行的完整报告（可 JSON 往返）"""
    dataset: str
    seed: int
    settings: Dict[str, Any] = Field(default_factory=dict)
    records: List[BenchRecord] = Field(default_factory=list)

    @property
    def all_as_expected(self) -> bool:
        return all(r.as_expected for r in self.records)


class ValidationIssue(BaseModel):
    """数据集校验发现的一条违例"""
    problem: Optional[str] = None
    message: str


class ValidationReport(BaseModel):
    """数据集校验报告；违例只收集不抛出"""
    dataset: str
    problems: int = 0
    issues: List[ValidationIssue] = Field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.issues

    def add(self, message: str, problem: Optional[str] = None) -> None:
        self.issues.append(ValidationIssue(problem=problem, message=message))
