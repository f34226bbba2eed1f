# core/prover/models.py
"""证明器数据模型：预算、证明结果、一致性判定"""
import threading
import time
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Tuple

from pydantic import BaseModel, Field

import config
from core.kernel.formulas import Formula
from core.kernel.printer import print_formula
from core.kernel.terms import Term


class ProverInputError(ValueError):
    """输入排序不合法，搜索开始前即拒绝"""


class Budget(BaseModel):
    """证明预算"""
    timeout_ms: int = Field(default=config.PROVER_TIMEOUT_MS, gt=0, description="墙钟时限（毫秒）")
    depth: int = Field(default=config.PROVER_DEPTH, ge=0, description="模式饱和迭代深度")
    max_clauses: Optional[int] = Field(
        default=config.PROVER_MAX_CLAUSES, gt=0, description="归结生成子句数上限",
    )

    model_config = {"frozen": True}

    def nested(self, remaining_ms: float) -> "Budget":
        """内层证明（R_K / R_B / R_14）的预算：深度减一，时限减半"""
        return self.model_copy(update={
            "timeout_ms": max(1, int(remaining_ms / 2)),
            "depth": max(0, self.depth - 1),
        })


_STOP: ContextVar[Optional[threading.Event]] = ContextVar("prover_stop", default=None)


@contextmanager
def stoppable(stop: threading.Event) -> Iterator[threading.Event]:
    """在此上下文中创建的 Deadline 会在 stop 置位时立即到期

    基准调度器在任务超时或被取消时置位 stop。
    """
    token = _STOP.set(stop)
    try:
        yield stop
    finally:
        _STOP.reset(token)


class Deadline:
    """单调时钟截止时间（可被外部停止信号提前结束）"""

    def __init__(self, timeout_ms: float, parent: Optional["Deadline"] = None):
        self.start = time.monotonic()
        end = self.start + timeout_ms / 1000.0
        if parent is not None:
            end = min(end, parent.end)
        self.end = end
        self._stop = parent._stop if parent is not None else _STOP.get()

    def stopped(self) -> bool:
        return self._stop is not None and self._stop.is_set()

    def expired(self) -> bool:
        return self.stopped() or time.monotonic() >= self.end

    def remaining_ms(self) -> float:
        if self.stopped():
            return 0.0
        return max(0.0, (self.end - time.monotonic()) * 1000.0)

    def elapsed_ms(self) -> float:
        return (time.monotonic() - self.start) * 1000.0


class ProofStatus(Enum):
    """证明状态"""
    PROVED = "Proved"
    NOT_PROVED = "NotProvedWithinBudget"


class ConsistencyStatus(Enum):
    """一致性判定（PresumedConsistent 是 δ 时限内的近似）"""
    INCONSISTENT = "Inconsistent"
    PRESUMED_CONSISTENT = "PresumedConsistent"


@dataclass(frozen=True)
class JustificationStep:
    """一次模式应用

    rule 取值：R_K、R_B、R_4、R_13、R_14、R_cf2、R_cf4、C_elim、forall_inst
    """
    rule: str
    premises: Tuple[Formula, ...]
    conclusion: Formula
    time_facts: Tuple[Formula, ...] = ()  # 时序条件所依赖的 prior 事实
    sub_outcomes: Tuple["ProofOutcome", ...] = ()  # R_K / R_B / R_14 的内层证明
    term: Optional[Term] = None  # forall_inst 的实例项 / C_elim 的主体

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "rule": self.rule,
            "premises": [print_formula(p) for p in self.premises],
            "conclusion": print_formula(self.conclusion),
        }
        if self.time_facts:
            data["time_facts"] = [print_formula(p) for p in self.time_facts]
        if self.sub_outcomes:
            data["sub_proofs"] = [sub.to_dict() for sub in self.sub_outcomes]
        return data


@dataclass(frozen=True)
class RefutationStep:
    """归结反驳轨迹中的一条子句

    rule 取值：input、resolve、factor、eq_resolve、paramodulate
    """
    index: int
    clause: Tuple[Any, ...]  # Tuple[Literal, ...]
    rule: str
    parents: Tuple[int, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "clause": " | ".join(str(lit) for lit in self.clause) or "□",
            "rule": self.rule,
            "parents": list(self.parents),
        }


@dataclass
class ProofOutcome:
    """一次证明调用的结果

    exhausted 为 True 表示搜索在未超时、未触及任何上限的情况下结束，
    此时 NotProvedWithinBudget 是确定的失败（子集搜索据此剪枝）。
    """
    status: ProofStatus
    goal: Formula
    gamma: Tuple[Formula, ...] = ()
    justification: List[JustificationStep] = field(default_factory=list)
    refutation: List[RefutationStep] = field(default_factory=list)
    refutation_inputs: Tuple[Formula, ...] = ()  # 送入归结的影子化公式（含否定目标）
    elapsed_ms: float = 0.0
    exhausted: bool = False
    clauses_generated: int = 0

    @property
    def proved(self) -> bool:
        return self.status is ProofStatus.PROVED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "goal": print_formula(self.goal),
            "elapsed_ms": round(self.elapsed_ms, 3),
            "exhausted": self.exhausted,
            "clauses_generated": self.clauses_generated,
            "justification": [step.to_dict() for step in self.justification],
            "refutation": [step.to_dict() for step in self.refutation],
        }


@dataclass
class ConsistencyVerdict:
    """一致性判定结果；Inconsistent 必然附带 Φ ⊢ ⊥ 的反驳"""
    value: ConsistencyStatus
    elapsed_ms: float
    delta_ms: int
    refutation: Optional[ProofOutcome] = None
    exhausted: bool = False

    @property
    def inconsistent(self) -> bool:
        return self.value is ConsistencyStatus.INCONSISTENT

    @property
    def approximate(self) -> bool:
        return self.value is ConsistencyStatus.PRESUMED_CONSISTENT

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value.value,
            "approximation": self.approximate,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "delta_ms": self.delta_ms,
        }
