# core/counterfactual/models.py
"""反事实判定的配置与结果模型"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, Field

import config
from core.kernel.context import EMPTY_CONTEXT, ModalContext
from core.kernel.formulas import Formula
from core.kernel.printer import print_formula
from core.prover.models import ConsistencyVerdict, ProofOutcome, ProofStatus


class SubsetOrder(str, Enum):
    """子集枚举顺序"""
    SMALL_FIRST = "small-first"
    LARGE_FIRST = "large-first"


class CfConfig(BaseModel):
    """子集搜索配置"""
    delta_ms: int = Field(default=config.CONSISTENCY_DELTA_MS, gt=0, description="一致性查询时限 δ（毫秒）")
    entailment_ms: int = Field(default=config.CF_ENTAILMENT_MS, gt=0, description="单次蕴涵查询时限（毫秒）")
    order: SubsetOrder = Field(default=SubsetOrder(config.CF_ORDER), description="子集枚举顺序")
    overall_cap_ms: int = Field(default=config.CF_OVERALL_CAP_MS, gt=0, description="整个搜索的墙钟上限（毫秒）")
    max_subset_size: Optional[int] = Field(
        default=config.CF_MAX_SUBSET_SIZE, ge=0, description="子集基数上限；None 表示不限",
    )
    depth: int = Field(default=config.PROVER_DEPTH, ge=0, description="每次证明调用的模式饱和深度")

    model_config = {"frozen": True}


class WitnessKind(str, Enum):
    INCONSISTENT_ANTECEDENT = "inconsistent-antecedent"
    SUBSET = "subset"


@dataclass
class Witness:
    """Proved 结果的见证

    inconsistent-antecedent：consistency 为 {φ} 的 Inconsistent 判定（附反驳）；
    subset：Γ′ 及其在（投影后的）Γ 中的下标，consistency / entailment 为两次子证明。
    """
    kind: WitnessKind
    subset: Tuple[Formula, ...] = ()
    indices: Tuple[int, ...] = ()
    consistency: Optional[ConsistencyVerdict] = None
    entailment: Optional[ProofOutcome] = None

    @property
    def approximation_used(self) -> bool:
        """I2 是否依赖 δ 近似（PresumedConsistent 而非确定的饱和）"""
        if self.kind is not WitnessKind.SUBSET or self.consistency is None:
            return False
        return not self.consistency.exhausted

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind.value}
        if self.kind is WitnessKind.SUBSET:
            data["subset"] = [print_formula(f) for f in self.subset]
            data["indices"] = list(self.indices)
            data["approximation_used"] = self.approximation_used
        if self.consistency is not None:
            data["consistency"] = self.consistency.to_dict()
        if self.entailment is not None:
            data["entailment"] = self.entailment.to_dict()
        return data


@dataclass
class CfCounters:
    """子集搜索计数器"""
    subsets_examined: int = 0
    subsets_pruned: int = 0
    entailment_calls: int = 0
    consistency_calls: int = 0

    def to_dict(self) -> Dict[str, int]:
        return {
            "subsets_examined": self.subsets_examined,
            "subsets_pruned": self.subsets_pruned,
            "entailment_calls": self.entailment_calls,
            "consistency_calls": self.consistency_calls,
        }


@dataclass
class CfResult:
    """一次反事实查询的结果

    exhausted 为 True 表示所有子集都已确定地排除（未触及总时限，且每次失败的蕴涵查询都是饱和结束）。
    """
    status: ProofStatus
    antecedent: Formula
    consequent: Formula
    context: ModalContext = EMPTY_CONTEXT
    witness: Optional[Witness] = None
    counters: CfCounters = field(default_factory=CfCounters)
    elapsed_ms: float = 0.0
    exhausted: bool = False

    @property
    def proved(self) -> bool:
        return self.status is ProofStatus.PROVED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "context": str(self.context),
            "antecedent": print_formula(self.antecedent),
            "consequent": print_formula(self.consequent),
            "witness": self.witness.to_dict() if self.witness else None,
            "counters": self.counters.to_dict(),
            "elapsed_ms": round(self.elapsed_ms, 3),
            "exhausted": self.exhausted,
        }
