# core/kernel/models.py
"""问题文件的数据模型"""
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Tuple

from core.kernel.context import EMPTY_CONTEXT, ModalContext
from core.kernel.formulas import Formula
from core.kernel.signature import SortedSignature
from core.kernel.sexpr import SExpr


class QueryKind(Enum):
    """查询类型枚举"""
    ENTAIL = "entail"  # Γ ⊢ φ
    CF = "cf"          # Γ ⊢ φ ↪ ψ
    CF_IN = "cf-in"    # Γ ⊢ Υ[φ ↪ ψ]


@dataclass(frozen=True)
class Query:
    """单条查询：entail 携带一个公式，cf / cf-in 携带前件与后件"""
    kind: QueryKind
    formulas: Tuple[Formula, ...]
    context: ModalContext = EMPTY_CONTEXT

    @property
    def goal(self) -> Formula:
        return self.formulas[0]

    @property
    def antecedent(self) -> Formula:
        return self.formulas[0]

    @property
    def consequent(self) -> Formula:
        return self.formulas[1]


@dataclass
class Problem:
    """命名的假设集 Γ 与查询列表

    extensions 保存除标准块外的扩展块（目前只有 dde），以原始 S 表达式形式存放，
    由 ethics 层解释。
    """
    name: str
    signature: SortedSignature
    assumptions: List[Formula] = field(default_factory=list)
    queries: List[Query] = field(default_factory=list)
    extensions: List[SExpr] = field(default_factory=list)

    def queries_of(self, kind: QueryKind) -> List[Query]:
        return [q for q in self.queries if q.kind is kind]

    def extension(self, head: str):
        """按表头取扩展块；不存在时返回 None"""
        for ext in self.extensions:
            if ext.head == head:
                return ext
        return None
