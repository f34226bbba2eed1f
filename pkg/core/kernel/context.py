# core/kernel/context.py
"""模态上下文 Υ：K/B/D 前缀的提取、包裹与投影"""
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Tuple

from core.kernel.formulas import Formula, Modal, ModalOp, alpha_normalize
from core.kernel.printer import print_term
from core.kernel.terms import Term


class ContextOp(str, Enum):
    """可进入 Υ 的算子"""
    K = "K"
    B = "B"
    D = "D"


_CONTEXT_OPS = {
    ModalOp.KNOWS: ContextOp.K,
    ModalOp.BELIEVES: ContextOp.B,
    ModalOp.DESIRES: ContextOp.D,
}
_MODAL_OPS = {v: k for k, v in _CONTEXT_OPS.items()}


@dataclass(frozen=True)
class ContextEntry:
    op: ContextOp
    agent: Term
    time: Term


@dataclass(frozen=True)
class ModalContext:
    """有序的 (算子, 主体, 时刻) 三元组列表；空列表表示外延位置"""
    entries: Tuple[ContextEntry, ...] = field(default_factory=tuple)

    def __add__(self, other: "ModalContext") -> "ModalContext":
        return ModalContext(self.entries + other.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def wrap(self, body: Formula) -> Formula:
        """Υ[body]：由外到内依次套上各层算子"""
        for entry in reversed(self.entries):
            body = Modal(_MODAL_OPS[entry.op], entry.agent, entry.time, body)
        return body

    def __str__(self) -> str:
        parts: List[str] = []
        for entry in self.entries:
            parts.extend((entry.op.value, print_term(entry.agent), print_term(entry.time)))
        return "⟨" + ",".join(parts) + "⟩"


EMPTY_CONTEXT = ModalContext()


def extract_context(f: Formula) -> Tuple[ModalContext, Formula]:
    """剥离最大的 K/B/D 前缀

    Args:
        f: 公式

    Returns:
        Tuple[ModalContext, Formula]: (Υ[f], 剥离后的主体)；遇到其他算子即停止
    """
    entries: List[ContextEntry] = []
    while isinstance(f, Modal) and f.op in _CONTEXT_OPS:
        entries.append(ContextEntry(_CONTEXT_OPS[f.op], f.agent, f.time))
        f = f.body
    return ModalContext(tuple(entries)), f


def _normalized(ctx: ModalContext) -> ModalContext:
    # 主体/时刻项的比较按 α 规范化后的语法相等
    from core.kernel.formulas import Atom

    entries = []
    for entry in ctx.entries:
        normalized = alpha_normalize(Atom("_ctx", (entry.agent, entry.time)))
        entries.append(ContextEntry(entry.op, normalized.args[0], normalized.args[1]))
    return ModalContext(tuple(entries))


def strip_context(f: Formula, ctx: ModalContext):
    """若 f 形如 ctx[body] 则返回 body，否则返回 None"""
    target = _normalized(ctx).entries
    found, _ = extract_context(f)
    prefix = _normalized(ModalContext(found.entries[:len(target)])).entries
    if prefix != target:
        return None
    for _ in target:
        f = f.body
    return f


def project_context(gamma: List[Formula], ctx: ModalContext) -> List[Formula]:
    """Γ 中形如 ctx[ψ] 的成员的 ψ（保持 Γ 的顺序）

    ctx 为空时只取不带 K/B/D 前缀的成员，原样返回。
    """
    if not ctx:
        return [f for f in gamma if not extract_context(f)[0]]
    result = []
    for f in gamma:
        body = strip_context(f, ctx)
        if body is not None:
            result.append(body)
    return result
