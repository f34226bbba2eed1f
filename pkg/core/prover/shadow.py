# core/prover/shadow.py
"""影子化：把每个最大模态子公式替换为一阶原子

原子名由子公式的 α 规范打印形式决定（自由变量先替换为位置占位符 ?0, ?1, ...），
参数为该子公式的自由变量。α 等价的模态子公式得到同一原子，α 不同的得到不同原子；
等词无法进入原子内部，从而阻断对内涵位置的代换。
"""
from core.kernel.formulas import Atom, Formula, free_vars, is_modal, map_children, substitute
from core.kernel.printer import canonical_key
from core.kernel.terms import Var
from core.prover.clauses import SHADOW_PREFIX


def shadow_atom(f: Formula) -> Atom:
    """单个模态公式对应的影子原子"""
    variables = free_vars(f)
    placeholders = {v: Var(f"?{i}", v.sort) for i, v in enumerate(variables)}
    key = canonical_key(substitute(f, placeholders)) if placeholders else canonical_key(f)
    return Atom(SHADOW_PREFIX + key, tuple(variables))


def shadow(f: Formula) -> Formula:
    """把 f 中每个最大模态子公式替换为影子原子；纯一阶公式原样返回

    Args:
        f: 公式

    Returns:
        Formula: 不含模态算子的一阶公式
    """
    if is_modal(f):
        return shadow_atom(f)
    return map_children(f, shadow)


def is_shadow_atom(f: Formula) -> bool:
    return isinstance(f, Atom) and f.pred.startswith(SHADOW_PREFIX)
