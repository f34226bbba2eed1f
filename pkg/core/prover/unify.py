# core/prover/unify.py
"""带排序的合一与匹配：变量只能绑定排序为其后代的项"""
from typing import Optional, Sequence

from core.kernel.signature import SortedSignature
from core.kernel.terms import App, Substitution, Term, Var, occurs, substitute_term


def _walk(term: Term, subst: Substitution) -> Term:
    while isinstance(term, Var) and term in subst:
        term = subst[term]
    return term


def _bind(var: Var, term: Term, subst: Substitution, signature: SortedSignature) -> Optional[Substitution]:
    if isinstance(term, Var):
        if signature.is_subsort(term.sort, var.sort):
            return {**subst, var: term}
        if signature.is_subsort(var.sort, term.sort):
            return {**subst, term: var}
        return None
    if not signature.is_subsort(term.sort, var.sort):
        return None
    if occurs(var, substitute_term(term, subst)):
        return None
    return {**subst, var: term}


def unify(
    left: Term, right: Term, signature: SortedSignature, subst: Optional[Substitution] = None,
) -> Optional[Substitution]:
    """计算最一般的排序合一子

    Args:
        left: 项
        right: 项
        signature: 提供排序森林
        subst: 已有代换

    Returns:
        Optional[Substitution]: 合一子；不可合一时返回 None
    """
    subst = dict(subst or {})
    stack = [(left, right)]
    while stack:
        a, b = stack.pop()
        a, b = _walk(a, subst), _walk(b, subst)
        if a == b:
            continue
        if isinstance(a, Var):
            subst = _bind(a, b, subst, signature)
        elif isinstance(b, Var):
            subst = _bind(b, a, subst, signature)
        elif isinstance(a, App) and isinstance(b, App):
            if a.func != b.func or len(a.args) != len(b.args):
                return None
            stack.extend(zip(a.args, b.args))
        else:
            return None
        if subst is None:
            return None
    return subst


def unify_args(
    left: Sequence[Term], right: Sequence[Term], signature: SortedSignature,
    subst: Optional[Substitution] = None,
) -> Optional[Substitution]:
    if len(left) != len(right):
        return None
    current = dict(subst or {})
    for a, b in zip(left, right):
        current = unify(a, b, signature, current)
        if current is None:
            return None
    return current


def match(
    pattern: Term, target: Term, signature: SortedSignature, subst: Optional[Substitution] = None,
) -> Optional[Substitution]:
    """单向匹配：只绑定 pattern 中的变量，target 视为常量"""
    subst = dict(subst or {})
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if isinstance(p, Var):
            bound = subst.get(p)
            if bound is None:
                if not signature.is_subsort(t.sort, p.sort):
                    return None
                subst[p] = t
            elif bound != t:
                return None
        elif isinstance(p, App):
            if not isinstance(t, App) or p.func != t.func or len(p.args) != len(t.args):
                return None
            stack.extend(zip(p.args, t.args))
        elif p != t:
            return None
    return subst


def match_args(
    pattern: Sequence[Term], target: Sequence[Term], signature: SortedSignature,
    subst: Optional[Substitution] = None,
) -> Optional[Substitution]:
    if len(pattern) != len(target):
        return None
    current = dict(subst or {})
    for p, t in zip(pattern, target):
        current = match(p, t, signature, current)
        if current is None:
            return None
    return current
