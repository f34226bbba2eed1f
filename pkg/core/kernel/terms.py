# core/kernel/terms.py
"""项：变量、常量、函数应用（不可变，自带排序）"""
from dataclasses import dataclass
from typing import Dict, Iterator, List, Tuple, Union


@dataclass(frozen=True)
class Var:
    """带排序的变量"""
    name: str
    sort: str


@dataclass(frozen=True)
class Const:
    """常量（排序取自签名声明）"""
    name: str
    sort: str


@dataclass(frozen=True)
class App:
    """函数应用"""
    func: str
    args: Tuple["Term", ...]
    sort: str


Term = Union[Var, Const, App]
Substitution = Dict[Var, Term]


def term_vars(term: Term) -> List[Var]:
    """按首次出现顺序返回项中的变量"""
    seen: List[Var] = []
    stack = [term]
    while stack:
        current = stack.pop()
        if isinstance(current, Var):
            if current not in seen:
                seen.append(current)
        elif isinstance(current, App):
            stack.extend(reversed(current.args))
    return seen


def is_ground(term: Term) -> bool:
    if isinstance(term, Var):
        return False
    if isinstance(term, App):
        return all(is_ground(arg) for arg in term.args)
    return True


def substitute_term(term: Term, subst: Substitution) -> Term:
    """对项应用代换（代换值中的变量会继续展开）"""
    if isinstance(term, Var):
        bound = subst.get(term)
        if bound is None or bound == term:
            return term
        return substitute_term(bound, subst)
    if isinstance(term, App):
        return App(term.func, tuple(substitute_term(arg, subst) for arg in term.args), term.sort)
    return term


def occurs(var: Var, term: Term) -> bool:
    if term == var:
        return True
    if isinstance(term, App):
        return any(occurs(var, arg) for arg in term.args)
    return False


def subterms(term: Term, path: Tuple[int, ...] = ()) -> Iterator[Tuple[Tuple[int, ...], Term]]:
    """遍历全部子项及其位置（位置为参数下标路径）"""
    yield path, term
    if isinstance(term, App):
        for index, arg in enumerate(term.args):
            yield from subterms(arg, path + (index,))


def replace_at(term: Term, path: Tuple[int, ...], replacement: Term) -> Term:
    """把 path 处的子项替换为 replacement"""
    if not path:
        return replacement
    assert isinstance(term, App)
    head, rest = path[0], path[1:]
    args = list(term.args)
    args[head] = replace_at(args[head], rest, replacement)
    return App(term.func, tuple(args), term.sort)


def term_size(term: Term) -> int:
    if isinstance(term, App):
        return 1 + sum(term_size(arg) for arg in term.args)
    return 1
