# core/kernel/formulas.py
"""带排序量化模态逻辑的公式 AST

一阶核心（事件演算）+ 模态算子 P/K/B/D/I、C、S、O + 反事实条件 ↪。
所有节点不可变，可在并发证明任务间共享。
"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, List, Optional, Set, Tuple, Union

from core.kernel.terms import App, Const, Substitution, Term, Var, substitute_term, term_vars


class ModalOp(str, Enum):
    """单主体模态算子"""
    PERCEIVES = "P"
    KNOWS = "K"
    BELIEVES = "B"
    DESIRES = "D"
    INTENDS = "I"


@dataclass(frozen=True)
class Atom:
    """原子公式；零元原子 true/false 表示 ⊤/⊥"""
    pred: str
    args: Tuple[Term, ...] = ()


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    parts: Tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    parts: Tuple["Formula", ...]


@dataclass(frozen=True)
class Implies:
    ante: "Formula"
    cons: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class Modal:
    """P/K/B/D/I(agent, time, body)"""
    op: ModalOp
    agent: Term
    time: Term
    body: "Formula"


@dataclass(frozen=True)
class Common:
    """公共知识 C(time, body)"""
    time: Term
    body: "Formula"


@dataclass(frozen=True)
class Says:
    """S(speaker, [addressee], time, body)"""
    speaker: Term
    addressee: Optional[Term]
    time: Term
    body: "Formula"


@dataclass(frozen=True)
class Ought:
    """二元道义算子 O(agent, time, condition, (¬)happens(action(a*, α), t'))"""
    agent: Term
    time: Term
    condition: "Formula"
    action: "Formula"


@dataclass(frozen=True)
class Counterfactual:
    """反事实条件 antecedent ↪ consequent"""
    antecedent: "Formula"
    consequent: "Formula"


Formula = Union[
    Atom, Eq, Not, And, Or, Implies, Iff, Forall, Exists,
    Modal, Common, Says, Ought, Counterfactual,
]

TRUE = Atom("true")
FALSE = Atom("false")

MODAL_TYPES = (Modal, Common, Says, Ought, Counterfactual)


# ==================== 构造辅助 ====================

def conj(*parts: Formula) -> Formula:
    """合取；零项为 ⊤，单项原样返回"""
    if not parts:
        return TRUE
    if len(parts) == 1:
        return parts[0]
    return And(tuple(parts))


def believes(agent: Term, time: Term, body: Formula) -> Modal:
    return Modal(ModalOp.BELIEVES, agent, time, body)


def desires(agent: Term, time: Term, body: Formula) -> Modal:
    return Modal(ModalOp.DESIRES, agent, time, body)


def happens_action(agent: Term, action_type: Term, time: Term) -> Atom:
    """happens(action(agent, α), time)"""
    return Atom("happens", (App("action", (agent, action_type), "Action"), time))


# ==================== 结构遍历 ====================

def is_modal(f: Formula) -> bool:
    """顶层连接词是否为内涵算子（含 ↪）"""
    return isinstance(f, MODAL_TYPES)


def formula_terms(f: Formula) -> Tuple[Term, ...]:
    """公式节点直接携带的项（不含子公式中的项）"""
    if isinstance(f, Atom):
        return f.args
    if isinstance(f, Eq):
        return (f.left, f.right)
    if isinstance(f, Modal):
        return (f.agent, f.time)
    if isinstance(f, Common):
        return (f.time,)
    if isinstance(f, Says):
        if f.addressee is None:
            return (f.speaker, f.time)
        return (f.speaker, f.addressee, f.time)
    if isinstance(f, Ought):
        return (f.agent, f.time)
    return ()


def children(f: Formula) -> Tuple[Formula, ...]:
    """直接子公式"""
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, (And, Or)):
        return f.parts
    if isinstance(f, Implies):
        return (f.ante, f.cons)
    if isinstance(f, Iff):
        return (f.left, f.right)
    if isinstance(f, (Forall, Exists, Modal, Common, Says)):
        return (f.body,)
    if isinstance(f, Ought):
        return (f.condition, f.action)
    if isinstance(f, Counterfactual):
        return (f.antecedent, f.consequent)
    return ()


def map_children(f: Formula, fn: Callable[[Formula], Formula]) -> Formula:
    """对直接子公式应用 fn 并重建节点"""
    if isinstance(f, Not):
        return Not(fn(f.body))
    if isinstance(f, And):
        return And(tuple(fn(p) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(fn(p) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(fn(f.ante), fn(f.cons))
    if isinstance(f, Iff):
        return Iff(fn(f.left), fn(f.right))
    if isinstance(f, Forall):
        return Forall(f.var, fn(f.body))
    if isinstance(f, Exists):
        return Exists(f.var, fn(f.body))
    if isinstance(f, Modal):
        return Modal(f.op, f.agent, f.time, fn(f.body))
    if isinstance(f, Common):
        return Common(f.time, fn(f.body))
    if isinstance(f, Says):
        return Says(f.speaker, f.addressee, f.time, fn(f.body))
    if isinstance(f, Ought):
        return Ought(f.agent, f.time, fn(f.condition), fn(f.action))
    if isinstance(f, Counterfactual):
        return Counterfactual(fn(f.antecedent), fn(f.consequent))
    return f


def map_terms(f: Formula, fn: Callable[[Term], Term]) -> Formula:
    """对节点直接携带的项应用 fn（不进入子公式）"""
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(fn(t) for t in f.args))
    if isinstance(f, Eq):
        return Eq(fn(f.left), fn(f.right))
    if isinstance(f, Modal):
        return Modal(f.op, fn(f.agent), fn(f.time), f.body)
    if isinstance(f, Common):
        return Common(fn(f.time), f.body)
    if isinstance(f, Says):
        addressee = fn(f.addressee) if f.addressee is not None else None
        return Says(fn(f.speaker), addressee, fn(f.time), f.body)
    if isinstance(f, Ought):
        return Ought(fn(f.agent), fn(f.time), f.condition, f.action)
    return f


def subformulas(f: Formula) -> Iterator[Formula]:
    """先序遍历全部子公式（含自身）"""
    yield f
    for child in children(f):
        yield from subformulas(child)


def free_vars(f: Formula) -> List[Var]:
    """自由变量，按首次出现顺序"""
    result: List[Var] = []

    def visit(node: Formula, bound: Set[Var]) -> None:
        for term in formula_terms(node):
            for var in term_vars(term):
                if var not in bound and var not in result:
                    result.append(var)
        if isinstance(node, (Forall, Exists)):
            visit(node.body, bound | {node.var})
            return
        for child in children(node):
            visit(child, bound)

    visit(f, set())
    return result


def _bound_names(f: Formula) -> Set[str]:
    return {node.var.name for node in subformulas(f) if isinstance(node, (Forall, Exists))}


def _all_var_names(f: Formula) -> Set[str]:
    names = _bound_names(f)
    for node in subformulas(f):
        for term in formula_terms(node):
            names.update(v.name for v in term_vars(term))
    return names


def substitute(f: Formula, subst: Substitution) -> Formula:
    """避免捕获的代换：约束变量与代换值冲突时改名"""
    if not subst:
        return f
    range_names: Set[str] = set()
    for value in subst.values():
        range_names.update(v.name for v in term_vars(value))

    def walk(node: Formula, active: Substitution) -> Formula:
        if not active:
            return node
        if isinstance(node, (Forall, Exists)):
            inner = {k: v for k, v in active.items() if k != node.var}
            var = node.var
            body = node.body
            if var.name in range_names:
                used = range_names | _all_var_names(body) | {k.name for k in inner}
                fresh_name = var.name
                while fresh_name in used:
                    fresh_name += "'"
                fresh = Var(fresh_name, var.sort)
                body = walk(body, {var: fresh})
                var = fresh
            return type(node)(var, walk(body, inner))
        rebuilt = map_terms(node, lambda t: substitute_term(t, active))
        return map_children(rebuilt, lambda child: walk(child, active))

    return walk(f, dict(subst))


def alpha_normalize(f: Formula) -> Formula:
    """把约束变量按绑定顺序统一改名为 _0, _1, ...（确定性）"""
    counter = [0]

    def walk(node: Formula, renaming: Substitution) -> Formula:
        if isinstance(node, (Forall, Exists)):
            fresh = Var(f"_{counter[0]}", node.var.sort)
            counter[0] += 1
            inner = dict(renaming)
            inner[node.var] = fresh
            return type(node)(fresh, walk(node.body, inner))
        rebuilt = map_terms(node, lambda t: _rename_term(t, renaming))
        return map_children(rebuilt, lambda child: walk(child, renaming))

    return walk(f, {})


def _rename_term(term: Term, renaming: Substitution) -> Term:
    if isinstance(term, Var):
        return renaming.get(term, term)
    if isinstance(term, App):
        return App(term.func, tuple(_rename_term(a, renaming) for a in term.args), term.sort)
    return term


def alpha_equal(a: Formula, b: Formula) -> bool:
    return alpha_normalize(a) == alpha_normalize(b)


def is_propositional(f: Formula) -> bool:
    """仅含零元原子与真值连接词"""
    for node in subformulas(f):
        if isinstance(node, Atom):
            if node.args:
                return False
        elif not isinstance(node, (Not, And, Or, Implies, Iff)):
            return False
    return True


def ground_terms(f: Formula) -> List[Term]:
    """公式中出现的全部基项（含子项），按首次出现顺序"""
    result: List[Term] = []

    def add(term: Term) -> None:
        if isinstance(term, Var):
            return
        if isinstance(term, App):
            for arg in term.args:
                add(arg)
            if any(isinstance(v, Var) for v in term_vars(term)):
                return
        if term not in result:
            result.append(term)

    for node in subformulas(f):
        for term in formula_terms(node):
            add(term)
    return result


def is_happens_literal(f: Formula) -> bool:
    """是否为 (¬)happens(action(a*, α), t')"""
    if isinstance(f, Not):
        f = f.body
    return (
        isinstance(f, Atom)
        and f.pred == "happens"
        and len(f.args) == 2
        and isinstance(f.args[0], App)
        and f.args[0].func == "action"
    )


__all__ = [
    "ModalOp", "Atom", "Eq", "Not", "And", "Or", "Implies", "Iff", "Forall", "Exists",
    "Modal", "Common", "Says", "Ought", "Counterfactual", "Formula", "TRUE", "FALSE",
    "Const", "App", "Var",
    "conj", "believes", "desires", "happens_action",
    "is_modal", "formula_terms", "children", "map_children", "map_terms", "subformulas",
    "free_vars", "substitute", "alpha_normalize", "alpha_equal",
    "is_propositional", "ground_terms", "is_happens_literal",
]
