# core/ethics/dilemma.py
"""两难问题知识库：从带 (dde ...) 扩展块的问题文件读取

扩展块格式：
    (dde (agent I) (now t) (next t1) (situation s0) (dde-action alphaD)
         (mu <fluent-term> <rational>)* (premise <formula>)*)
premise 条目是外部给出的附加前提（例如 "α_D 满足双重效应原则前四条" 这类结论）。
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional

from core.kernel.context import extract_context
from core.kernel.errors import KernelError
from core.kernel.formulas import Atom, Common, Formula, alpha_equal
from core.kernel.models import Problem
from core.kernel.parser import load_problem, parse_problem, read_formula, read_term
from core.kernel.printer import print_term
from core.kernel.sexpr import SExpr, SList, Symbol
from core.kernel.signature import SortedSignature
from core.kernel.terms import App, Const, Term
from core.ethics.situations import SituationTheory, holds_in, sanctioning_axiom, situation_signature
from util.log import get_logger

logger = get_logger("Dilemma")

_ROLES = {
    "agent": "Agent",
    "now": "Moment",
    "next": "Moment",
    "situation": "Situation",
    "dde-action": "ActionType",
}


class DilemmaError(Exception):
    """两难知识库不完整：缺少 dde 块、μ 值或 α_D 未声明"""


@dataclass
class DilemmaKB:
    """两难问题知识库

    Args:
        name: 问题名
        signature: 签名（含情境符号）
        assumptions: 背景前提 Γ_d（含公共知识前提）
        agent: 主体常量 I
        now: 当前时刻 t
        next: 后继时刻 t+1
        situation: 当前情境 σ
        dde_action: 满足双重效应原则的行动类型 α_D（可缺省，C5b 需要）
        theory: 情境理论（μ 表与许可公理）
    """
    name: str
    signature: SortedSignature
    assumptions: List[Formula]
    agent: Term
    now: Term
    next: Term
    situation: Term
    dde_action: Optional[Term] = None
    theory: SituationTheory = field(default_factory=SituationTheory)

    def current_situation(self) -> Formula:
        """holds(in(I, σ), t)：Γ_d 应能推出的当前情境"""
        return holds_in(self.agent, self.situation, self.now)

    def require_dde_action(self) -> Term:
        if self.dde_action is None:
            raise DilemmaError("dilemma declares no dde-action")
        return self.dde_action

    def with_premises(self, *premises: Formula) -> "DilemmaKB":
        """附加外部前提后的新知识库"""
        return replace(self, assumptions=[*self.assumptions, *premises])

    def without_believed_common_knowledge(self) -> "DilemmaKB":
        """去掉主体所信的公共知识前提（消融实验）"""
        kept = []
        for f in self.assumptions:
            ctx, body = extract_context(f)
            if ctx and isinstance(body, Common):
                continue
            kept.append(f)
        return replace(self, assumptions=kept)


def _entry_value(entry: SList, signature: SortedSignature, role: str) -> Term:
    if len(entry) != 2:
        raise DilemmaError(f"'{role}' entry expects exactly one term")
    try:
        term = read_term(entry.items[1], signature)
    except KernelError as e:
        raise DilemmaError(f"'{role}' names an undeclared symbol: {e}") from e
    expected = _ROLES[role]
    if not signature.is_subsort(term.sort, expected):
        raise DilemmaError(f"'{role}' must be of sort {expected}, got {term.sort}")
    return term


def _declared_fluents(signature: SortedSignature) -> List[Term]:
    fluents: List[Term] = [
        Const(name, signature.constants[name]) for name in signature.constants_of_sort("Fluent")
    ]
    for func in signature.functions.values():
        if func.arity == 0 and signature.is_subsort(func.result_sort, "Fluent"):
            fluents.append(App(func.name, (), func.result_sort))
    return fluents


def _read_mu(entry: SList, signature: SortedSignature) -> tuple:
    if len(entry) != 3 or not isinstance(entry.items[2], Symbol):
        raise DilemmaError("mu entries have the form (mu <fluent-term> <rational>)")
    try:
        fluent = read_term(entry.items[1], signature)
    except KernelError as e:
        raise DilemmaError(f"mu names an unknown fluent: {e}") from e
    if not signature.is_subsort(fluent.sort, "Fluent"):
        raise DilemmaError(f"mu is defined on fluents, got {print_term(fluent)} of sort {fluent.sort}")
    try:
        value = Fraction(entry.items[2].text)
    except (ValueError, ZeroDivisionError) as e:
        raise DilemmaError(f"invalid utility for {print_term(fluent)}: {entry.items[2].text}") from e
    return fluent, value


def dilemma_from_problem(problem: Problem) -> DilemmaKB:
    """解释问题的 dde 扩展块

    Raises:
        DilemmaError: 缺少 dde 块 / 必需条目、μ 不完整、许可公理或 prior(now, next) 不在 Γ 中
    """
    block: Optional[SExpr] = problem.extension("dde")
    if block is None:
        raise DilemmaError(f"problem '{problem.name}' has no dde block")
    signature = problem.signature
    roles: Dict[str, Term] = {}
    mu: Dict[Term, Fraction] = {}
    premises: List[Formula] = []
    for entry in block.items[1:]:
        if not isinstance(entry, SList) or not entry.head:
            raise DilemmaError("dde entries must be lists")
        head = entry.head
        if head in _ROLES:
            if head in roles:
                raise DilemmaError(f"duplicate '{head}' entry")
            roles[head] = _entry_value(entry, signature, head)
        elif head == "mu":
            fluent, value = _read_mu(entry, signature)
            if fluent in mu:
                raise DilemmaError(f"duplicate mu value for {print_term(fluent)}")
            mu[fluent] = value
        elif head == "premise":
            if len(entry) != 2:
                raise DilemmaError("premise entries hold exactly one formula")
            premises.append(read_formula(entry.items[1], signature))
        else:
            raise DilemmaError(f"unknown dde entry '{head}'")

    for role in ("agent", "now", "next", "situation"):
        if role not in roles:
            raise DilemmaError(f"dde block lacks the '{role}' entry")

    declared = _declared_fluents(signature)
    for fluent in declared:
        if fluent not in mu:
            raise DilemmaError(f"fluent {print_term(fluent)} has no mu value")
    # 声明顺序在前，其余（复合流项）按条目顺序在后
    ordered = {f: mu[f] for f in declared}
    ordered.update({f: v for f, v in mu.items() if f not in ordered})

    axiom = sanctioning_axiom()
    if not any(alpha_equal(axiom, f) for f in problem.assumptions):
        raise DilemmaError("the action-sanctioning axiom is missing from the assumptions")
    step = Atom("prior", (roles["now"], roles["next"]))
    if step not in problem.assumptions and step not in premises:
        raise DilemmaError(
            f"(prior {print_term(roles['now'])} {print_term(roles['next'])}) must be asserted"
        )

    situations = [Const(name, signature.constants[name]) for name in signature.constants_of_sort("Situation")]
    theory = SituationTheory(situations=situations, mu=ordered, axiom=axiom)
    logger.debug(f"{problem.name}: {len(problem.assumptions)} premises, {len(ordered)} fluents")
    return DilemmaKB(
        name=problem.name,
        signature=signature,
        assumptions=list(problem.assumptions),
        agent=roles["agent"],
        now=roles["now"],
        next=roles["next"],
        situation=roles["situation"],
        dde_action=roles.get("dde-action"),
        theory=theory,
    ).with_premises(*premises)


def parse_dilemma(text: str) -> DilemmaKB:
    return dilemma_from_problem(parse_problem(text, situation_signature()))


def load_dilemma(path: str) -> DilemmaKB:
    """读取两难问题文件（签名以情境签名为基础）"""
    return dilemma_from_problem(load_problem(path, situation_signature()))
