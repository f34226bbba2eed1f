# core/ethics/situations.py
"""事件演算上的情境层：Situation 排序、in 流、actionSit 关系与行动许可公理"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List

from core.kernel.formulas import And, Atom, Exists, Forall, Formula, Implies, happens_action
from core.kernel.signature import SortedSignature, base_signature
from core.kernel.terms import App, Term, Var


def situation_signature() -> SortedSignature:
    """事件演算签名 + 情境符号（in: Agent × Situation → Fluent，actionSit: Agent × ActionType × Situation × Moment）"""
    sig = base_signature()
    sig.declare_function("in", ("Agent", "Situation"), "Fluent")
    sig.declare_relation("actionSit", ("Agent", "ActionType", "Situation", "Moment"))
    sig.mark_base()
    return sig


def in_situation(agent: Term, situation: Term) -> App:
    """流 in(agent, situation)"""
    return App("in", (agent, situation), "Fluent")


def holds_in(agent: Term, situation: Term, time: Term) -> Atom:
    """holds(in(agent, situation), time)"""
    return Atom("holds", (in_situation(agent, situation), time))


def sanctioning_axiom() -> Formula:
    """∀a ∀α ∀u (happens(action(a, α), u) → ∃σ (holds(in(a, σ), u) ∧ actionSit(a, α, σ, u)))"""
    a = Var("a", "Agent")
    alpha = Var("alpha", "ActionType")
    u = Var("u", "Moment")
    sigma = Var("sigma", "Situation")
    sanctioned = Exists(sigma, And((
        holds_in(a, sigma, u),
        Atom("actionSit", (a, alpha, sigma, u)),
    )))
    body = Implies(happens_action(a, alpha, u), sanctioned)
    return Forall(a, Forall(alpha, Forall(u, body)))


@dataclass
class SituationTheory:
    """情境理论：情境常量、μ 效用表与行动许可公理

    mu 以声明顺序保存每个基项流的效用。
    """
    situations: List[Term] = field(default_factory=list)
    mu: Dict[Term, Fraction] = field(default_factory=dict)
    axiom: Formula = field(default_factory=sanctioning_axiom)

    def negative_fluents(self) -> List[Term]:
        return [f for f, value in self.mu.items() if value < 0]

    def positive_fluents(self) -> List[Term]:
        return [f for f, value in self.mu.items() if value > 0]
