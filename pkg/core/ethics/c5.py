# core/ethics/c5.py
"""双重效应原则第五条的形式化（C5a / C5b）及其推导

Θ(σ, t)：存在不同于当前情境 σ 的情境 ρ，主体在 t 时处于 ρ，且 ρ 中存在至少一个
行动类型 α：α 在 ρ 中被许可、主体并无不做 α 的义务、α 不引发任何负效用流、
也不终止任何正效用流。μ 的存在量词在声明的流上展开为有限合取。

    C5a = B(I, t, holds(in(I, σ), t)) ∧ D(I, t, Θ(σ, t))
    C5b = B(I, t, Θ(σ, t) ↪ ¬happens(action(I, α_D), t+1))
"""
from enum import Enum
from typing import Optional, Union

from core.counterfactual.engine import prove_counterfactual_in_context
from core.counterfactual.models import CfConfig, CfResult
from core.ethics.dilemma import DilemmaKB
from core.ethics.situations import holds_in
from core.kernel.context import ContextEntry, ContextOp, ModalContext
from core.kernel.formulas import (
    And, Atom, Counterfactual, Eq, Exists, Formula, Not, Ought, believes, conj, desires,
    happens_action,
)
from core.kernel.printer import print_formula
from core.kernel.terms import App, Term, Var
from core.prover.models import Budget, ProofOutcome
from core.prover.prover import prove
from util.log import get_logger

logger = get_logger("C5")


class C5Clause(str, Enum):
    A = "a"
    B = "b"


def theta(kb: DilemmaKB, agent: Optional[Term] = None) -> Formula:
    """Θ(σ, t)：C5a 中愿望算子内部的陈述

    Args:
        kb: 两难知识库
        agent: 主体项；缺省为 kb.agent（公共知识前提里用约束变量代入）
    """
    agent = agent if agent is not None else kb.agent
    rho = Var("rho", "Situation")
    alpha = Var("alpha", "ActionType")
    act = App("action", (agent, alpha), "Action")
    there = holds_in(agent, rho, kb.now)
    no_harm = conj(*(
        Not(Atom("initiates", (act, fluent, kb.now))) for fluent in kb.theory.negative_fluents()
    ))
    no_loss = conj(*(
        Not(Atom("terminates", (act, fluent, kb.now))) for fluent in kb.theory.positive_fluents()
    ))
    available = And((
        Atom("actionSit", (agent, alpha, rho, kb.now)),
        Not(Ought(agent, kb.now, there, Not(happens_action(agent, alpha, kb.now)))),
        no_harm,
        no_loss,
    ))
    return Exists(rho, And((Not(Eq(rho, kb.situation)), there, Exists(alpha, available))))


def c5b_consequent(kb: DilemmaKB) -> Formula:
    """¬happens(action(I, α_D), t+1)"""
    return Not(happens_action(kb.agent, kb.require_dde_action(), kb.next))


def c5a_formula(kb: DilemmaKB) -> Formula:
    """C5a：主体相信自己处于 σ，并希望处于另一个情境 ρ"""
    return And((
        believes(kb.agent, kb.now, kb.current_situation()),
        desires(kb.agent, kb.now, theta(kb)),
    ))


def c5b_formula(kb: DilemmaKB) -> Formula:
    """C5b：主体相信，若处于另一情境，则不会在 t+1 执行 α_D

    Raises:
        DilemmaError: 知识库没有声明 α_D
    """
    return believes(kb.agent, kb.now, Counterfactual(theta(kb), c5b_consequent(kb)))


def belief_context(kb: DilemmaKB) -> ModalContext:
    return ModalContext((ContextEntry(ContextOp.B, kb.agent, kb.now),))


def derive_c5(
    kb: DilemmaKB,
    which: Union[C5Clause, str],
    budget: Optional[Budget] = None,
    cfg: Optional[CfConfig] = None,
) -> Union[ProofOutcome, CfResult]:
    """从知识库推导 C5a 或 C5b

    Args:
        kb: 两难知识库
        which: "a" 走 prove(Γ_d, C5a)；"b" 走 ⟨B, I, t⟩ 上下文中的反事实判定
        budget: C5a 的证明预算
        cfg: C5b 的子集搜索配置

    Returns:
        ProofOutcome 或 CfResult
    """
    clause = C5Clause(which)
    if clause is C5Clause.A:
        goal = c5a_formula(kb)
        logger.debug(f"C5a goal {print_formula(goal)}")
        return prove(kb.assumptions, goal, budget, kb.signature)
    consequent = c5b_consequent(kb)
    return prove_counterfactual_in_context(
        kb.assumptions, belief_context(kb), theta(kb), consequent, cfg, kb.signature,
    )
