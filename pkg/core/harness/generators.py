# core/harness/generators.py
"""随机命题公式与模态上下文生成（性质测试与判定器对比用）"""
import random
from typing import List, Optional, Tuple

import config
from core.kernel.context import ContextEntry, ContextOp, ModalContext
from core.kernel.formulas import (
    And, Atom, Common, Counterfactual, Eq, Exists, Forall, Formula, Iff, Implies, Modal, ModalOp, Not, Or,
    Ought, Says, happens_action,
)
from core.kernel.terms import Const, Var

Instance = Tuple[List[Formula], Formula, Formula]

AGENTS = (Const("a", "Agent"), Const("b", "Agent"))
MOMENTS = (Const("t", "Moment"), Const("u", "Moment"))
ACTION_TYPE = Const("go", "ActionType")

_MODAL_KINDS = (
    "not", "and", "or", "implies", "iff", "modal", "common", "says", "ought", "cf", "forall", "exists",
)


class FormulaGenerator:
    """可复现的随机命题公式生成器

    Args:
        seed: 随机种子（写入断言信息以便重放）
        atoms: 原子池大小
        max_depth: 连接词嵌套深度上限
    """

    def __init__(self, seed: int = config.RANDOM_SEED, atoms: int = 6, max_depth: int = 4):
        self.seed = seed
        self.rng = random.Random(seed)
        self.atoms = [Atom(f"p{i}") for i in range(atoms)]
        self.max_depth = max_depth

    def atom(self) -> Atom:
        return self.rng.choice(self.atoms)

    def formula(self, depth: Optional[int] = None) -> Formula:
        depth = self.max_depth if depth is None else depth
        if depth <= 0 or self.rng.random() < 0.3:
            return self.atom()
        kind = self.rng.choice(("not", "and", "or", "implies"))
        if kind == "not":
            return Not(self.formula(depth - 1))
        left, right = self.formula(depth - 1), self.formula(depth - 1)
        if kind == "and":
            return And((left, right))
        if kind == "or":
            return Or((left, right))
        return Implies(left, right)

    def modal_formula(self, depth: Optional[int] = None, bound: Tuple[Var, ...] = ()) -> Formula:
        """随机模态公式：覆盖全部模态算子、C、S、O、↪ 与量词

        词汇表：常元 a b (Agent)、t u (Moment)、go (ActionType)，关系 (Human Object)，
        以及命题原子池。解析时签名中须声明这些符号。
        """
        depth = self.max_depth if depth is None else depth
        if depth <= 0 or self.rng.random() < 0.25:
            if bound and self.rng.random() < 0.5:
                var = self.rng.choice(bound)
                if self.rng.random() < 0.5:
                    return Atom("Human", (var,))
                return Eq(var, self.rng.choice(AGENTS))
            return self.atom()

        def sub() -> Formula:
            return self.modal_formula(depth - 1, bound)

        agent, moment = self.rng.choice(AGENTS), self.rng.choice(MOMENTS)
        kind = self.rng.choice(_MODAL_KINDS)
        if kind == "not":
            return Not(sub())
        if kind in ("and", "or"):
            parts = (sub(), sub())
            return And(parts) if kind == "and" else Or(parts)
        if kind == "implies":
            return Implies(sub(), sub())
        if kind == "iff":
            return Iff(sub(), sub())
        if kind == "modal":
            return Modal(self.rng.choice(list(ModalOp)), agent, moment, sub())
        if kind == "common":
            return Common(moment, sub())
        if kind == "says":
            return Says(agent, self.rng.choice((None, *AGENTS)), moment, sub())
        if kind == "ought":
            action = happens_action(agent, ACTION_TYPE, self.rng.choice(MOMENTS))
            return Ought(agent, moment, sub(), Not(action) if self.rng.random() < 0.5 else action)
        if kind == "cf":
            return Counterfactual(sub(), sub())
        var = Var(f"x{depth}", "Object")
        body = self.modal_formula(depth - 1, bound + (var,))
        return Forall(var, body) if kind == "forall" else Exists(var, body)


    def premises(self, size: int, depth: int = 2) -> List[Formula]:
        return [self.formula(depth) for _ in range(size)]

    def instance(self, max_premises: int = 5, depth: int = 2) -> Instance:
        """随机 (Γ, φ, ψ)"""
        gamma = self.premises(self.rng.randint(0, max_premises), depth)
        return gamma, self.formula(depth), self.formula(depth)

    def context(self, max_entries: int = 2) -> ModalContext:
        """随机非空 K/B/D 上下文"""
        entries = tuple(
            ContextEntry(self.rng.choice(list(ContextOp)), self.rng.choice(AGENTS), self.rng.choice(MOMENTS))
            for _ in range(self.rng.randint(1, max_entries))
        )
        return ModalContext(entries)


def lift(gamma: List[Formula], ctx: ModalContext) -> List[Formula]:
    """Υ[Γ]：把每个假设包进上下文"""
    return [ctx.wrap(f) for f in gamma]
