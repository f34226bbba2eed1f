# core/prover/schemata.py
"""模态推理模式的有界前向饱和

每一轮依次对工作集中的公式应用：
    C_elim       C(t, φ) ⊢ K(a, t, φ)，a 取问题中出现的每个主体基项
    R_4          K(a, t, φ) ⊢ φ
    forall_inst  ∀x φ ⊢ φ[x := c]（仅当 φ 中有提到 x 的模态子公式）
    R_cf2        φ ↪ ψ ⊢ φ → ψ
    R_cf4        Υ[φ], Υ[φ ↪ ψ] ⊢ Υ[ψ]
    R_13         I(a, t, ψ), t < t′ ⊢ P(a, t′, ψ)
    R_14         B(a, t, φ), B(a, t, O(a, t, φ, χ)), O(a, t, φ, χ) ⊢ K(a, t, I(a, t, χ))
随后以目标为导向应用 R_K / R_B：对工作集或目标中出现的每个 M(a, t2, φ)，
在 {ψ | M(a, t1, ψ) ∈ 工作集, t1 ≤ t2} 上递归证明 φ。
同一轮内，后面的规则能看到前面刚加入的公式。
"""
from collections import deque
from typing import Callable, Dict, List, Optional, Set, Tuple

from core.kernel.formulas import (
    Atom, Common, Counterfactual, Forall, Formula, Implies, Modal, ModalOp, Ought,
    free_vars, ground_terms, is_modal, subformulas, substitute,
)
from core.kernel.context import extract_context
from core.kernel.printer import canonical_key, print_formula
from core.kernel.signature import SortedSignature
from core.kernel.terms import Term
from core.prover.models import Budget, Deadline, JustificationStep, ProofOutcome
from util.log import get_logger

logger = get_logger("Schemata")

SubProve = Callable[[List[Formula], Formula, Budget, Deadline], ProofOutcome]
TimeChain = Tuple[Formula, ...]


class TimeOrder:
    """由基项 prior 事实生成的自反传递序"""

    def __init__(self, formulas: List[Formula]):
        self._edges: Dict[Term, List[Tuple[Term, Formula]]] = {}
        for f in formulas:
            if isinstance(f, Atom) and f.pred == "prior" and len(f.args) == 2:
                if not free_vars(f):
                    self._edges.setdefault(f.args[0], []).append((f.args[1], f))
        self._cache: Dict[Term, Dict[Term, TimeChain]] = {}

    def _reach(self, start: Term) -> Dict[Term, TimeChain]:
        if start not in self._cache:
            paths: Dict[Term, TimeChain] = {start: ()}
            queue = deque([start])
            while queue:
                node = queue.popleft()
                for succ, fact in self._edges.get(node, ()):
                    if succ not in paths:
                        paths[succ] = paths[node] + (fact,)
                        queue.append(succ)
            self._cache[start] = paths
        return self._cache[start]

    def leq(self, earlier: Term, later: Term) -> Optional[TimeChain]:
        """earlier ≤ later 时返回所用的 prior 事实链，否则返回 None"""
        return self._reach(earlier).get(later)

    def lt(self, earlier: Term, later: Term) -> Optional[TimeChain]:
        if earlier == later:
            return None
        return self.leq(earlier, later)


class SchemaSaturator:
    """对一组公式做有界深度的模式饱和

    Args:
        goal: 证明目标（R_K / R_B 的目标导向依据）
        budget: 证明预算（depth 限制轮数与嵌套层数）
        deadline: 截止时间
        signature: 签名（用于排序兼容判断）
        subprove: 递归证明回调
    """

    def __init__(
        self,
        goal: Formula,
        budget: Budget,
        deadline: Deadline,
        signature: SortedSignature,
        subprove: SubProve,
    ):
        self.goal = goal
        self.budget = budget
        self.deadline = deadline
        self.signature = signature
        self.subprove = subprove
        self.working: List[Formula] = []
        self.steps: List[JustificationStep] = []
        self.exhausted = True
        self._keys: Dict[str, Formula] = {}
        self._attempted: Set[Tuple[str, Tuple[str, ...]]] = set()
        self._terms: List[Term] = []
        self._order = TimeOrder([])

    # ==================== 工作集 ====================

    def _has(self, f: Formula) -> bool:
        return canonical_key(f) in self._keys

    def _add(self, f: Formula, step: Optional[JustificationStep] = None) -> bool:
        key = canonical_key(f)
        if key in self._keys:
            return False
        self._keys[key] = f
        self.working.append(f)
        if step is not None:
            self.steps.append(step)
            logger.debug(f"{step.rule}: {print_formula(f)}")
        return True

    def saturate(self, gamma: List[Formula]) -> List[Formula]:
        """饱和并返回工作集（Γ 在前，推出的公式按推出顺序在后）"""
        for f in gamma:
            self._add(f)
        for _ in range(self.budget.depth):
            if self.deadline.expired():
                self.exhausted = False
                break
            before = len(self.working)
            self._round()
            if len(self.working) == before:
                break
        else:
            # 没有到达不动点（深度用尽时仍在增长，或深度为 0）：失败不是确定的
            self.exhausted = False
        return self.working

    def _round(self) -> None:
        self._terms = self._ground_terms()
        self._order = TimeOrder(self.working)
        index = 0
        while index < len(self.working):
            if self.deadline.expired():
                self.exhausted = False
                return
            f = self.working[index]
            index += 1
            self._c_elim(f)
            self._r4(f)
            self._forall_inst(f)
            self._cf2(f)
            self._cf4(f)
            self._r13(f)
            self._r14(f)
        self._r_k_b()

    def _ground_terms(self) -> List[Term]:
        terms: List[Term] = []
        for f in [*self.working, self.goal]:
            for term in ground_terms(f):
                if term not in terms:
                    terms.append(term)
        return terms

    def _terms_of_sort(self, sort: str) -> List[Term]:
        return [t for t in self._terms if self.signature.is_subsort(t.sort, sort)]

    # ==================== 单条规则 ====================

    def _c_elim(self, f: Formula) -> None:
        if not isinstance(f, Common):
            return
        for agent in self._terms_of_sort("Agent"):
            conclusion = Modal(ModalOp.KNOWS, agent, f.time, f.body)
            self._add(conclusion, JustificationStep("C_elim", (f,), conclusion, term=agent))

    def _r4(self, f: Formula) -> None:
        if isinstance(f, Modal) and f.op is ModalOp.KNOWS:
            self._add(f.body, JustificationStep("R_4", (f,), f.body))

    def _forall_inst(self, f: Formula) -> None:
        if not isinstance(f, Forall):
            return
        mentions = any(
            is_modal(sub) and f.var in free_vars(sub) for sub in subformulas(f.body)
        )
        if not mentions:
            return
        for term in self._terms_of_sort(f.var.sort):
            conclusion = substitute(f.body, {f.var: term})
            self._add(conclusion, JustificationStep("forall_inst", (f,), conclusion, term=term))

    def _cf2(self, f: Formula) -> None:
        if isinstance(f, Counterfactual):
            conclusion = Implies(f.antecedent, f.consequent)
            self._add(conclusion, JustificationStep("R_cf2", (f,), conclusion))

    def _cf4(self, f: Formula) -> None:
        ctx, body = extract_context(f)
        if not ctx or not isinstance(body, Counterfactual):
            return
        antecedent = ctx.wrap(body.antecedent)
        present = self._keys.get(canonical_key(antecedent))
        if present is None:
            return
        conclusion = ctx.wrap(body.consequent)
        self._add(conclusion, JustificationStep("R_cf4", (present, f), conclusion))

    def _r13(self, f: Formula) -> None:
        if not (isinstance(f, Modal) and f.op is ModalOp.INTENDS):
            return
        for later in self._terms_of_sort("Moment"):
            chain = self._order.lt(f.time, later)
            if chain is None:
                continue
            conclusion = Modal(ModalOp.PERCEIVES, f.agent, later, f.body)
            self._add(conclusion, JustificationStep("R_13", (f,), conclusion, time_facts=chain))

    def _r14(self, f: Formula) -> None:
        if not (isinstance(f, Modal) and f.op is ModalOp.BELIEVES and isinstance(f.body, Ought)):
            return
        ought = f.body
        if ought.agent != f.agent or ought.time != f.time:
            return
        belief = self._keys.get(canonical_key(Modal(ModalOp.BELIEVES, f.agent, f.time, ought.condition)))
        if belief is None:
            return
        conclusion = Modal(
            ModalOp.KNOWS, f.agent, f.time,
            Modal(ModalOp.INTENDS, f.agent, f.time, ought.action),
        )
        if self._has(conclusion):
            return
        present = self._keys.get(canonical_key(ought))
        if present is not None:
            self._add(conclusion, JustificationStep("R_14", (belief, f, present), conclusion))
            return
        # 客观义务 O(a, t, φ, χ) 必须可推出
        memo = ("R_14:" + canonical_key(ought), (str(len(self.working)),))
        if memo in self._attempted or self.budget.depth == 0:
            return
        self._attempted.add(memo)
        sub = self._subprove(list(self.working), ought)
        if sub.proved:
            self._add(conclusion, JustificationStep("R_14", (belief, f), conclusion, sub_outcomes=(sub,)))

    # ==================== R_K / R_B ====================

    def _targets(self) -> List[Modal]:
        targets: Dict[str, Modal] = {}
        for f in [*self.working, self.goal]:
            for sub in subformulas(f):
                if not (isinstance(sub, Modal) and sub.op in (ModalOp.KNOWS, ModalOp.BELIEVES)):
                    continue
                if free_vars(sub):
                    continue
                key = canonical_key(sub)
                if key not in self._keys and key not in targets:
                    targets[key] = sub
        return list(targets.values())

    def _r_k_b(self) -> None:
        if self.budget.depth == 0:
            return
        self._order = TimeOrder(self.working)
        for target in self._targets():
            if self.deadline.expired():
                self.exhausted = False
                return
            premises: List[Formula] = []
            chains: List[Formula] = []
            for f in self.working:
                if not (isinstance(f, Modal) and f.op is target.op and f.agent == target.agent):
                    continue
                chain = self._order.leq(f.time, target.time)
                if chain is None:
                    continue
                premises.append(f)
                chains.extend(fact for fact in chain if fact not in chains)
            if not premises:
                continue
            inner = [p.body for p in premises]
            memo = (canonical_key(target), tuple(canonical_key(p) for p in inner))
            if memo in self._attempted:
                continue
            self._attempted.add(memo)
            sub = self._subprove(inner, target.body)
            if sub.proved:
                rule = "R_K" if target.op is ModalOp.KNOWS else "R_B"
                self._add(target, JustificationStep(
                    rule, tuple(premises), target, time_facts=tuple(chains), sub_outcomes=(sub,),
                ))

    def _subprove(self, gamma: List[Formula], goal: Formula) -> ProofOutcome:
        budget = self.budget.nested(self.deadline.remaining_ms())
        sub = self.subprove(gamma, goal, budget, self.deadline)
        if not sub.proved and not sub.exhausted:
            self.exhausted = False
        return sub
