# core/prover/replay.py
"""证明回放：逐步机械检查 Proved 结果的每条模式应用与每条归结子句"""
from typing import Dict, List, Optional, Set

from core.kernel.context import extract_context
from core.kernel.formulas import (
    Common, Counterfactual, Forall, Formula, Implies, Modal, ModalOp, Not, Ought, alpha_equal,
    substitute,
)
from core.kernel.printer import canonical_key
from core.kernel.signature import SortedSignature, base_signature
from core.kernel.terms import is_ground
from core.prover.clauses import (
    clausify_all, drop_trivial_literals, rename_clause, variant_key,
)
from core.prover.models import JustificationStep, ProofOutcome
from core.prover.resolution import equality_resolvents, factors, paramodulants, resolvents
from core.prover.shadow import shadow


class ReplayError(Exception):
    """回放失败：某一步不能由其前提按所述规则得到"""


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ReplayError(message)


def _chain_connects(chain, start, end) -> bool:
    """prior 事实链是否构成从 start 到 end 的路径（允许 start == end）"""
    reachable = {start}
    changed = True
    while changed:
        changed = False
        for fact in chain:
            if fact.args[0] in reachable and fact.args[1] not in reachable:
                reachable.add(fact.args[1])
                changed = True
    return end in reachable


class ProofReplayer:
    """对单个 ProofOutcome 做回放（递归检查内层证明）"""

    def __init__(self, signature: Optional[SortedSignature] = None):
        self.signature = signature or base_signature()

    def replay(self, outcome: ProofOutcome) -> None:
        """回放整个证明

        Raises:
            ReplayError: 任何一步检查失败
        """
        _require(outcome.proved, "only Proved outcomes can be replayed")
        available: Dict[str, Formula] = {}
        working: List[Formula] = []
        for f in outcome.gamma:
            key = canonical_key(f)
            if key not in available:
                available[key] = f
                working.append(f)
        for step in outcome.justification:
            for premise in (*step.premises, *step.time_facts):
                _require(canonical_key(premise) in available, f"{step.rule}: premise not available")
            self._check_step(step, available)
            key = canonical_key(step.conclusion)
            _require(key not in available, f"{step.rule}: conclusion already present")
            available[key] = step.conclusion
            working.append(step.conclusion)
        expected = tuple(shadow(f) for f in working) + (shadow(Not(outcome.goal)),)
        _require(expected == tuple(outcome.refutation_inputs), "refutation inputs do not match working set")
        self._check_refutation(outcome)

    # ==================== 模式步骤 ====================

    def _check_step(self, step: JustificationStep, available: Dict[str, Formula]) -> None:
        rule, premises, conclusion = step.rule, step.premises, step.conclusion
        if rule == "R_4":
            (p,) = premises
            _require(isinstance(p, Modal) and p.op is ModalOp.KNOWS, "R_4 needs K premise")
            _require(alpha_equal(p.body, conclusion), "R_4 conclusion mismatch")
        elif rule == "C_elim":
            (p,) = premises
            _require(isinstance(p, Common), "C_elim needs C premise")
            _require(step.term is not None and is_ground(step.term), "C_elim needs a ground agent")
            _require(self.signature.is_subsort(step.term.sort, "Agent"), "C_elim agent sort")
            _require(
                alpha_equal(Modal(ModalOp.KNOWS, step.term, p.time, p.body), conclusion),
                "C_elim conclusion mismatch",
            )
        elif rule == "forall_inst":
            (p,) = premises
            _require(isinstance(p, Forall), "forall_inst needs a universal")
            _require(step.term is not None and is_ground(step.term), "forall_inst needs a ground term")
            _require(self.signature.is_subsort(step.term.sort, p.var.sort), "forall_inst term sort")
            _require(
                alpha_equal(substitute(p.body, {p.var: step.term}), conclusion),
                "forall_inst conclusion mismatch",
            )
        elif rule == "R_cf2":
            (p,) = premises
            _require(isinstance(p, Counterfactual), "R_cf2 needs a counterfactual")
            _require(alpha_equal(Implies(p.antecedent, p.consequent), conclusion), "R_cf2 mismatch")
        elif rule == "R_cf4":
            antecedent, cf = premises
            ctx, body = extract_context(cf)
            _require(bool(ctx) and isinstance(body, Counterfactual), "R_cf4 needs Υ[φ ↪ ψ]")
            _require(alpha_equal(ctx.wrap(body.antecedent), antecedent), "R_cf4 antecedent mismatch")
            _require(alpha_equal(ctx.wrap(body.consequent), conclusion), "R_cf4 conclusion mismatch")
        elif rule == "R_13":
            (p,) = premises
            _require(isinstance(p, Modal) and p.op is ModalOp.INTENDS, "R_13 needs I premise")
            _require(
                isinstance(conclusion, Modal) and conclusion.op is ModalOp.PERCEIVES
                and conclusion.agent == p.agent and alpha_equal(conclusion.body, p.body),
                "R_13 conclusion mismatch",
            )
            _require(conclusion.time != p.time, "R_13 needs t < t′")
            _require(_chain_connects(step.time_facts, p.time, conclusion.time), "R_13 time order")
        elif rule == "R_14":
            self._check_r14(step, available)
        elif rule in ("R_K", "R_B"):
            self._check_rkb(step)
        else:
            raise ReplayError(f"unknown rule {rule}")

    def _check_r14(self, step: JustificationStep, available: Dict[str, Formula]) -> None:
        belief, belief_ought = step.premises[0], step.premises[1]
        _require(
            isinstance(belief_ought, Modal) and belief_ought.op is ModalOp.BELIEVES
            and isinstance(belief_ought.body, Ought),
            "R_14 needs B(a, t, O(...))",
        )
        ought = belief_ought.body
        a, t = belief_ought.agent, belief_ought.time
        _require(ought.agent == a and ought.time == t, "R_14 agent/time mismatch")
        _require(
            alpha_equal(belief, Modal(ModalOp.BELIEVES, a, t, ought.condition)),
            "R_14 needs B(a, t, φ)",
        )
        if len(step.premises) == 3:
            _require(alpha_equal(step.premises[2], ought), "R_14 obligation mismatch")
        else:
            _require(len(step.sub_outcomes) == 1, "R_14 needs a derivation of O(a, t, φ, χ)")
            sub = step.sub_outcomes[0]
            _require(alpha_equal(sub.goal, ought), "R_14 sub-proof goal mismatch")
            for f in sub.gamma:
                _require(canonical_key(f) in available, "R_14 sub-proof uses unavailable premises")
            self.replay(sub)
        expected = Modal(ModalOp.KNOWS, a, t, Modal(ModalOp.INTENDS, a, t, ought.action))
        _require(alpha_equal(expected, step.conclusion), "R_14 conclusion mismatch")

    def _check_rkb(self, step: JustificationStep) -> None:
        op = ModalOp.KNOWS if step.rule == "R_K" else ModalOp.BELIEVES
        target = step.conclusion
        _require(isinstance(target, Modal) and target.op is op, f"{step.rule} conclusion operator")
        for premise in step.premises:
            _require(
                isinstance(premise, Modal) and premise.op is op and premise.agent == target.agent,
                f"{step.rule} premise must share operator and agent",
            )
            _require(
                _chain_connects(step.time_facts, premise.time, target.time),
                f"{step.rule} needs t1 ≤ t2",
            )
        _require(len(step.sub_outcomes) == 1, f"{step.rule} needs an inner proof")
        sub = step.sub_outcomes[0]
        _require(alpha_equal(sub.goal, target.body), f"{step.rule} inner goal mismatch")
        inner = [p.body for p in step.premises]
        _require(
            len(sub.gamma) == len(inner) and all(alpha_equal(a, b) for a, b in zip(sub.gamma, inner)),
            f"{step.rule} inner premises mismatch",
        )
        self.replay(sub)

    # ==================== 归结轨迹 ====================

    def _check_refutation(self, outcome: ProofOutcome) -> None:
        trace = outcome.refutation
        _require(bool(trace) and not trace[-1].clause, "refutation must end in the empty clause")
        input_keys: Set[str] = {
            variant_key(clause) for _, clause in clausify_all(outcome.refutation_inputs)
        }
        clauses = {step.index: step.clause for step in trace}
        for step in trace:
            key = variant_key(step.clause)
            if step.rule == "input":
                _require(key in input_keys, f"clause {step.index} is not an input clause")
                continue
            parents = [clauses.get(p) for p in step.parents]
            _require(all(p is not None for p in parents), f"clause {step.index} has missing parents")
            derived = {variant_key(drop_trivial_literals(c)) for c in self._derive(step.rule, parents)}
            _require(key in derived, f"clause {step.index} does not follow by {step.rule}")

    def _derive(self, rule: str, parents):
        sig = self.signature
        if rule == "factor":
            return list(factors(parents[0], sig))
        if rule == "eq_resolve":
            return list(equality_resolvents(parents[0], sig))
        first, second = parents
        if first == second:
            second = rename_clause(second, "replay")
        if rule == "resolve":
            return list(resolvents(first, second, sig))
        if rule == "paramodulate":
            return list(paramodulants(first, second, sig))
        raise ReplayError(f"unknown refutation rule {rule}")


def replay(outcome: ProofOutcome, signature: Optional[SortedSignature] = None) -> bool:
    """回放证明；成功返回 True，失败抛出 ReplayError"""
    ProofReplayer(signature).replay(outcome)
    return True


__all__ = ["ReplayError", "ProofReplayer", "replay"]
