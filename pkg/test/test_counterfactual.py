# test/test_counterfactual.py
"""反事实判定测试：子集枚举、示例查询与见证复核"""

from pathlib import Path

import pytest

from core.counterfactual import (
    CfConfig, SubsetCapExceeded, SubsetOrder, WitnessKind, enumerate_subsets, prove_counterfactual,
    prove_counterfactual_in_context, verify_witness,
)
from core.counterfactual.subsets import SubsetMemo, count_subsets, subset_mask
from core.kernel import (
    EMPTY_CONTEXT, FALSE, Atom, Const, ContextEntry, ContextOp, Implies, Modal, ModalContext, ModalOp,
    Not, load_problem, parse_problem, print_formula,
)
from core.kernel.formulas import And
from core.prover import ProofStatus

DATA = Path(__file__).resolve().parent.parent / "data"

P, Q, R = Atom("P"), Atom("Q"), Atom("R")
A, T = Const("a", "Agent"), Const("t", "Moment")

FAST = CfConfig(delta_ms=2000, entailment_ms=3000, overall_cap_ms=20000)


def socrates():
    return load_problem(str(DATA / "examples" / "socrates.clp"))


class TestEnumerateSubsets:
    """子集枚举顺序与计数"""

    def test_small_first(self):
        """测试 small-first 顺序"""
        assert list(enumerate_subsets(["a", "b"], SubsetOrder.SMALL_FIRST)) == [(), (0,), (1,), (0, 1)]

    def test_large_first(self):
        """测试 large-first 顺序"""
        assert list(enumerate_subsets(["a", "b"], SubsetOrder.LARGE_FIRST)) == [(0, 1), (0,), (1,), ()]

    @pytest.mark.parametrize("n", [0, 1, 3, 6])
    def test_count(self, n):
        """测试恰好产生 2^n 个互不相同的子集"""
        subsets = list(enumerate_subsets(list(range(n)), SubsetOrder.SMALL_FIRST))
        assert len(subsets) == 2 ** n == count_subsets(n)
        assert len(set(subsets)) == len(subsets)

    def test_max_size(self):
        """测试子集基数上限"""
        subsets = list(enumerate_subsets(list(range(4)), SubsetOrder.LARGE_FIRST, max_size=1))
        assert subsets == [(0,), (1,), (2,), (3,), ()]
        assert count_subsets(4, 1) == 5

    def test_hard_cap_is_eager(self):
        """测试超过硬上限时调用即抛出"""
        with pytest.raises(SubsetCapExceeded):
            enumerate_subsets(list(range(31)))

    def test_memo_monotonicity(self):
        """测试记忆表的子集/超集判定"""
        memo = SubsetMemo()
        memo.inconsistent.append(subset_mask((0,)))
        memo.not_entailed.append(subset_mask((0, 1)))
        assert memo.known_inconsistent(subset_mask((0, 2)))
        assert not memo.known_inconsistent(subset_mask((1, 2)))
        assert memo.known_not_entailed(subset_mask((1,)))
        assert not memo.known_not_entailed(subset_mask((1, 2)))


class TestProveCounterfactual:
    """Γ ⊢ φ ↪ ψ 的示例"""

    @pytest.mark.parametrize("order", list(SubsetOrder))
    def test_socrates(self, order):
        """测试 Socrates：见证为 {∀x Human(x) → Mortal(x)}"""
        problem = socrates()
        query = problem.queries[0]
        cfg = FAST.model_copy(update={"order": order})
        result = prove_counterfactual(problem.assumptions, query.antecedent, query.consequent, cfg, problem.signature)
        assert result.status is ProofStatus.PROVED
        assert result.witness.kind is WitnessKind.SUBSET
        assert result.witness.indices == (0,)
        assert verify_witness(result, problem.assumptions, query.antecedent, query.consequent, cfg,
                              signature=problem.signature)

    def test_socrates_absurd(self):
        """测试 Socrates 的荒谬后件不可证"""
        problem = socrates()
        query = problem.queries[2]
        assert query.consequent == FALSE
        result = prove_counterfactual(problem.assumptions, query.antecedent, FALSE, FAST, problem.signature)
        assert result.status is ProofStatus.NOT_PROVED
        assert result.witness is None
        assert result.counters.subsets_examined >= 1

    def test_identity(self):
        """测试任意 Γ 下 P ↪ P"""
        result = prove_counterfactual([Not(P), Q], P, P, FAST)
        assert result.proved

    def test_inconsistent_antecedent(self):
        """测试前件自相矛盾时走 ¬Cons[φ] 分支"""
        result = prove_counterfactual([Q], And((P, Not(P))), R, FAST)
        assert result.proved
        assert result.witness.kind is WitnessKind.INCONSISTENT_ANTECEDENT
        assert result.counters.subsets_examined == 0
        assert verify_witness(result, [Q], And((P, Not(P))), R, FAST)

    def test_counters_reported(self):
        """测试结果字典带全部计数器"""
        result = prove_counterfactual([Not(P), Implies(P, Q)], P, Q, FAST)
        data = result.to_dict()
        assert data["status"] == "Proved"
        assert set(data["counters"]) == {
            "subsets_examined", "subsets_pruned", "entailment_calls", "consistency_calls",
        }

    def test_hard_cap(self):
        """测试 |Γ| 超过 30 被拒绝"""
        gamma = [Atom(f"q{i}") for i in range(31)]
        with pytest.raises(SubsetCapExceeded):
            prove_counterfactual(gamma, P, P, FAST)

    def test_definitive_failures_pruned(self):
        """测试饱和结束的失败使 large-first 剪掉全部子集"""
        cfg = FAST.model_copy(update={"order": SubsetOrder.LARGE_FIRST})
        result = prove_counterfactual([Q, R], P, Atom("S"), cfg)
        assert result.status is ProofStatus.NOT_PROVED and result.exhausted
        assert result.counters.entailment_calls == 1
        assert result.counters.subsets_pruned == 3

    def test_zero_depth_not_pruned(self):
        """测试深度为 0 时失败不算确定，每个子集都要单独检查"""
        cfg = FAST.model_copy(update={"order": SubsetOrder.LARGE_FIRST, "depth": 0})
        result = prove_counterfactual([Q, R], P, Atom("S"), cfg)
        assert result.status is ProofStatus.NOT_PROVED and not result.exhausted
        assert result.counters.entailment_calls == 4
        assert result.counters.subsets_pruned == 0

    def test_order_invariance(self):
        """测试两种顺序对状态的判定一致"""
        gamma = [Not(P), Implies(P, Q), Implies(Q, R), Not(R)]
        for psi in (Q, R, Not(Q), FALSE):
            statuses = {
                prove_counterfactual(gamma, P, psi, FAST.model_copy(update={"order": o})).status
                for o in SubsetOrder
            }
            assert len(statuses) == 1, print_formula(psi)


class TestInContext:
    """Γ ⊢ Υ[φ ↪ ψ]"""

    def test_belief_example(self):
        """测试 B(a,t,¬p)、B(a,t,p→q) 下 ⟨B,a,t⟩[p ↪ q]，见证 {p → q}"""
        problem = load_problem(str(DATA / "examples" / "belief.clp"))
        query = problem.queries[0]
        result = prove_counterfactual_in_context(
            problem.assumptions, query.context, query.antecedent, query.consequent, FAST, problem.signature,
        )
        assert result.proved
        assert [print_formula(f) for f in result.witness.subset] == ["(implies p q)"]
        assert str(result.context) == "⟨B,a,t⟩"

    def test_empty_context_matches_plain(self):
        """测试空上下文与 prove_counterfactual 结果一致"""
        gamma = [Not(P), Implies(P, Q)]
        plain = prove_counterfactual(gamma, P, Q, FAST)
        ctx = prove_counterfactual_in_context(gamma, EMPTY_CONTEXT, P, Q, FAST)
        assert plain.status is ctx.status
        assert plain.witness.indices == ctx.witness.indices

    def test_projection_mismatch(self):
        """测试投影为空时 Q ↪ P 不可证"""
        gamma = [Modal(ModalOp.KNOWS, A, T, P)]
        ctx = ModalContext((ContextEntry(ContextOp.B, A, T),))
        result = prove_counterfactual_in_context(gamma, ctx, Q, P, FAST)
        assert result.status is ProofStatus.NOT_PROVED


class TestObligationCounterfactual:
    """主体所信的义务与客观义务一起给出 B(a,t,φ) ↪ I(a,t,χ)"""

    TEXT = """
    (problem duty
      (const a Agent) (const t Moment) (const help ActionType) (const storm Fluent)
      (assumptions
        (B a t (O a t (holds storm t) (happens (action a help) t)))
        (O a t (holds storm t) (happens (action a help) t)))
      (queries
        (cf (B a t (holds storm t)) (I a t (happens (action a help) t)))))
    """

    def test_intention_follows(self):
        """测试 R_14 + R_4 给出意图"""
        problem = parse_problem(self.TEXT)
        query = problem.queries[0]
        result = prove_counterfactual(problem.assumptions, query.antecedent, query.consequent, FAST, problem.signature)
        assert result.proved
        rules = [step.rule for step in result.witness.entailment.justification]
        assert "R_14" in rules

    def test_without_objective_obligation(self):
        """测试缺少客观义务时不可证"""
        problem = parse_problem(self.TEXT)
        query = problem.queries[0]
        gamma = problem.assumptions[:1]
        result = prove_counterfactual(gamma, query.antecedent, query.consequent, FAST, problem.signature)
        assert result.status is ProofStatus.NOT_PROVED

    def test_config_validation(self):
        """测试非法配置被拒绝"""
        with pytest.raises(ValueError):
            CfConfig(delta_ms=0)
