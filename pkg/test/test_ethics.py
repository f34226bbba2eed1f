# test/test_ethics.py
"""双重效应原则第五条：公式构造、知识库校验与推导"""

from fractions import Fraction
from pathlib import Path

import pytest

from core.counterfactual import CfConfig
from core.ethics import (
    DilemmaError, c5a_formula, c5b_formula, derive_c5, load_dilemma, parse_dilemma, theta,
)
from core.kernel import Counterfactual, extract_context, print_formula
from core.prover import Budget, ProofStatus

DATA = Path(__file__).resolve().parent.parent / "data"
TROLLEY = DATA / "dilemmas" / "trolley.clp"

SANCTION = (
    "(forall ((a Agent) (alpha ActionType) (u Moment)) (implies (happens (action a alpha) u) "
    "(exists (sigma Situation) (and (holds (in a sigma) u) (actionSit a alpha sigma u)))))"
)


def dilemma_text(fluents=(), dde_action="alphaD", axiom=True, extra_dde="", order="(prior t t1)"):
    consts = " ".join(f"(const {name} Fluent)" for name, _ in fluents)
    mu = " ".join(f"(mu {name} {value})" for name, value in fluents)
    action = f"(dde-action {dde_action})" if dde_action else ""
    return f"""
    (problem mini
      (const I Agent) (const t Moment) (const t1 Moment)
      (const s0 Situation) (const alphaD ActionType) {consts}
      (assumptions {SANCTION if axiom else ""} {order})
      (queries)
      (dde (agent I) (now t) (next t1) (situation s0) {action} {mu} {extra_dde}))
    """


def golden(name):
    return (DATA / "golden" / name).read_text(encoding="utf-8").strip()


class TestC5Formulas:
    """C5a / C5b 的构造"""

    def test_c5a_golden(self):
        """测试 trolley 的 C5a 与基准文件逐字一致"""
        assert print_formula(c5a_formula(load_dilemma(str(TROLLEY)))) == golden("c5a.txt")

    def test_c5b_golden(self):
        """测试 trolley 的 C5b 与基准文件逐字一致"""
        assert print_formula(c5b_formula(load_dilemma(str(TROLLEY)))) == golden("c5b.txt")

    def test_deterministic(self):
        """测试同一知识库两次构造输出相同"""
        first, second = load_dilemma(str(TROLLEY)), load_dilemma(str(TROLLEY))
        assert print_formula(c5a_formula(first)) == print_formula(c5a_formula(second))
        assert print_formula(c5b_formula(first)) == print_formula(c5b_formula(second))

    def test_c5b_context(self):
        """测试 C5b 的上下文为 ⟨B,I,t⟩，主体为 ↪"""
        ctx, body = extract_context(c5b_formula(load_dilemma(str(TROLLEY))))
        assert str(ctx) == "⟨B,I,t⟩"
        assert isinstance(body, Counterfactual)
        assert print_formula(body.consequent) == "(not (happens (action I alphaD) t1))"

    def test_mu_split(self):
        """测试 μ 按符号分成负效用流与正效用流"""
        kb = load_dilemma(str(TROLLEY))
        assert kb.theory.mu[kb.theory.negative_fluents()[0]] == Fraction(-5)
        assert [str(f.name) for f in kb.theory.negative_fluents()] == ["fiveDead", "oneDead"]
        assert [str(f.name) for f in kb.theory.positive_fluents()] == ["fiveSafe"]

    def test_zero_fluents(self):
        """测试没有流时不出现 initiates / terminates 合取项"""
        text = print_formula(theta(parse_dilemma(dilemma_text())))
        assert "initiates" not in text and "terminates" not in text

    def test_single_negative_fluent(self):
        """测试单个负效用流只给出一个 initiates 否定"""
        text = print_formula(theta(parse_dilemma(dilemma_text([("harm", "-1")]))))
        assert text.count("(not (initiates (action I alpha) harm t))") == 1
        assert "terminates" not in text


class TestDilemmaValidation:
    """知识库不完整时报 DilemmaError"""

    def test_undeclared_dde_action(self):
        """测试 α_D 未声明"""
        with pytest.raises(DilemmaError):
            parse_dilemma(dilemma_text(dde_action="beta"))

    def test_missing_dde_action_for_c5b(self):
        """测试没有 α_D 时无法构造 C5b，但 C5a 可以"""
        kb = parse_dilemma(dilemma_text(dde_action=None))
        assert c5a_formula(kb) is not None
        with pytest.raises(DilemmaError):
            c5b_formula(kb)

    def test_missing_mu(self):
        """测试声明的流缺少 μ 值"""
        text = dilemma_text([("harm", "-1")]).replace("(mu harm -1)", "")
        with pytest.raises(DilemmaError):
            parse_dilemma(text)

    def test_missing_axiom(self):
        """测试假设中缺少行动许可公理"""
        with pytest.raises(DilemmaError):
            parse_dilemma(dilemma_text(axiom=False))

    @pytest.mark.parametrize("order", ["", "(prior t1 t)"])
    def test_missing_time_step(self, order):
        """测试 Γ_d 没有断言 prior(now, next)（缺失或方向相反）"""
        with pytest.raises(DilemmaError):
            parse_dilemma(dilemma_text(order=order))

    def test_time_step_as_premise(self):
        """测试 prior(now, next) 也可以由 premise 条目给出"""
        kb = parse_dilemma(dilemma_text(order="", extra_dde="(premise (prior t t1))"))
        assert print_formula(kb.assumptions[-1]) == "(prior t t1)"

    def test_premise_entry(self):
        """测试 dde 块中的 premise 条目追加到 Γ_d"""
        plain = parse_dilemma(dilemma_text())
        extended = parse_dilemma(dilemma_text(extra_dde="(premise (B I t (holds (in I s0) t)))"))
        assert len(extended.assumptions) == len(plain.assumptions) + 1

    def test_unknown_entry(self):
        """测试未知的 dde 条目"""
        with pytest.raises(DilemmaError):
            parse_dilemma(dilemma_text(extra_dde="(weight 3)"))


class TestDeriveC5:
    """从 trolley 知识库推导"""

    def test_derive_c5a(self):
        """测试 C5a 可证"""
        outcome = derive_c5(load_dilemma(str(TROLLEY)), "a", Budget(timeout_ms=30000))
        assert outcome.status is ProofStatus.PROVED

    def test_derive_c5b(self):
        """测试 C5b 在 ⟨B,I,t⟩ 中可证"""
        cfg = CfConfig(delta_ms=5000, entailment_ms=30000, overall_cap_ms=60000)
        result = derive_c5(load_dilemma(str(TROLLEY)), "b", cfg=cfg)
        assert result.status is ProofStatus.PROVED
        assert str(result.context) == "⟨B,I,t⟩"

    @pytest.mark.slow
    def test_ablation(self):
        """测试去掉主体所信的公共知识后 C5b 不可证"""
        kb = load_dilemma(str(TROLLEY)).without_believed_common_knowledge()
        cfg = CfConfig(delta_ms=1000, entailment_ms=3000, overall_cap_ms=10000)
        result = derive_c5(kb, "b", cfg=cfg)
        assert result.status is ProofStatus.NOT_PROVED
