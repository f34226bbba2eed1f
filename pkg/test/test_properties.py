# test/test_properties.py
"""↪ 的代数性质：命题片段上的随机实例（种子写入断言信息）"""

import config
from core.counterfactual import CfConfig, SubsetOrder, prove_counterfactual, prove_counterfactual_in_context
from core.harness.generators import FormulaGenerator, lift
from core.kernel import FALSE, Atom, Implies, Not
from core.kernel.formulas import And, Counterfactual, Or
from core.prover import Budget, consistent, prove

INSTANCES = 100

CFG = CfConfig(delta_ms=5000, entailment_ms=5000, overall_cap_ms=60000)
BUDGET = Budget(timeout_ms=5000)


def cf(gamma, phi, psi, order=SubsetOrder.LARGE_FIRST):
    return prove_counterfactual(gamma, phi, psi, CFG.model_copy(update={"order": order})).proved


def entails(gamma, goal):
    return prove(gamma, goal, BUDGET).proved


def generator(offset):
    seed = config.RANDOM_SEED + offset
    return seed, FormulaGenerator(seed=seed)


class TestBasicLaws:
    """ID、R2、R3、MP、MOD"""

    def test_identity(self):
        """测试 {} ⊢ φ ↪ φ（含矛盾的 φ）"""
        seed, gen = generator(1)
        for i in range(INSTANCES):
            phi = gen.formula(3)
            assert cf([], phi, phi), f"seed={seed} case={i}"
        assert cf([], And((Atom("p0"), Not(Atom("p0")))), And((Atom("p0"), Not(Atom("p0")))))

    def test_r2_validity_lifts(self):
        """测试 {} ⊢ φ → ψ 蕴含 {} ⊢ φ ↪ ψ"""
        seed, gen = generator(2)
        for i in range(INSTANCES):
            phi = gen.formula(3)
            psi = Or((phi, gen.formula(2))) if i % 2 else gen.formula(2)
            if entails([], Implies(phi, psi)):
                assert cf([], phi, psi), f"seed={seed} case={i}"

    def test_r3_consequent_weakening(self):
        """测试 Γ ⊢ χ ↪ φ 且 {} ⊢ φ → ψ 时 Γ ⊢ χ ↪ ψ"""
        seed, gen = generator(3)
        for i in range(INSTANCES):
            gamma, chi, phi = gen.instance(max_premises=4)
            psi = Or((phi, gen.formula(2)))
            if cf(gamma, chi, phi):
                assert cf(gamma, chi, psi), f"seed={seed} case={i}"

    def test_r3_from_counterfactual_premise(self):
        """测试假设中的 χ ↪ φ 经 R_cf2 分离后得到 χ ↪ (φ ∨ ρ)"""
        seed, gen = generator(4)
        for i in range(INSTANCES):
            chi, phi = gen.formula(2), gen.formula(2)
            if not consistent([And((chi, phi))], 5000).inconsistent:
                assert cf([Counterfactual(chi, phi)], chi, Or((phi, gen.formula(1)))), f"seed={seed} case={i}"

    def test_mp(self):
        """测试 Γ ⊢ φ ↪ ψ 蕴含 Γ ⊢ φ → ψ"""
        seed, gen = generator(5)
        for i in range(INSTANCES):
            gamma, phi, psi = gen.instance(max_premises=4)
            if cf(gamma, phi, psi):
                assert entails(gamma, Implies(phi, psi)), f"seed={seed} case={i}"

    def test_mod(self):
        """测试 Γ ⊢ ¬ψ ↪ ψ 蕴含任意 φ 下 Γ ⊢ φ → ψ"""
        seed, gen = generator(6)
        for i in range(INSTANCES):
            gamma, phi, psi = gen.instance(max_premises=4)
            if i % 3 == 0:
                psi = Or((psi, Not(psi)))
            if cf(gamma, Not(psi), psi):
                assert entails(gamma, Implies(phi, psi)), f"seed={seed} case={i}"


class TestAntecedentLaws:
    """互推前件、析取前件与 A4"""

    def test_mutual_antecedents(self):
        """测试 Γ ⊢ φ ↪ ψ 与 Γ ⊢ ψ ↪ φ 时 φ → χ、ψ → χ 同可证"""
        seed, gen = generator(7)
        for i in range(INSTANCES):
            gamma, phi, chi = gen.instance(max_premises=4)
            psi = Not(Not(phi)) if i % 2 else gen.formula(2)
            if cf(gamma, phi, psi) and cf(gamma, psi, phi):
                left = entails(gamma, Implies(phi, chi))
                right = entails(gamma, Implies(psi, chi))
                assert left == right, f"seed={seed} case={i}"

    def test_sda_or(self):
        """测试 Γ ⊢ (φ1 ∨ φ2) ↪ ψ 时至少一个析取支成立"""
        seed, gen = generator(8)
        for i in range(INSTANCES):
            gamma, phi1, psi = gen.instance(max_premises=4)
            phi2 = gen.formula(2)
            if cf(gamma, Or((phi1, phi2)), psi):
                assert cf(gamma, phi1, psi) or cf(gamma, phi2, psi), f"seed={seed} case={i}"

    def test_sda_and(self):
        """测试再加上 Γ ⊬ ¬φ1、Γ ⊬ ¬φ2 时两个析取支都成立"""
        seed, gen = generator(9)
        for i in range(INSTANCES):
            gamma, phi1, psi = gen.instance(max_premises=4)
            phi2 = gen.formula(2)
            if entails(gamma, Not(phi1)) or entails(gamma, Not(phi2)):
                continue
            if cf(gamma, Or((phi1, phi2)), psi):
                assert cf(gamma, phi1, psi) and cf(gamma, phi2, psi), f"seed={seed} case={i}"

    def test_a4(self):
        """测试 Γ ⊬ ¬φ 时 φ ↪ ψ 与 φ ↪ χ 给出 (φ ∧ ψ) ↪ χ"""
        seed, gen = generator(10)
        for i in range(INSTANCES):
            gamma, phi, psi = gen.instance(max_premises=4)
            chi = gen.formula(2)
            if entails(gamma, Not(phi)) and not consistent([phi], 5000).inconsistent:
                continue
            if cf(gamma, phi, psi) and cf(gamma, phi, chi):
                assert cf(gamma, And((phi, psi)), chi), f"seed={seed} case={i}"

    def test_a4_needs_consistent_antecedent(self):
        """测试 Γ ⊢ ¬φ 时 A4 可以不成立（不同子集给出两个见证）"""
        p, q, r = Atom("p0"), Atom("p1"), Atom("p2")
        gamma = [Implies(p, q), And((Not(q), r))]
        assert cf(gamma, p, q)
        assert cf(gamma, p, r)
        assert not cf(gamma, And((p, q)), r)


class TestStructural:
    """单调性、荒谬后件、顺序无关与上下文提升"""

    def test_prove_monotone(self):
        """测试 prove 对假设单调"""
        seed, gen = generator(11)
        for i in range(INSTANCES):
            gamma, goal, _ = gen.instance(max_premises=4)
            if entails(gamma, goal):
                assert entails([*gamma, *gen.premises(2)], goal), f"seed={seed} case={i}"

    def test_cf_monotone(self):
        """测试 Γ ⊢ φ ↪ ψ 蕴含 Γ ∪ Δ ⊢ φ ↪ ψ"""
        seed, gen = generator(12)
        for i in range(INSTANCES):
            gamma, phi, psi = gen.instance(max_premises=3)
            if cf(gamma, phi, psi):
                delta = gen.premises(2)
                assert cf([*gamma, *delta], phi, psi), f"seed={seed} case={i}"

    def test_absurd_consequent(self):
        """测试 Γ ⊢ φ ↪ ⊥ 当且仅当 φ 不一致"""
        seed, gen = generator(13)
        for i in range(2 * INSTANCES):
            gamma, phi, _ = gen.instance(max_premises=4)
            if i % 4 == 0:
                phi = And((phi, Not(phi)))
            expected = consistent([phi], 5000).inconsistent
            assert cf(gamma, phi, FALSE) == expected, f"seed={seed} case={i}"

    def test_order_invariance(self):
        """测试 small-first 与 large-first 判定一致"""
        seed, gen = generator(14)
        for i in range(INSTANCES):
            gamma, phi, psi = gen.instance(max_premises=4)
            small = cf(gamma, phi, psi, SubsetOrder.SMALL_FIRST)
            large = cf(gamma, phi, psi, SubsetOrder.LARGE_FIRST)
            assert small == large, f"seed={seed} case={i}"

    def test_contextual_lifting(self):
        """测试把 Γ 包进固定上下文后 Υ[φ ↪ ψ] 与 φ ↪ ψ 同判定"""
        seed, gen = generator(15)
        ctx = gen.context()
        for i in range(INSTANCES):
            gamma, phi, psi = gen.instance(max_premises=4)
            lifted = prove_counterfactual_in_context(lift(gamma, ctx), ctx, phi, psi, CFG)
            assert lifted.proved == cf(gamma, phi, psi), f"seed={seed} case={i} ctx={ctx}"
