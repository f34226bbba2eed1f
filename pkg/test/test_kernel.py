# test/test_kernel.py
"""语言内核测试：解析、打印、排序检查与模态上下文"""

from pathlib import Path

import pytest

from core.harness.generators import FormulaGenerator
from core.kernel import (
    EMPTY_CONTEXT, Atom, ContextEntry, ContextOp, Const, Forall, KernelError, Modal, ModalContext,
    ModalOp, Not, ParseError, QueryKind, SignatureError, SortError, Var, alpha_equal, base_signature,
    extract_context, load_problem, parse_formula, parse_problem, print_formula, print_problem,
    project_context,
)
from core.kernel.formulas import And, Counterfactual, Or
from core.kernel.sexpr import MAX_DEPTH, read_one

DATA = Path(__file__).resolve().parent.parent / "data"
MODAL_HEADS = ("(K ", "(B ", "(D ", "(I ", "(P ", "(C ", "(S ", "(O ", "(cf ", "(forall ", "(exists ")

SIGNATURE_TEXT = """
(problem sig
  (const a Agent) (const b Agent)
  (const t Moment) (const t1 Moment) (const t2 Moment) (const u Moment)
  (const socrates Object) (const go ActionType)
  (rel P ()) (rel Q ()) (rel R ())
  (rel p0 ()) (rel p1 ()) (rel p2 ()) (rel p3 ()) (rel p4 ()) (rel p5 ())
  (rel Human (Object)) (rel Mortal (Object))
  (assumptions)
  (queries))
"""


def signature():
    return parse_problem(SIGNATURE_TEXT).signature


def f(text):
    return parse_formula(text, signature())


class TestParseProblem:
    """问题文件解析"""

    def test_socrates_file(self):
        """测试 Socrates 文件得到两条假设与三条查询"""
        problem = load_problem(str(DATA / "examples" / "socrates.clp"))
        assert problem.name == "socrates"
        assert len(problem.assumptions) == 2
        assert [q.kind for q in problem.queries] == [QueryKind.CF, QueryKind.ENTAIL, QueryKind.CF]
        assert print_formula(problem.assumptions[1]) == "(Human socrates)"

    def test_empty_assumptions(self):
        """测试空假设块得到 Γ = ∅"""
        problem = load_problem(str(DATA / "examples" / "empty.clp"))
        assert problem.assumptions == []
        assert print_formula(problem.queries[0].goal) == "(implies P P)"

    def test_cf_in_query(self):
        """测试 cf-in 查询携带上下文"""
        problem = load_problem(str(DATA / "examples" / "belief.clp"))
        query = problem.queries[0]
        assert query.kind is QueryKind.CF_IN
        assert str(query.context) == "⟨B,a,t⟩"
        assert print_formula(query.antecedent) == "p"

    def test_action_type_of_wrong_sort(self):
        """测试 action 的第二个参数为 Moment 时报排序错误"""
        text = """
        (problem bad
          (const a Agent) (const al Moment) (const t Moment)
          (assumptions (happens (action a al) t))
          (queries))
        """
        with pytest.raises(SortError) as info:
            parse_problem(text)
        assert info.value.symbol == "action"

    def test_agent_position_checked(self):
        """测试模态算子的主体位置必须是 Agent"""
        with pytest.raises(SortError):
            f("(K t t P)")

    def test_unexpected_paren_position(self):
        """测试语法错误携带行列号"""
        with pytest.raises(ParseError) as info:
            parse_problem(")")
        assert (info.value.line, info.value.column) == (1, 1)

    def test_unclosed_list(self):
        """测试未闭合的括号"""
        with pytest.raises(ParseError):
            parse_problem("(problem x (rel P ()) (assumptions P)")

    def test_nesting_limit(self):
        """测试嵌套超过上限报 ParseError，恰好在上限内可读"""
        with pytest.raises(ParseError) as info:
            read_one("(" * (MAX_DEPTH + 1) + ")" * (MAX_DEPTH + 1))
        assert "nesting deeper" in info.value.message
        assert info.value.column == MAX_DEPTH + 1
        assert read_one("(" * MAX_DEPTH + ")" * MAX_DEPTH).items

    def test_invalid_utf8_position(self, tmp_path):
        """测试非 UTF-8 字节报 ParseError，行列号指向坏字节"""
        bad = tmp_path / "bad.clp"
        bad.write_bytes(b"(problem x\n  (rel P \xff))")
        with pytest.raises(ParseError) as info:
            load_problem(str(bad))
        assert "byte 20" in info.value.message
        assert (info.value.line, info.value.column) == (2, 10)

    def test_unknown_relation(self):
        """测试未声明的关系"""
        with pytest.raises(KernelError):
            f("(Unknown socrates)")

    def test_duplicate_declaration(self):
        """测试重复声明"""
        with pytest.raises(SignatureError):
            parse_problem("(problem x (rel P ()) (rel P ()) (assumptions) (queries))")

    def test_frozen_signature(self):
        """测试解析后的签名不可再修改"""
        sig = signature()
        with pytest.raises(SignatureError):
            sig.declare_relation("Extra", ())

    def test_base_signature_sorts(self):
        """测试预声明排序森林"""
        sig = base_signature()
        assert sig.is_subsort("Action", "Event")
        assert sig.is_subsort("Situation", "Object")
        assert not sig.is_subsort("Agent", "Moment")


class TestPrinter:
    """规范打印"""

    def test_counterfactual(self):
        """测试反事实条件的打印形式"""
        s = Const("socrates", "Object")
        cf = Counterfactual(Not(Atom("Mortal", (s,))), Not(Atom("Human", (s,))))
        assert print_formula(cf) == "(cf (not (Mortal socrates)) (not (Human socrates)))"

    def test_forall(self):
        """测试量词的打印形式"""
        x = Var("x", "Agent")
        assert print_formula(Forall(x, Atom("P", (x,)))) == "(forall (x Agent) (P x))"

    def test_knows(self):
        """测试模态算子的打印形式"""
        k = Modal(ModalOp.KNOWS, Const("a", "Agent"), Const("t", "Moment"), Atom("P"))
        assert print_formula(k) == "(K a t P)"

    def test_round_trip_examples(self):
        """测试手写公式的解析-打印往返"""
        for text in (
            "(forall (x Object) (implies (Human x) (Mortal x)))",
            "(B a t1 (K b t2 P))",
            "(C t (and P (not Q)))",
            "(cf (or P Q) (iff Q R))",
            "(exists (x Object) (and (Human x) (= x socrates)))",
        ):
            assert print_formula(f(text)) == text

    def test_round_trip_generated(self):
        """测试随机命题公式往返后 α 等价"""
        gen = FormulaGenerator(seed=7)
        sig = signature()
        for _ in range(100):
            formula = gen.formula()
            again = parse_formula(print_formula(formula), sig)
            assert alpha_equal(formula, again), f"seed=7 {print_formula(formula)}"

    def test_round_trip_generated_modal(self):
        """测试随机模态公式（K B D I P、C、S、O、↪、量词）往返后 α 等价"""
        gen = FormulaGenerator(seed=11)
        sig = signature()
        seen = set()
        for _ in range(200):
            formula = gen.modal_formula()
            text = print_formula(formula)
            seen.update(head for head in MODAL_HEADS if head in text)
            assert alpha_equal(formula, parse_formula(text, sig)), f"seed=11 {text}"
        assert seen == set(MODAL_HEADS)

    def test_print_problem_reparses(self):
        """测试打印出的问题文件可以重新解析"""
        problem = load_problem(str(DATA / "examples" / "socrates.clp"))
        again = parse_problem(print_problem(problem))
        assert [print_formula(x) for x in again.assumptions] == [print_formula(x) for x in problem.assumptions]
        assert len(again.queries) == 3


class TestModalContext:
    """模态上下文 Υ"""

    def test_extract_nested(self):
        """测试 B(a,t1,K(b,t2,P)) 的上下文为 ⟨B,a,t1,K,b,t2⟩"""
        ctx, body = extract_context(f("(B a t1 (K b t2 P))"))
        assert str(ctx) == "⟨B,a,t1,K,b,t2⟩"
        assert body == Atom("P")

    def test_extract_non_modal(self):
        """测试顶层非模态公式的上下文为空"""
        formula = f("(and P Q)")
        ctx, body = extract_context(formula)
        assert ctx == EMPTY_CONTEXT
        assert body == formula

    def test_extract_desire(self):
        """测试单层 D 上下文"""
        ctx, body = extract_context(f("(D a t (or P Q))"))
        assert str(ctx) == "⟨D,a,t⟩"
        assert isinstance(body, Or)

    def test_wrap_inverts_extract(self):
        """测试 wrap 与 extract 互逆"""
        formula = f("(B a t1 (K b t2 (and P Q)))")
        ctx, body = extract_context(formula)
        assert ctx.wrap(body) == formula

    def test_project_matching(self):
        """测试按上下文投影"""
        a, t = Const("a", "Agent"), Const("t", "Moment")
        gamma = [f("(K a t P)"), f("(B a t Q)"), f("R")]
        ctx = ModalContext((ContextEntry(ContextOp.K, a, t),))
        assert project_context(gamma, ctx) == [Atom("P")]

    def test_project_empty_context(self):
        """测试空上下文只保留无模态前缀的成员"""
        assert project_context([f("(K a t P)")], EMPTY_CONTEXT) == []
        assert project_context([f("(K a t P)"), f("R")], EMPTY_CONTEXT) == [Atom("R")]

    def test_project_prefix(self):
        """测试投影取前缀后的剩余部分"""
        a, t = Const("a", "Agent"), Const("t", "Moment")
        gamma = [f("(B a t (K b u P))"), f("(B a t Q)")]
        ctx = ModalContext((ContextEntry(ContextOp.B, a, t),))
        assert [print_formula(x) for x in project_context(gamma, ctx)] == ["(K b u P)", "Q"]

    def test_project_keeps_order(self):
        """测试投影保持 Γ 的顺序"""
        gamma = [f("(B a t R)"), f("(K a t P)"), f("(B a t (and P Q))")]
        a, t = Const("a", "Agent"), Const("t", "Moment")
        ctx = ModalContext((ContextEntry(ContextOp.B, a, t),))
        projected = project_context(gamma, ctx)
        assert projected[0] == Atom("R")
        assert isinstance(projected[1], And)
