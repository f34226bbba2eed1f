# core/kernel/printer.py
"""规范打印：公式、查询与问题文件的确定性文本形式"""
from typing import List

from core.kernel.formulas import (
    And, Atom, Common, Counterfactual, Eq, Exists, Forall, Formula, Iff, Implies,
    Modal, Not, Or, Ought, Says, alpha_normalize,
)
from core.kernel.terms import App, Term


def print_term(term: Term) -> str:
    if isinstance(term, App):
        if not term.args:
            return term.func
        return "(" + " ".join([term.func, *(print_term(a) for a in term.args)]) + ")"
    return term.name


def _sexpr(head: str, *parts: str) -> str:
    return "(" + " ".join((head, *parts)) + ")"


def print_formula(f: Formula) -> str:
    """把公式打印为规范的括号前缀文本

    Args:
        f: 公式

    Returns:
        str: 规范文本，例如 "(cf (not (Mortal socrates)) (not (Human socrates)))"
    """
    if isinstance(f, Atom):
        if not f.args:
            return f.pred
        return _sexpr(f.pred, *(print_term(a) for a in f.args))
    if isinstance(f, Eq):
        return _sexpr("=", print_term(f.left), print_term(f.right))
    if isinstance(f, Not):
        return _sexpr("not", print_formula(f.body))
    if isinstance(f, And):
        return _sexpr("and", *(print_formula(p) for p in f.parts))
    if isinstance(f, Or):
        return _sexpr("or", *(print_formula(p) for p in f.parts))
    if isinstance(f, Implies):
        return _sexpr("implies", print_formula(f.ante), print_formula(f.cons))
    if isinstance(f, Iff):
        return _sexpr("iff", print_formula(f.left), print_formula(f.right))
    if isinstance(f, (Forall, Exists)):
        head = "forall" if isinstance(f, Forall) else "exists"
        return _sexpr(head, f"({f.var.name} {f.var.sort})", print_formula(f.body))
    if isinstance(f, Modal):
        return _sexpr(f.op.value, print_term(f.agent), print_term(f.time), print_formula(f.body))
    if isinstance(f, Common):
        return _sexpr("C", print_term(f.time), print_formula(f.body))
    if isinstance(f, Says):
        agents = [print_term(f.speaker)]
        if f.addressee is not None:
            agents.append(print_term(f.addressee))
        return _sexpr("S", *agents, print_term(f.time), print_formula(f.body))
    if isinstance(f, Ought):
        return _sexpr(
            "O", print_term(f.agent), print_term(f.time),
            print_formula(f.condition), print_formula(f.action),
        )
    if isinstance(f, Counterfactual):
        return _sexpr("cf", print_formula(f.antecedent), print_formula(f.consequent))
    raise TypeError(f"not a formula: {f!r}")


def canonical_key(f: Formula) -> str:
    """α 规范化后的打印形式；α 等价的公式得到相同的键"""
    return print_formula(alpha_normalize(f))


def print_declaration(decl: tuple) -> str:
    kind = decl[0]
    if kind == "sort":
        _, name, parent = decl
        return f"(sort {name} {parent})" if parent else f"(sort {name})"
    if kind == "const":
        return f"(const {decl[1]} {decl[2]})"
    if kind == "func":
        _, name, arg_sorts, result = decl
        return f"(func {name} ({' '.join(arg_sorts)}) {result})"
    _, name, arg_sorts = decl
    return f"(rel {name} ({' '.join(arg_sorts)}))"


def print_query(query) -> str:
    from core.kernel.models import QueryKind

    if query.kind is QueryKind.ENTAIL:
        return _sexpr("entail", print_formula(query.formulas[0]))
    if query.kind is QueryKind.CF:
        return _sexpr("cf", *(print_formula(f) for f in query.formulas))
    entries = [
        _sexpr(e.op.value, print_term(e.agent), print_term(e.time))
        for e in query.context.entries
    ]
    return _sexpr("cf-in", *entries, *(print_formula(f) for f in query.formulas))


def print_problem(problem) -> str:
    """打印完整问题文件（只输出基础签名之外的用户声明）"""
    from core.kernel.sexpr import render

    lines: List[str] = [f"(problem {problem.name}"]
    for decl in problem.signature.user_declarations():
        lines.append("  " + print_declaration(decl))
    lines.append("  (assumptions")
    for f in problem.assumptions:
        lines.append("    " + print_formula(f))
    lines.append("  )")
    lines.append("  (queries")
    for query in problem.queries:
        lines.append("    " + print_query(query))
    lines.append("  )")
    for ext in problem.extensions:
        lines.append("  " + render(ext))
    lines.append(")")
    return "\n".join(lines) + "\n"
