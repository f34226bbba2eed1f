# core/kernel/parser.py
"""问题文件与公式的解析器（解析同时完成排序检查）

文法：
    file    := (problem <name> <decl>* (assumptions <formula>*) (queries <query>*) [(dde ...)])
    decl    := (sort <name> [<parent>]) | (const <name> <sort>)
             | (func <name> (<sort>*) <sort>) | (rel <name> (<sort>*))
    query   := (entail <formula>) | (cf <formula> <formula>)
             | (cf-in <context-entry>* <formula> <formula>)
    context-entry := ((K|B|D) <agent-term> <time-term>)
"""
from typing import Dict, List, Optional

from core.kernel.context import ContextEntry, ContextOp, ModalContext
from core.kernel.errors import KernelError, ParseError, SignatureError, SortError
from core.kernel.formulas import (
    FALSE, TRUE, And, Atom, Common, Counterfactual, Eq, Exists, Forall, Formula, Iff,
    Implies, Modal, ModalOp, Not, Or, Ought, Says, is_happens_literal,
)
from core.kernel.models import Problem, Query, QueryKind
from core.kernel.sexpr import SExpr, SList, Symbol, read_all, read_one
from core.kernel.signature import SortedSignature, base_signature
from core.kernel.terms import App, Const, Term, Var

Scope = Dict[str, Var]

EXTENSION_HEADS = frozenset({"dde"})
_MODAL_HEADS = {op.value: op for op in ModalOp}


def _fail(message: str, expr: SExpr) -> ParseError:
    return ParseError(message, expr.line, expr.column)


def _sort_fail(message: str, expr: SExpr, symbol: str, expected=None, actual=None) -> SortError:
    return SortError(f"line {expr.line}, column {expr.column}: {message}", symbol, expected, actual)


def _symbol(expr: SExpr, what: str) -> str:
    if not isinstance(expr, Symbol):
        raise _fail(f"expected {what}", expr)
    return expr.text


def _expect_len(expr: SList, count: int) -> None:
    if len(expr) != count:
        raise _fail(f"'{expr.head}' expects {count - 1} argument(s), got {len(expr) - 1}", expr)


# ==================== 项 ====================

def read_term(expr: SExpr, signature: SortedSignature, scope: Optional[Scope] = None) -> Term:
    """解析项并检查排序

    Args:
        expr: S 表达式
        signature: 签名
        scope: 约束变量作用域

    Returns:
        Term: 解析出的项
    """
    scope = scope or {}
    if isinstance(expr, Symbol):
        name = expr.text
        if name in scope:
            return scope[name]
        if name in signature.constants:
            return Const(name, signature.constants[name])
        func = signature.functions.get(name)
        if func is not None and func.arity == 0:
            return App(name, (), func.result_sort)
        raise _fail(f"unknown term symbol '{name}'", expr)
    if not expr.items:
        raise _fail("empty list is not a term", expr)
    name = _symbol(expr.items[0], "function symbol")
    func = signature.functions.get(name)
    if func is None:
        raise _fail(f"unknown function symbol '{name}'", expr)
    args = expr.items[1:]
    if len(args) != func.arity:
        raise _fail(f"function '{name}' expects {func.arity} argument(s), got {len(args)}", expr)
    terms = []
    for arg, expected in zip(args, func.arg_sorts):
        term = read_term(arg, signature, scope)
        if not signature.is_subsort(term.sort, expected):
            raise _sort_fail(
                f"ill-sorted argument of '{name}'", arg, name, expected, term.sort,
            )
        terms.append(term)
    return App(name, tuple(terms), func.result_sort)


def _read_sorted_term(
    expr: SExpr, expected: str, signature: SortedSignature, scope: Scope, owner: str,
) -> Term:
    term = read_term(expr, signature, scope)
    if not signature.is_subsort(term.sort, expected):
        raise _sort_fail(f"ill-sorted argument of '{owner}'", expr, owner, expected, term.sort)
    return term


# ==================== 公式 ====================

def _read_binders(expr: SExpr, signature: SortedSignature) -> List[Var]:
    if not isinstance(expr, SList) or not expr.items:
        raise _fail("expected variable binder (name Sort)", expr)
    binders = [expr] if isinstance(expr.items[0], Symbol) else list(expr.items)
    result = []
    for binder in binders:
        if not isinstance(binder, SList) or len(binder) != 2:
            raise _fail("expected variable binder (name Sort)", binder)
        name = _symbol(binder.items[0], "variable name")
        sort = _symbol(binder.items[1], "sort name")
        if not signature.has_sort(sort):
            raise _sort_fail(f"unknown sort '{sort}'", binder.items[1], name, None, sort)
        result.append(Var(name, sort))
    return result


def read_formula(expr: SExpr, signature: SortedSignature, scope: Optional[Scope] = None) -> Formula:
    """解析公式并检查排序（主体位置 ⊑ Agent，时刻位置 ⊑ Moment）"""
    scope = scope or {}
    if isinstance(expr, Symbol):
        name = expr.text
        if name == "true":
            return TRUE
        if name == "false":
            return FALSE
        relation = signature.relations.get(name)
        if relation is not None and relation.arity == 0:
            return Atom(name)
        if relation is not None:
            raise _fail(f"relation '{name}' expects {relation.arity} argument(s)", expr)
        raise _fail(f"unknown proposition '{name}'", expr)
    if not expr.items:
        raise _fail("empty list is not a formula", expr)

    head = _symbol(expr.items[0], "operator or relation")
    items = expr.items[1:]

    def sub(item: SExpr, inner: Scope = scope) -> Formula:
        return read_formula(item, signature, inner)

    def agent(item: SExpr) -> Term:
        return _read_sorted_term(item, "Agent", signature, scope, head)

    def moment(item: SExpr) -> Term:
        return _read_sorted_term(item, "Moment", signature, scope, head)

    if head == "not":
        _expect_len(expr, 2)
        return Not(sub(items[0]))
    if head == "and":
        return And(tuple(sub(i) for i in items))
    if head == "or":
        return Or(tuple(sub(i) for i in items))
    if head == "implies":
        _expect_len(expr, 3)
        return Implies(sub(items[0]), sub(items[1]))
    if head == "iff":
        _expect_len(expr, 3)
        return Iff(sub(items[0]), sub(items[1]))
    if head == "=":
        _expect_len(expr, 3)
        left = read_term(items[0], signature, scope)
        right = read_term(items[1], signature, scope)
        if not signature.comparable(left.sort, right.sort):
            raise _sort_fail("equality between incomparable sorts", expr, "=", left.sort, right.sort)
        return Eq(left, right)
    if head in ("forall", "exists"):
        _expect_len(expr, 3)
        variables = _read_binders(items[0], signature)
        inner = dict(scope)
        for var in variables:
            inner[var.name] = var
        body = sub(items[1], inner)
        cls = Forall if head == "forall" else Exists
        for var in reversed(variables):
            body = cls(var, body)
        return body
    if head in _MODAL_HEADS:
        _expect_len(expr, 4)
        return Modal(_MODAL_HEADS[head], agent(items[0]), moment(items[1]), sub(items[2]))
    if head == "C":
        _expect_len(expr, 3)
        return Common(moment(items[0]), sub(items[1]))
    if head == "S":
        if len(items) == 3:
            return Says(agent(items[0]), None, moment(items[1]), sub(items[2]))
        _expect_len(expr, 5)
        return Says(agent(items[0]), agent(items[1]), moment(items[2]), sub(items[3]))
    if head == "O":
        _expect_len(expr, 5)
        action = sub(items[3])
        if not is_happens_literal(action):
            raise _fail("O expects a (not) (happens (action a α) t) literal as its action", items[3])
        return Ought(agent(items[0]), moment(items[1]), sub(items[2]), action)
    if head == "cf":
        _expect_len(expr, 3)
        return Counterfactual(sub(items[0]), sub(items[1]))

    relation = signature.relations.get(head)
    if relation is None:
        raise _fail(f"unknown relation '{head}'", expr)
    if len(items) != relation.arity:
        raise _fail(f"relation '{head}' expects {relation.arity} argument(s), got {len(items)}", expr)
    args = tuple(
        _read_sorted_term(item, expected, signature, scope, head)
        for item, expected in zip(items, relation.arg_sorts)
    )
    return Atom(head, args)


def parse_formula(text: str, signature: SortedSignature) -> Formula:
    """从文本解析单个闭公式"""
    return read_formula(read_one(text), signature)


# ==================== 问题文件 ====================

def _read_declaration(expr: SList, signature: SortedSignature) -> None:
    kind = expr.head
    try:
        if kind == "sort":
            if len(expr) not in (2, 3):
                raise _fail("sort declaration expects a name and optional parent", expr)
            parent = _symbol(expr.items[2], "parent sort") if len(expr) == 3 else None
            signature.declare_sort(_symbol(expr.items[1], "sort name"), parent)
        elif kind == "const":
            _expect_len(expr, 3)
            signature.declare_constant(
                _symbol(expr.items[1], "constant name"), _symbol(expr.items[2], "sort name"),
            )
        elif kind in ("func", "rel"):
            _expect_len(expr, 4 if kind == "func" else 3)
            name = _symbol(expr.items[1], "symbol name")
            sorts_expr = expr.items[2]
            if not isinstance(sorts_expr, SList):
                raise _fail("expected a list of argument sorts", sorts_expr)
            arg_sorts = tuple(_symbol(s, "sort name") for s in sorts_expr.items)
            if kind == "func":
                signature.declare_function(name, arg_sorts, _symbol(expr.items[3], "sort name"))
            else:
                signature.declare_relation(name, arg_sorts)
        else:
            raise _fail(f"unknown declaration '{kind}'", expr)
    except SignatureError as e:
        raise SignatureError(f"line {expr.line}, column {expr.column}: {e}") from e


def _read_context_entry(expr: SExpr, signature: SortedSignature) -> ContextEntry:
    if not isinstance(expr, SList) or len(expr) != 3 or expr.head not in ("K", "B", "D"):
        raise _fail("context entries have the form ((K|B|D) agent time)", expr)
    op = ContextOp(expr.head)
    agent = _read_sorted_term(expr.items[1], "Agent", signature, {}, expr.head)
    time = _read_sorted_term(expr.items[2], "Moment", signature, {}, expr.head)
    return ContextEntry(op, agent, time)


def read_query(expr: SExpr, signature: SortedSignature) -> Query:
    if not isinstance(expr, SList):
        raise _fail("expected a query", expr)
    kind = expr.head
    if kind == "entail":
        _expect_len(expr, 2)
        return Query(QueryKind.ENTAIL, (read_formula(expr.items[1], signature),))
    if kind == "cf":
        _expect_len(expr, 3)
        pair = tuple(read_formula(i, signature) for i in expr.items[1:])
        return Query(QueryKind.CF, pair)
    if kind == "cf-in":
        if len(expr) < 3:
            raise _fail("cf-in expects a context, an antecedent and a consequent", expr)
        entries = tuple(_read_context_entry(i, signature) for i in expr.items[1:-2])
        pair = tuple(read_formula(i, signature) for i in expr.items[-2:])
        return Query(QueryKind.CF_IN, pair, ModalContext(entries))
    raise _fail(f"unknown query kind '{kind}'", expr)


def read_problem(expr: SExpr, base: Optional[SortedSignature] = None) -> Problem:
    """把已读取的 S 表达式转换为 Problem"""
    if not isinstance(expr, SList) or expr.head != "problem" or len(expr) < 2:
        raise _fail("expected (problem <name> ...)", expr)
    name = _symbol(expr.items[1], "problem name")
    signature = (base if base is not None else base_signature()).copy()
    assumptions: List[Formula] = []
    queries: List[Query] = []
    extensions: List[SExpr] = []
    seen_assumptions = seen_queries = False

    for item in expr.items[2:]:
        if not isinstance(item, SList) or not item.head:
            raise _fail("expected a declaration or block", item)
        head = item.head
        if head == "assumptions":
            if seen_assumptions:
                raise _fail("duplicate assumptions block", item)
            seen_assumptions = True
            assumptions = [read_formula(f, signature) for f in item.items[1:]]
        elif head == "queries":
            if not seen_assumptions or seen_queries:
                raise _fail("queries block must follow a single assumptions block", item)
            seen_queries = True
            queries = [read_query(q, signature) for q in item.items[1:]]
        elif head in EXTENSION_HEADS:
            if not seen_queries:
                raise _fail(f"'{head}' block must follow the queries block", item)
            extensions.append(item)
        elif seen_assumptions:
            raise _fail(f"unexpected block '{head}'", item)
        else:
            _read_declaration(item, signature)

    if not seen_assumptions:
        raise _fail("missing assumptions block", expr)
    if not seen_queries:
        raise _fail("missing queries block", expr)
    return Problem(name, signature.freeze(), assumptions, queries, extensions)


def parse_problem(text: str, base: Optional[SortedSignature] = None) -> Problem:
    """解析问题文件文本

    Args:
        text: 文件内容
        base: 基础签名；缺省为预声明事件演算签名

    Returns:
        Problem: 排序检查通过的问题

    Raises:
        ParseError: 语法错误（带行列号）
        SortError: 排序错误（带符号、期望与实际排序）
        SignatureError: 声明错误
    """
    exprs = read_all(text)
    if len(exprs) != 1:
        where = exprs[1] if len(exprs) > 1 else None
        line, column = (where.line, where.column) if where is not None else (1, 1)
        raise ParseError("a problem file holds exactly one (problem ...) form", line, column)
    return read_problem(exprs[0], base)


def load_problem(path: str, base: Optional[SortedSignature] = None) -> Problem:
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        line = raw.count(b"\n", 0, e.start) + 1
        column = e.start - (raw.rfind(b"\n", 0, e.start) + 1) + 1
        raise ParseError(f"invalid UTF-8 at byte {e.start}", line, column) from e
    return parse_problem(text, base)


__all__ = [
    "KernelError", "read_term", "read_formula", "parse_formula", "read_query",
    "read_problem", "parse_problem", "load_problem", "EXTENSION_HEADS",
]
