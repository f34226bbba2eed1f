# core/kernel/checker.py
"""对代码中构造的公式做排序检查（解析器已在读取时完成同样的检查）"""
from core.kernel.errors import SortError
from core.kernel.formulas import (
    Atom, Common, Eq, Formula, Modal, Ought, Says, children, is_happens_literal,
)
from core.kernel.signature import SortedSignature
from core.kernel.terms import App, Const, Term, Var


def check_term(term: Term, signature: SortedSignature) -> None:
    """检查项的排序；出错时抛出 SortError"""
    if isinstance(term, Var):
        if not signature.has_sort(term.sort):
            raise SortError("variable of unknown sort", term.name, None, term.sort)
        return
    if isinstance(term, Const):
        declared = signature.constants.get(term.name)
        if declared is None:
            raise SortError("undeclared constant", term.name)
        if declared != term.sort:
            raise SortError("constant used at the wrong sort", term.name, declared, term.sort)
        return
    func = signature.functions.get(term.func)
    if func is None:
        raise SortError("undeclared function", term.func)
    if func.arity != len(term.args):
        raise SortError(
            "wrong number of arguments", term.func, str(func.arity), str(len(term.args)),
        )
    for arg, expected in zip(term.args, func.arg_sorts):
        check_term(arg, signature)
        if not signature.is_subsort(arg.sort, expected):
            raise SortError("ill-sorted argument", term.func, expected, arg.sort)


def _check_position(
    term: Term, expected: str, owner: str, signature: SortedSignature, strict: bool = True,
) -> None:
    if strict:
        check_term(term, signature)
    if not signature.is_subsort(term.sort, expected):
        raise SortError("ill-sorted argument", owner, expected, term.sort)


def check_formula(f: Formula, signature: SortedSignature, strict: bool = True) -> None:
    """递归检查公式的排序

    strict 为 False 时不要求符号已声明，只检查主体 / 时刻位置的排序。

    Raises:
        SortError: 任一位置排序不符
    """
    if not strict:
        _check_positions_only(f, signature)
        for child in children(f):
            check_formula(child, signature, strict=False)
        return
    if isinstance(f, Atom):
        relation = signature.relations.get(f.pred)
        if relation is None:
            raise SortError("undeclared relation", f.pred)
        if relation.arity != len(f.args):
            raise SortError(
                "wrong number of arguments", f.pred, str(relation.arity), str(len(f.args)),
            )
        for arg, expected in zip(f.args, relation.arg_sorts):
            _check_position(arg, expected, f.pred, signature)
    elif isinstance(f, Eq):
        check_term(f.left, signature)
        check_term(f.right, signature)
        if not signature.comparable(f.left.sort, f.right.sort):
            raise SortError("equality between incomparable sorts", "=", f.left.sort, f.right.sort)
    elif isinstance(f, Modal):
        _check_position(f.agent, "Agent", f.op.value, signature)
        _check_position(f.time, "Moment", f.op.value, signature)
    elif isinstance(f, Common):
        _check_position(f.time, "Moment", "C", signature)
    elif isinstance(f, Says):
        _check_position(f.speaker, "Agent", "S", signature)
        if f.addressee is not None:
            _check_position(f.addressee, "Agent", "S", signature)
        _check_position(f.time, "Moment", "S", signature)
    elif isinstance(f, Ought):
        _check_position(f.agent, "Agent", "O", signature)
        _check_position(f.time, "Moment", "O", signature)
        if not is_happens_literal(f.action):
            raise SortError("O expects a happens literal as its action", "O")
    for child in children(f):
        check_formula(child, signature)


def _check_positions_only(f: Formula, signature: SortedSignature) -> None:
    if isinstance(f, Modal):
        _check_position(f.agent, "Agent", f.op.value, signature, strict=False)
        _check_position(f.time, "Moment", f.op.value, signature, strict=False)
    elif isinstance(f, Common):
        _check_position(f.time, "Moment", "C", signature, strict=False)
    elif isinstance(f, Says):
        _check_position(f.speaker, "Agent", "S", signature, strict=False)
        if f.addressee is not None:
            _check_position(f.addressee, "Agent", "S", signature, strict=False)
        _check_position(f.time, "Moment", "S", signature, strict=False)
    elif isinstance(f, Ought):
        _check_position(f.agent, "Agent", "O", signature, strict=False)
        _check_position(f.time, "Moment", "O", signature, strict=False)
        if not is_happens_literal(f.action):
            raise SortError("O expects a happens literal as its action", "O")
