# core/prover/clauses.py
"""子句形式：去蕴含、否定范式、Skolem 化、分配为合取范式

只接受一阶公式（模态子公式必须已经影子化）。等词作为谓词 "=" 的字面量保存。
"""
from dataclasses import dataclass
from itertools import product
from typing import List, Sequence, Tuple

from core.kernel.formulas import (
    FALSE, TRUE, And, Atom, Eq, Exists, Forall, Formula, Iff, Implies, Not, Or,
    free_vars, is_modal, substitute,
)
from core.kernel.printer import print_term
from core.kernel.terms import App, Substitution, Term, Var, substitute_term, term_size, term_vars

EQUALITY = "="
SHADOW_PREFIX = "@"
DEFINITION_PREFIX = "%def"
# 析取分配超过该子句数时引入定义原子
DISTRIBUTION_LIMIT = 64


@dataclass(frozen=True)
class Literal:
    positive: bool
    pred: str
    args: Tuple[Term, ...] = ()

    @property
    def is_equality(self) -> bool:
        return self.pred == EQUALITY

    @property
    def is_shadow(self) -> bool:
        return self.pred.startswith(SHADOW_PREFIX)

    def negate(self) -> "Literal":
        return Literal(not self.positive, self.pred, self.args)

    def substitute(self, subst: Substitution) -> "Literal":
        if not subst:
            return self
        return Literal(self.positive, self.pred, tuple(substitute_term(a, subst) for a in self.args))

    def weight(self) -> int:
        return 1 + sum(term_size(a) for a in self.args)

    def __str__(self) -> str:
        sign = "" if self.positive else "~"
        if self.is_equality:
            return f"{sign}({print_term(self.args[0])} = {print_term(self.args[1])})"
        if not self.args:
            return f"{sign}{self.pred}"
        return f"{sign}{self.pred}({', '.join(print_term(a) for a in self.args)})"


Clause = Tuple[Literal, ...]


def literal_key(lit: Literal) -> str:
    return str(lit)


def make_clause(literals: Sequence[Literal]) -> Clause:
    """去重并按文本排序，得到确定的子句表示"""
    unique = {literal_key(l): l for l in literals}
    return tuple(unique[k] for k in sorted(unique))


def clause_vars(clause: Clause) -> List[Var]:
    seen: List[Var] = []
    for lit in clause:
        for arg in lit.args:
            for var in term_vars(arg):
                if var not in seen:
                    seen.append(var)
    return seen


def rename_clause(clause: Clause, tag: str) -> Clause:
    """把子句变量统一改名为 tag_i（保持排序）"""
    subst = {var: Var(f"{tag}_{i}", var.sort) for i, var in enumerate(clause_vars(clause))}
    return make_clause([lit.substitute(subst) for lit in clause])


def variant_key(clause: Clause) -> str:
    """变量改名无关的子句键"""
    return " | ".join(literal_key(l) for l in rename_clause(clause, "V"))


def clause_weight(clause: Clause) -> int:
    return sum(lit.weight() for lit in clause)


def is_tautology(clause: Clause) -> bool:
    keys = {literal_key(l) for l in clause}
    for lit in clause:
        if lit.positive and lit.is_equality and lit.args[0] == lit.args[1]:
            return True
        if lit.positive and literal_key(lit.negate()) in keys:
            return True
    return False


def drop_trivial_literals(clause: Clause) -> Clause:
    """删除恒假字面量 ¬(s = s)"""
    return tuple(
        lit for lit in clause
        if lit.positive or not lit.is_equality or lit.args[0] != lit.args[1]
    )


# ==================== 公式 → 子句 ====================

class Clausifier:
    """把一组一阶公式转换为子句集

    同一个 Clausifier 内 Skolem 函数与定义原子编号递增，保证互不冲突；
    对相同输入序列重新运行得到完全相同的子句（反驳回放依赖这一点）。
    """

    def __init__(self):
        self._skolems = 0
        self._definitions = 0
        self._fresh = 0

    def clausify(self, f: Formula) -> List[Clause]:
        nnf = _nnf(_eliminate(f), True)
        skolemized = self._skolemize(nnf, [])
        result = []
        for lits in self._cnf(skolemized):
            clause = _simplify(lits)
            if clause is not None:
                result.append(clause)
        return result

    # -------- Skolem 化 --------

    def _skolemize(self, f: Formula, universals: List[Var]) -> Formula:
        if isinstance(f, Forall):
            self._fresh += 1
            fresh = Var(f"x{self._fresh}", f.var.sort)
            body = substitute(f.body, {f.var: fresh})
            return self._skolemize(body, universals + [fresh])
        if isinstance(f, Exists):
            self._skolems += 1
            body_free = free_vars(f.body)
            args = tuple(v for v in universals if v in body_free)
            witness = App(f"sk{self._skolems}", args, f.var.sort)
            return self._skolemize(substitute(f.body, {f.var: witness}), universals)
        if isinstance(f, And):
            return And(tuple(self._skolemize(p, universals) for p in f.parts))
        if isinstance(f, Or):
            return Or(tuple(self._skolemize(p, universals) for p in f.parts))
        return f

    # -------- 合取范式 --------

    def _cnf(self, f: Formula) -> List[List[Literal]]:
        if isinstance(f, And):
            result: List[List[Literal]] = []
            for part in f.parts:
                result.extend(self._cnf(part))
            return result
        if isinstance(f, Or):
            groups = [self._cnf(part) for part in f.parts]
            size = 1
            for group in groups:
                size *= max(1, len(group))
            if size > DISTRIBUTION_LIMIT:
                groups, extra = self._define_large(f.parts, groups)
            else:
                extra = []
            combined = [
                [lit for clause in choice for lit in clause] for choice in product(*groups)
            ]
            return combined + extra
        return [[_literal(f)]]

    def _define_large(self, parts, groups):
        # 多子句的析取项替换为定义原子 d(x̄)，并加入 ¬d ∨ c_i
        new_groups, extra = [], []
        for part, group in zip(parts, groups):
            if len(group) <= 1:
                new_groups.append(group)
                continue
            self._definitions += 1
            variables = tuple(free_vars(part))
            definition = Literal(True, f"{DEFINITION_PREFIX}{self._definitions}", variables)
            new_groups.append([[definition]])
            for clause in group:
                extra.append([definition.negate(), *clause])
        return new_groups, extra


def _eliminate(f: Formula) -> Formula:
    if isinstance(f, Implies):
        return Or((Not(_eliminate(f.ante)), _eliminate(f.cons)))
    if isinstance(f, Iff):
        left, right = _eliminate(f.left), _eliminate(f.right)
        return And((Or((Not(left), right)), Or((left, Not(right)))))
    if isinstance(f, Not):
        return Not(_eliminate(f.body))
    if isinstance(f, And):
        return And(tuple(_eliminate(p) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(_eliminate(p) for p in f.parts))
    if isinstance(f, Forall):
        return Forall(f.var, _eliminate(f.body))
    if isinstance(f, Exists):
        return Exists(f.var, _eliminate(f.body))
    if is_modal(f):
        raise ValueError("modal subformula reached the clausifier; shadow it first")
    return f


def _nnf(f: Formula, positive: bool) -> Formula:
    if isinstance(f, Not):
        return _nnf(f.body, not positive)
    if isinstance(f, And):
        parts = tuple(_nnf(p, positive) for p in f.parts)
        return And(parts) if positive else Or(parts)
    if isinstance(f, Or):
        parts = tuple(_nnf(p, positive) for p in f.parts)
        return Or(parts) if positive else And(parts)
    if isinstance(f, Forall):
        body = _nnf(f.body, positive)
        return Forall(f.var, body) if positive else Exists(f.var, body)
    if isinstance(f, Exists):
        body = _nnf(f.body, positive)
        return Exists(f.var, body) if positive else Forall(f.var, body)
    if f == TRUE:
        return TRUE if positive else FALSE
    if f == FALSE:
        return FALSE if positive else TRUE
    return f if positive else Not(f)


def _literal(f: Formula) -> Literal:
    positive = True
    if isinstance(f, Not):
        positive, f = False, f.body
    if isinstance(f, Eq):
        return Literal(positive, EQUALITY, (f.left, f.right))
    if isinstance(f, Atom):
        return Literal(positive, f.pred, f.args)
    raise ValueError(f"not a literal: {f!r}")


def _simplify(lits: List[Literal]):
    """处理 true/false 字面量；恒真子句返回 None"""
    kept = []
    for lit in lits:
        if lit.pred == "true" and not lit.args:
            if lit.positive:
                return None
            continue
        if lit.pred == "false" and not lit.args:
            if not lit.positive:
                return None
            continue
        kept.append(lit)
    clause = drop_trivial_literals(make_clause(kept))
    if is_tautology(clause):
        return None
    return clause


def clausify_all(formulas: Sequence[Formula]) -> List[Tuple[int, Clause]]:
    """按顺序转换全部公式，返回 (来源公式下标, 子句) 列表"""
    clausifier = Clausifier()
    result = []
    for index, f in enumerate(formulas):
        for clause in clausifier.clausify(f):
            result.append((index, clause))
    return result

