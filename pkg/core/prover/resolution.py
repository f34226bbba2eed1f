# core/prover/resolution.py
"""带排序的一阶归结反驳（given-clause 循环）

推理规则：二元归结、因子化、等词归结、调解（paramodulation）。
调解从不改写影子原子，也不从变量一侧出发，因此等词无法穿透内涵位置。
化简：重言式删除、前向包含删除。
"""
import heapq
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Set, Tuple

import config
from core.kernel.signature import SortedSignature
from core.kernel.terms import Substitution, Var, replace_at, subterms, term_size
from core.prover.clauses import (
    Clause, Literal, clause_weight, drop_trivial_literals, is_tautology,
    make_clause, rename_clause, variant_key,
)
from core.prover.models import Deadline, RefutationStep
from core.prover.unify import match_args, unify, unify_args
from util.log import get_logger

logger = get_logger("Resolution")


class SearchStatus(Enum):
    """归结搜索的结束方式"""
    REFUTED = "refuted"        # 推出空子句
    SATURATED = "saturated"    # 无新子句可生成，且未丢弃任何子句
    TIMEOUT = "timeout"        # 墙钟时限到
    LIMIT = "limit"            # 触及子句数 / 权重上限


@dataclass
class ClauseRecord:
    index: int
    clause: Clause
    rule: str
    parents: Tuple[int, ...] = ()
    weight: int = 0


@dataclass
class RefutationResult:
    status: SearchStatus
    trace: List[RefutationStep] = field(default_factory=list)
    generated: int = 0

    @property
    def refuted(self) -> bool:
        return self.status is SearchStatus.REFUTED


# ==================== 单步推理（回放也复用） ====================

def resolvents(a: Clause, b: Clause, signature: SortedSignature) -> Iterator[Clause]:
    """a 与 b 的全部二元归结式（调用方保证两者变量不相交）"""
    for i, la in enumerate(a):
        for j, lb in enumerate(b):
            if la.positive == lb.positive or la.pred != lb.pred or len(la.args) != len(lb.args):
                continue
            candidates = [lb.args]
            if la.is_equality:
                candidates.append((lb.args[1], lb.args[0]))
            for args in candidates:
                subst = unify_args(la.args, args, signature)
                if subst is None:
                    continue
                rest = [l for k, l in enumerate(a) if k != i] + [l for k, l in enumerate(b) if k != j]
                yield make_clause([l.substitute(subst) for l in rest])


def factors(a: Clause, signature: SortedSignature) -> Iterator[Clause]:
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            li, lj = a[i], a[j]
            if li.positive != lj.positive or li.pred != lj.pred:
                continue
            subst = unify_args(li.args, lj.args, signature)
            if subst is not None:
                yield make_clause([l.substitute(subst) for k, l in enumerate(a) if k != j])


def equality_resolvents(a: Clause, signature: SortedSignature) -> Iterator[Clause]:
    for i, lit in enumerate(a):
        if lit.positive or not lit.is_equality:
            continue
        subst = unify(lit.args[0], lit.args[1], signature)
        if subst is not None:
            yield make_clause([l.substitute(subst) for k, l in enumerate(a) if k != i])


def paramodulants(source: Clause, target: Clause, signature: SortedSignature) -> Iterator[Clause]:
    """用 source 中的正等式 s = r 改写 target 的非变量子项（跳过影子原子）"""
    for i, eq in enumerate(source):
        if not eq.positive or not eq.is_equality:
            continue
        for lhs, rhs in ((eq.args[0], eq.args[1]), (eq.args[1], eq.args[0])):
            if isinstance(lhs, Var) or term_size(rhs) > term_size(lhs):
                continue
            for j, lit in enumerate(target):
                if lit.is_shadow:
                    continue
                for arg_index, arg in enumerate(lit.args):
                    for path, sub in subterms(arg):
                        if isinstance(sub, Var):
                            continue
                        subst = unify(lhs, sub, signature)
                        if subst is None:
                            continue
                        new_args = list(lit.args)
                        new_args[arg_index] = replace_at(arg, path, rhs)
                        rewritten = Literal(lit.positive, lit.pred, tuple(new_args))
                        rest = [l for k, l in enumerate(source) if k != i]
                        rest += [l for k, l in enumerate(target) if k != j]
                        rest.append(rewritten)
                        yield make_clause([l.substitute(subst) for l in rest])


def subsumes(general: Clause, specific: Clause, signature: SortedSignature) -> bool:
    """general 是否包含 specific（存在 σ 使 general·σ ⊆ specific）"""
    if len(general) > len(specific):
        return False

    def search(index: int, subst: Substitution) -> bool:
        if index == len(general):
            return True
        lit = general[index]
        for candidate in specific:
            if candidate.positive != lit.positive or candidate.pred != lit.pred:
                continue
            extended = match_args(lit.args, candidate.args, signature, subst)
            if extended is not None and search(index + 1, extended):
                return True
        return False

    return search(0, {})


# ==================== 搜索主循环 ====================

class Refuter:
    """given-clause 循环

    使用方式：add_input() 逐条加入输入子句，然后 run()。
    """

    def __init__(
        self,
        signature: SortedSignature,
        deadline: Deadline,
        max_clauses: Optional[int] = None,
        max_weight: int = config.PROVER_MAX_WEIGHT,
    ):
        self.signature = signature
        self.deadline = deadline
        self.max_clauses = max_clauses
        self.max_weight = max_weight
        self.records: List[ClauseRecord] = []
        self._queue: List[Tuple[int, int]] = []
        self._usable: List[ClauseRecord] = []
        self._seen: Set[str] = set()
        self._by_pred: Dict[str, List[ClauseRecord]] = {}
        self._dropped = False
        self._empty: Optional[int] = None

    # -------- 子句登记 --------

    def add_input(self, clause: Clause) -> None:
        self._register(clause, "input", ())

    def _register(self, clause: Clause, rule: str, parents: Tuple[int, ...]) -> Optional[ClauseRecord]:
        clause = drop_trivial_literals(clause)
        if is_tautology(clause):
            return None
        key = variant_key(clause)
        if key in self._seen:
            return None
        weight = clause_weight(clause)
        if weight > self.max_weight:
            self._dropped = True
            return None
        if rule != "input" and self._subsumed(clause):
            return None
        self._seen.add(key)
        index = len(self.records)
        record = ClauseRecord(index, rename_clause(clause, f"c{index}"), rule, parents, weight)
        self.records.append(record)
        if not clause:
            self._empty = index
            return record
        heapq.heappush(self._queue, (weight, index))
        return record

    def _subsumed(self, clause: Clause) -> bool:
        preds = {lit.pred for lit in clause}
        for pred in preds:
            for record in self._by_pred.get(pred, ()):
                if len(record.clause) <= len(clause) and subsumes(record.clause, clause, self.signature):
                    return True
        return False

    # -------- 主循环 --------

    def run(self) -> RefutationResult:
        """执行搜索直到推出空子句、饱和、超时或触及上限"""
        status = self._loop()
        trace = self._trace(self._empty) if status is SearchStatus.REFUTED else []
        logger.debug(f"{status.value} after {len(self.records)} clauses")
        return RefutationResult(status, trace, len(self.records))

    def _loop(self) -> SearchStatus:
        if self._empty is not None:
            return SearchStatus.REFUTED
        while self._queue:
            if self.deadline.expired():
                return SearchStatus.TIMEOUT
            _, index = heapq.heappop(self._queue)
            given = self.records[index]
            if self._subsumed_by_usable(given):
                continue
            self._usable.append(given)
            for lit in given.clause:
                self._by_pred.setdefault(lit.pred, []).append(given)
            for clause, rule, parents in self._inferences(given):
                if self.deadline.expired():
                    return SearchStatus.TIMEOUT
                self._register(clause, rule, parents)
                if self._empty is not None:
                    return SearchStatus.REFUTED
                if self.max_clauses is not None and len(self.records) >= self.max_clauses:
                    return SearchStatus.LIMIT
        return SearchStatus.LIMIT if self._dropped else SearchStatus.SATURATED

    def _subsumed_by_usable(self, given: ClauseRecord) -> bool:
        for record in self._usable:
            if len(record.clause) <= len(given.clause) and subsumes(record.clause, given.clause, self.signature):
                return True
        return False

    def _inferences(self, given: ClauseRecord) -> Iterator[Tuple[Clause, str, Tuple[int, ...]]]:
        clause = given.clause
        for factor in factors(clause, self.signature):
            yield factor, "factor", (given.index,)
        for resolved in equality_resolvents(clause, self.signature):
            yield resolved, "eq_resolve", (given.index,)
        for other in list(self._usable):
            partner = other.clause
            if other.index == given.index:
                partner = rename_clause(partner, f"r{given.index}")
            for resolvent in resolvents(clause, partner, self.signature):
                yield resolvent, "resolve", (given.index, other.index)
            for para in paramodulants(clause, partner, self.signature):
                yield para, "paramodulate", (given.index, other.index)
            if other.index != given.index:
                for para in paramodulants(partner, clause, self.signature):
                    yield para, "paramodulate", (other.index, given.index)

    def _trace(self, index: int) -> List[RefutationStep]:
        needed: Set[int] = set()
        stack = [index]
        while stack:
            current = stack.pop()
            if current in needed:
                continue
            needed.add(current)
            stack.extend(self.records[current].parents)
        return [
            RefutationStep(r.index, r.clause, r.rule, r.parents)
            for r in self.records if r.index in needed
        ]


def refute(
    clauses: List[Clause],
    signature: SortedSignature,
    deadline: Deadline,
    max_clauses: Optional[int] = None,
) -> RefutationResult:
    """对子句集做归结反驳"""
    refuter = Refuter(signature, deadline, max_clauses)
    for clause in clauses:
        refuter.add_input(clause)
    return refuter.run()

