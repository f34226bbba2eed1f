# core/harness/oracle.py
"""命题片段上的真值表判定器

与证明器完全独立：一致性即可满足性，⊢ 即语义蕴涵（命题逻辑中两者都精确）。
真值表用 numpy 布尔矩阵按列向量化求值，每个公式只求值一次。
"""
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

import config
from core.kernel.formulas import (
    FALSE, TRUE, And, Atom, Formula, Iff, Implies, Not, Or, is_propositional, subformulas,
)
from core.kernel.printer import print_formula


class FragmentError(ValueError):
    """输入超出命题片段或超出判定器规模上限"""


@dataclass
class OracleVerdict:
    """精确判定结果

    witness 为 small-first 顺序下第一个满足条件的 Γ′ 的下标；
    inconsistent_antecedent 为 True 时由 ¬Cons[φ] 分支成立，witness 为 None。
    """
    entailed: bool
    witness: Optional[Tuple[int, ...]] = None
    inconsistent_antecedent: bool = False
    subsets_examined: int = 0


class TruthTable:
    """给定原子集合上的全部赋值（行数 2^m）"""

    def __init__(self, atoms: Sequence[str]):
        self.atoms = list(atoms)
        rows = np.arange(1 << len(self.atoms), dtype=np.int64)
        bits = (rows[:, None] >> np.arange(len(self.atoms), dtype=np.int64)) & 1
        self._columns: Dict[str, np.ndarray] = {
            name: bits[:, i].astype(bool) for i, name in enumerate(self.atoms)
        }
        self.size = len(rows)

    def evaluate(self, f: Formula) -> np.ndarray:
        """公式在每一行上的真值"""
        if f == TRUE:
            return np.ones(self.size, dtype=bool)
        if f == FALSE:
            return np.zeros(self.size, dtype=bool)
        if isinstance(f, Atom):
            return self._columns[f.pred]
        if isinstance(f, Not):
            return ~self.evaluate(f.body)
        if isinstance(f, And):
            result = np.ones(self.size, dtype=bool)
            for part in f.parts:
                result &= self.evaluate(part)
            return result
        if isinstance(f, Or):
            result = np.zeros(self.size, dtype=bool)
            for part in f.parts:
                result |= self.evaluate(part)
            return result
        if isinstance(f, Implies):
            return ~self.evaluate(f.ante) | self.evaluate(f.cons)
        if isinstance(f, Iff):
            return self.evaluate(f.left) == self.evaluate(f.right)
        raise FragmentError(f"not propositional: {print_formula(f)}")


def _atoms(formulas: Sequence[Formula]) -> List[str]:
    names: List[str] = []
    for f in formulas:
        if not is_propositional(f):
            raise FragmentError(f"not propositional: {print_formula(f)}")
        for node in subformulas(f):
            if isinstance(node, Atom) and node not in (TRUE, FALSE) and node.pred not in names:
                names.append(node.pred)
    if len(names) > config.ORACLE_MAX_ATOMS:
        raise FragmentError(f"{len(names)} atoms exceed the oracle limit of {config.ORACLE_MAX_ATOMS}")
    return sorted(names)


def _table(formulas: Sequence[Formula]) -> TruthTable:
    return TruthTable(_atoms(formulas))


def oracle_consistent(formulas: Sequence[Formula]) -> bool:
    """公式集是否可满足"""
    table = _table(formulas)
    rows = np.ones(table.size, dtype=bool)
    for f in formulas:
        rows &= table.evaluate(f)
    return bool(rows.any())


def oracle_entails(premises: Sequence[Formula], goal: Formula) -> bool:
    """premises ⊨ goal"""
    table = _table([*premises, goal])
    rows = ~table.evaluate(goal)
    for f in premises:
        rows &= table.evaluate(f)
    return not bool(rows.any())


def oracle_counterfactual(gamma: Sequence[Formula], phi: Formula, psi: Formula) -> OracleVerdict:
    """精确判定 Γ ⊢ φ ↪ ψ：枚举全部 2^|Γ| 个子集

    Args:
        gamma: 命题假设，|Γ| ≤ ORACLE_MAX_PREMISES
        phi: 前件
        psi: 后件

    Returns:
        OracleVerdict: 精确结论与 small-first 顺序下的第一个见证

    Raises:
        FragmentError: 非命题输入或超出规模上限
    """
    if len(gamma) > config.ORACLE_MAX_PREMISES:
        raise FragmentError(
            f"{len(gamma)} premises exceed the oracle limit of {config.ORACLE_MAX_PREMISES}"
        )
    table = _table([*gamma, phi, psi])
    antecedent = table.evaluate(phi)
    if not antecedent.any():
        return OracleVerdict(True, inconsistent_antecedent=True)
    columns = [table.evaluate(f) for f in gamma]
    counter_rows = antecedent & ~table.evaluate(psi)
    examined = 0
    for size in range(len(gamma) + 1):
        for subset in combinations(range(len(gamma)), size):
            examined += 1
            models = antecedent.copy()
            for index in subset:
                models &= columns[index]
            if not models.any():
                continue
            # Γ′+φ 可满足且没有一行满足 Γ′ ∧ φ ∧ ¬ψ
            counter = counter_rows.copy()
            for index in subset:
                counter &= columns[index]
            if not counter.any():
                return OracleVerdict(True, subset, subsets_examined=examined)
    return OracleVerdict(False, subsets_examined=examined)
