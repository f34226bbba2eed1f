# core/counterfactual/subsets.py
"""子集枚举与单调性记忆表

子集以下标元组表示（按下标升序）；同一基数内按下标字典序，保证见证可复现。
"""
from itertools import combinations
from math import comb
from typing import Iterator, List, Optional, Sequence, Tuple

import config
from core.counterfactual.models import SubsetOrder

Subset = Tuple[int, ...]


class SubsetCapExceeded(ValueError):
    """|Γ| 超过子集枚举硬上限"""

    def __init__(self, size: int, cap: int = config.CF_SUBSET_HARD_CAP):
        super().__init__(f"subset search over {size} assumptions exceeds the hard cap of {cap}")
        self.size = size
        self.cap = cap


def enumerate_subsets(
    gamma: Sequence,
    order: SubsetOrder = SubsetOrder.LARGE_FIRST,
    max_size: Optional[int] = None,
) -> Iterator[Subset]:
    """按给定顺序流式产生 Γ 的全部子集（下标元组），每个恰好一次

    Args:
        gamma: 假设序列
        order: small-first 按基数不减；large-first 按基数不增
        max_size: 子集基数上限

    Raises:
        SubsetCapExceeded: |Γ| 超过硬上限（调用时立即抛出，而非迭代时）
    """
    n = len(gamma)
    if n > config.CF_SUBSET_HARD_CAP:
        raise SubsetCapExceeded(n)
    top = n if max_size is None else min(n, max_size)
    sizes = range(top + 1) if SubsetOrder(order) is SubsetOrder.SMALL_FIRST else range(top, -1, -1)
    return _stream(n, sizes)


def _stream(n: int, sizes) -> Iterator[Subset]:
    for size in sizes:
        yield from combinations(range(n), size)


def subset_mask(subset: Subset) -> int:
    mask = 0
    for index in subset:
        mask |= 1 << index
    return mask


def count_subsets(n: int, max_size: Optional[int] = None) -> int:
    top = n if max_size is None else min(n, max_size)
    return sum(comb(n, k) for k in range(top + 1))


class SubsetMemo:
    """单调性记忆表

    Γ′ ⊆ Γ″ 时：Γ′+φ 不一致 ⇒ Γ″+φ 不一致；Γ′+φ ⊢ ψ ⇒ Γ″+φ ⊢ ψ；
    Γ″+φ 推定一致 ⇒ Γ′+φ 推定一致；Γ″+φ 确定推不出 ψ ⇒ Γ′+φ 也推不出。
    """

    def __init__(self):
        self.inconsistent: List[int] = []
        self.entailed: List[int] = []
        self.consistent: List[int] = []
        self.not_entailed: List[int] = []

    @staticmethod
    def _has_subset_of(masks: List[int], mask: int) -> bool:
        return any(m & mask == m for m in masks)

    @staticmethod
    def _has_superset_of(masks: List[int], mask: int) -> bool:
        return any(m & mask == mask for m in masks)

    def known_inconsistent(self, mask: int) -> bool:
        return self._has_subset_of(self.inconsistent, mask)

    def known_entailed(self, mask: int) -> bool:
        return self._has_subset_of(self.entailed, mask)

    def known_consistent(self, mask: int) -> bool:
        return self._has_superset_of(self.consistent, mask)

    def known_not_entailed(self, mask: int) -> bool:
        return self._has_superset_of(self.not_entailed, mask)
