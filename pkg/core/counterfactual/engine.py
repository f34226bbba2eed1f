# core/counterfactual/engine.py
"""反事实条件句的判定：Γ ⊢ φ ↪ ψ 与 Γ ⊢ Υ[φ ↪ ψ]

Γ ⊢ φ ↪ ψ 成立当且仅当 {φ} 不一致，或存在 Γ′ ⊆ Γ 使 Γ′+φ 推定一致且 Γ′+φ ⊢ ψ。
上下文版本在 Υ[Γ]（Γ 中以 Υ 为前缀的成员的主体）上做同样的搜索。
"""
from typing import Dict, List, Optional, Sequence

import config

from core.counterfactual.models import (
    CfConfig, CfCounters, CfResult, SubsetOrder, Witness, WitnessKind,
)
from core.counterfactual.subsets import (
    SubsetCapExceeded, SubsetMemo, count_subsets, enumerate_subsets, subset_mask,
)
from core.kernel.context import EMPTY_CONTEXT, ModalContext, project_context
from core.kernel.formulas import Formula
from core.kernel.printer import canonical_key, print_formula
from core.kernel.signature import SortedSignature
from core.prover.models import Budget, ConsistencyVerdict, Deadline, ProofStatus
from core.prover.prover import consistent, prove
from util.log import get_logger

logger = get_logger("Counterfactual")

MIN_SHARE_MS = 250  # 单个子集至少分得的蕴涵时限（毫秒）


class SubsetSearch:
    """一次反事实查询的子集搜索（记忆表只在本次查询内共享）

    Args:
        base: 参与枚举的假设（已按上下文投影）
        phi: 前件
        psi: 后件
        cfg: 搜索配置
        signature: 签名；None 时按谓词逻辑的宽松模式检查
    """

    def __init__(
        self,
        base: Sequence[Formula],
        phi: Formula,
        psi: Formula,
        cfg: CfConfig,
        signature: Optional[SortedSignature] = None,
    ):
        self.base = list(base)
        self.phi = phi
        self.psi = psi
        self.cfg = cfg
        self.signature = signature
        self.counters = CfCounters()
        self.memo = SubsetMemo()
        self._verdicts: Dict[int, ConsistencyVerdict] = {}
        self._complete = True

    def _consistency_ms(self, deadline: Deadline) -> int:
        return max(1, int(min(self.cfg.delta_ms, deadline.remaining_ms())))

    def _entailment_ms(self, deadline: Deadline, remaining_subsets: int) -> int:
        remaining = deadline.remaining_ms()
        share = max(remaining / max(1, remaining_subsets), MIN_SHARE_MS)
        return max(1, int(min(self.cfg.entailment_ms, share, remaining)))

    def _antecedent_inconsistent(self, deadline: Deadline) -> Optional[Witness]:
        self.counters.consistency_calls += 1
        verdict = consistent([self.phi], self._consistency_ms(deadline), self.signature, self.cfg.depth)
        if verdict.inconsistent:
            return Witness(WitnessKind.INCONSISTENT_ANTECEDENT, consistency=verdict)
        return None

    def _consistency(self, mask: int, premises: List[Formula], deadline: Deadline) -> Optional[ConsistencyVerdict]:
        """Γ′+φ 的一致性判定；不一致时返回 None"""
        if self.memo.known_consistent(mask):
            for known, verdict in self._verdicts.items():
                if known & mask == mask:
                    return verdict
        self.counters.consistency_calls += 1
        verdict = consistent(premises, self._consistency_ms(deadline), self.signature, self.cfg.depth)
        if verdict.inconsistent:
            self.memo.inconsistent.append(mask)
            return None
        self.memo.consistent.append(mask)
        self._verdicts[mask] = verdict
        return verdict

    def run(self) -> CfResult:
        deadline = Deadline(self.cfg.overall_cap_ms)
        witness = self._antecedent_inconsistent(deadline)
        if witness is None:
            witness = self._search(deadline)
        status = ProofStatus.PROVED if witness is not None else ProofStatus.NOT_PROVED
        result = CfResult(
            status=status,
            antecedent=self.phi,
            consequent=self.psi,
            witness=witness,
            counters=self.counters,
            elapsed_ms=deadline.elapsed_ms(),
            exhausted=witness is None and self._complete,
        )
        logger.info(
            f"{status.value}: {self.counters.subsets_examined} subsets, "
            f"{self.counters.consistency_calls} consistency / {self.counters.entailment_calls} entailment calls, "
            f"{result.elapsed_ms:.1f}ms"
        )
        return result

    def _search(self, deadline: Deadline) -> Optional[Witness]:
        subsets = enumerate_subsets(self.base, self.cfg.order, self.cfg.max_subset_size)
        remaining = count_subsets(len(self.base), self.cfg.max_subset_size)
        for subset in subsets:
            if deadline.expired():
                logger.info(f"overall cap of {self.cfg.overall_cap_ms}ms reached")
                self._complete = False
                return None
            remaining -= 1
            self.counters.subsets_examined += 1
            mask = subset_mask(subset)
            if self.memo.known_inconsistent(mask) or self.memo.known_not_entailed(mask):
                self.counters.subsets_pruned += 1
                continue
            premises = [self.base[i] for i in subset]
            verdict = self._consistency(mask, [*premises, self.phi], deadline)
            if verdict is None:
                continue
            if self.memo.known_entailed(mask):
                self.counters.subsets_pruned += 1
                continue
            budget = Budget(timeout_ms=self._entailment_ms(deadline, remaining + 1), depth=self.cfg.depth)
            self.counters.entailment_calls += 1
            outcome = prove([*premises, self.phi], self.psi, budget, self.signature)
            if outcome.proved:
                self.memo.entailed.append(mask)
                logger.debug(f"witness {list(subset)} for {print_formula(self.psi)}")
                return Witness(WitnessKind.SUBSET, tuple(premises), subset, verdict, outcome)
            if outcome.exhausted:
                self.memo.not_entailed.append(mask)
            else:
                self._complete = False
        return None


def prove_counterfactual(
    gamma: Sequence[Formula],
    phi: Formula,
    psi: Formula,
    cfg: Optional[CfConfig] = None,
    signature: Optional[SortedSignature] = None,
) -> CfResult:
    """判定 Γ ⊢ φ ↪ ψ

    Args:
        gamma: 假设集 Γ
        phi: 前件 φ
        psi: 后件 ψ
        cfg: 搜索配置；缺省取配置文件
        signature: 签名

    Returns:
        CfResult: Proved 时附带见证；NotProvedWithinBudget 时附带计数器

    Raises:
        SubsetCapExceeded: |Γ| 超过硬上限
        ProverInputError: 输入排序不合法
    """
    return prove_counterfactual_in_context(gamma, EMPTY_CONTEXT, phi, psi, cfg, signature)


def prove_counterfactual_in_context(
    gamma: Sequence[Formula],
    ctx: ModalContext,
    phi: Formula,
    psi: Formula,
    cfg: Optional[CfConfig] = None,
    signature: Optional[SortedSignature] = None,
) -> CfResult:
    """判定 Γ ⊢ Υ[φ ↪ ψ]；子集取自 Υ[Γ]，ctx 为空时即 prove_counterfactual"""
    cfg = cfg or CfConfig()
    base = project_context(list(gamma), ctx) if ctx else list(gamma)
    if len(base) > config.CF_SUBSET_HARD_CAP:
        raise SubsetCapExceeded(len(base))
    logger.debug(f"cf {ctx} |Υ[Γ]|={len(base)} order={SubsetOrder(cfg.order).value}")
    result = SubsetSearch(base, phi, psi, cfg, signature).run()
    result.context = ctx
    return result


def verify_witness(
    result: CfResult,
    gamma: Sequence[Formula],
    phi: Formula,
    psi: Formula,
    cfg: Optional[CfConfig] = None,
    ctx: ModalContext = EMPTY_CONTEXT,
    signature: Optional[SortedSignature] = None,
) -> bool:
    """用独立的 prove / consistent 调用重新检查 Proved 结果的见证"""
    if not result.proved or result.witness is None:
        return False
    cfg = cfg or CfConfig()
    witness = result.witness
    if witness.kind is WitnessKind.INCONSISTENT_ANTECEDENT:
        return consistent([phi], cfg.delta_ms, signature, cfg.depth).inconsistent
    base = project_context(list(gamma), ctx) if ctx else list(gamma)
    available = {canonical_key(f) for f in base}
    if any(canonical_key(f) not in available for f in witness.subset):
        return False
    premises = [*witness.subset, phi]
    if consistent(premises, cfg.delta_ms, signature, cfg.depth).inconsistent:
        return False
    budget = Budget(timeout_ms=cfg.entailment_ms, depth=cfg.depth)
    return prove(premises, psi, budget, signature).proved
