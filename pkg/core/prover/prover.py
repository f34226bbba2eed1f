# core/prover/prover.py
"""有预算的证明入口：模式饱和 → 影子化 → 带排序的一阶归结反驳"""
from typing import List, Optional, Sequence

import config
from core.kernel.checker import check_formula
from core.kernel.errors import SortError
from core.kernel.formulas import FALSE, Formula, Not
from core.kernel.printer import print_formula
from core.kernel.signature import SortedSignature, base_signature
from core.prover.clauses import clausify_all
from core.prover.models import (
    Budget, ConsistencyStatus, ConsistencyVerdict, Deadline, ProofOutcome, ProofStatus,
    ProverInputError,
)
from core.prover.resolution import SearchStatus, refute
from core.prover.schemata import SchemaSaturator
from core.prover.shadow import shadow
from util.log import get_logger

logger = get_logger("Prover")


def _check_inputs(formulas: Sequence[Formula], signature: Optional[SortedSignature]) -> SortedSignature:
    """排序检查；未给签名时只检查主体/时刻位置与排序名"""
    strict = signature is not None
    sig = signature if strict else base_signature()
    for f in formulas:
        try:
            check_formula(f, sig, strict=strict)
        except SortError as e:
            raise ProverInputError(f"ill-sorted input {print_formula(f)}: {e}") from e
    return sig


def _search(
    gamma: List[Formula],
    goal: Formula,
    budget: Budget,
    signature: SortedSignature,
    deadline: Deadline,
) -> ProofOutcome:
    saturator = SchemaSaturator(goal, budget, deadline, signature, _subprove_factory(signature))
    working = saturator.saturate(gamma)
    inputs = tuple(shadow(f) for f in working) + (shadow(Not(goal)),)
    clauses = [clause for _, clause in clausify_all(inputs)]
    result = refute(clauses, signature, deadline, budget.max_clauses)
    status = ProofStatus.PROVED if result.refuted else ProofStatus.NOT_PROVED
    return ProofOutcome(
        status=status,
        goal=goal,
        gamma=tuple(gamma),
        justification=list(saturator.steps),
        refutation=result.trace,
        refutation_inputs=inputs,
        elapsed_ms=deadline.elapsed_ms(),
        exhausted=saturator.exhausted and result.status is SearchStatus.SATURATED,
        clauses_generated=result.generated,
    )


def _subprove_factory(signature: SortedSignature):
    def subprove(gamma: List[Formula], goal: Formula, budget: Budget, parent: Deadline) -> ProofOutcome:
        deadline = Deadline(budget.timeout_ms, parent=parent)
        return _search(list(gamma), goal, budget, signature, deadline)
    return subprove


def prove(
    gamma: Sequence[Formula],
    goal: Formula,
    budget: Optional[Budget] = None,
    signature: Optional[SortedSignature] = None,
) -> ProofOutcome:
    """在预算内尝试证明 Γ ⊢ goal

    Args:
        gamma: 假设集
        goal: 目标公式
        budget: 预算；缺省取配置
        signature: 签名；给出时做完整排序检查

    Returns:
        ProofOutcome: Proved 时附带可回放的模式步骤与反驳轨迹；
            NotProvedWithinBudget 不作任何语义断言

    Raises:
        ProverInputError: 输入排序不合法
    """
    budget = budget or Budget()
    sig = _check_inputs([*gamma, goal], signature)
    deadline = Deadline(budget.timeout_ms)
    logger.debug(f"prove |Γ|={len(gamma)} goal={print_formula(goal)} budget={budget.timeout_ms}ms")
    outcome = _search(list(gamma), goal, budget, sig, deadline)
    if not outcome.proved and not outcome.exhausted:
        logger.info(f"budget exhausted after {outcome.elapsed_ms:.1f}ms: {print_formula(goal)}")
    logger.debug(f"{outcome.status.value} in {outcome.elapsed_ms:.1f}ms")
    return outcome


def consistent(
    phis: Sequence[Formula],
    delta_ms: int = config.CONSISTENCY_DELTA_MS,
    signature: Optional[SortedSignature] = None,
    depth: int = config.PROVER_DEPTH,
) -> ConsistencyVerdict:
    """δ 近似的一致性判定：Φ ⊢ ⊥ 在 δ 内可证则 Inconsistent，否则 PresumedConsistent"""
    budget = Budget(timeout_ms=delta_ms, depth=depth)
    outcome = prove(phis, FALSE, budget, signature)
    if outcome.proved:
        return ConsistencyVerdict(
            ConsistencyStatus.INCONSISTENT, outcome.elapsed_ms, delta_ms, outcome, outcome.exhausted,
        )
    return ConsistencyVerdict(
        ConsistencyStatus.PRESUMED_CONSISTENT, outcome.elapsed_ms, delta_ms, None, outcome.exhausted,
    )
