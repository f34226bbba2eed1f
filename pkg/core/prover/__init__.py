# core/prover/__init__.py
"""有预算的模态证明器：模式饱和 + 影子化 + 带排序归结"""
from core.prover.models import (
    Budget, ConsistencyStatus, ConsistencyVerdict, Deadline, JustificationStep, ProofOutcome,
    ProofStatus, ProverInputError, RefutationStep, stoppable,
)
from core.prover.prover import consistent, prove
from core.prover.replay import ReplayError, replay
from core.prover.shadow import shadow

__all__ = [
    "Budget", "ConsistencyStatus", "ConsistencyVerdict", "Deadline", "JustificationStep",
    "ProofOutcome", "ProofStatus", "ProverInputError", "RefutationStep", "stoppable",
    "consistent", "prove", "ReplayError", "replay", "shadow",
]
