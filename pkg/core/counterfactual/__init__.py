# core/counterfactual/__init__.py
"""反事实条件句 ↪ 的子集搜索判定"""
from core.counterfactual.engine import (
    SubsetSearch, prove_counterfactual, prove_counterfactual_in_context, verify_witness,
)
from core.counterfactual.models import (
    CfConfig, CfCounters, CfResult, SubsetOrder, Witness, WitnessKind,
)
from core.counterfactual.subsets import SubsetCapExceeded, enumerate_subsets

__all__ = [
    "SubsetSearch", "prove_counterfactual", "prove_counterfactual_in_context", "verify_witness",
    "CfConfig", "CfCounters", "CfResult", "SubsetOrder", "Witness", "WitnessKind",
    "SubsetCapExceeded", "enumerate_subsets",
]
