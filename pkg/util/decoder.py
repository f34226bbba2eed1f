# util/decoder.py
"""CLI --json 输出用的 json.dumps 兜底编码器"""
import dataclasses
from enum import Enum
from fractions import Fraction
from typing import get_args

from pydantic import BaseModel

from core.kernel.context import ModalContext
from core.kernel.formulas import Formula
from core.kernel.printer import print_formula, print_term
from core.kernel.terms import Term

_FORMULA_TYPES = get_args(Formula)
_TERM_TYPES = get_args(Term)


def json_safe_encoder(obj):
    # 公式与项：打印成问题文件里的 S 表达式
    if isinstance(obj, _FORMULA_TYPES):
        return print_formula(obj)
    if isinstance(obj, _TERM_TYPES):
        return print_term(obj)
    if isinstance(obj, ModalContext):
        return str(obj)

    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, BaseModel):
        return obj.model_dump(mode="json")
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return dataclasses.asdict(obj)
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)

    # 兜底：不认识的类型直接报错（安全）
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")
