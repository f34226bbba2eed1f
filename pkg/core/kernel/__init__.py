# core/kernel/__init__.py
"""带排序量化模态逻辑的语言内核：签名、项、公式、解析/打印与模态上下文"""
from core.kernel.checker import check_formula, check_term
from core.kernel.context import (
    EMPTY_CONTEXT, ContextEntry, ContextOp, ModalContext, extract_context, project_context,
    strip_context,
)
from core.kernel.errors import KernelError, ParseError, SignatureError, SortError
from core.kernel.formulas import *  # noqa: F401,F403
from core.kernel.models import Problem, Query, QueryKind
from core.kernel.parser import load_problem, parse_formula, parse_problem, read_formula
from core.kernel.printer import canonical_key, print_formula, print_problem, print_term
from core.kernel.signature import SortedSignature, base_signature
from core.kernel.terms import App, Const, Term, Var
