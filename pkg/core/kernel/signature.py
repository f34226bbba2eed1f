# core/kernel/signature.py
"""带排序的签名：单继承排序森林 + 带类型的函数/关系/常量符号"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from core.kernel.errors import SignatureError

ROOT_SORT = "Object"

# 预声明排序（子排序 -> 父排序）
BASE_SORTS: Dict[str, Optional[str]] = {
    "Object": None,
    "Agent": "Object",
    "ActionType": "Object",
    "Event": "Object",
    "Action": "Event",  # Action ⊑ Event
    "Moment": "Object",
    "Fluent": "Object",
    "Boolean": "Object",
    "Situation": "Object",  # Situation ⊏ Object
}

# 逻辑关键字与模态算子（作为表头保留）
LOGICAL_KEYWORDS = frozenset({"not", "and", "or", "implies", "iff", "forall", "exists", "="})
OPERATOR_HEADS = frozenset({"K", "B", "D", "I", "P", "C", "S", "O", "cf"})
RESERVED_CONSTANTS = frozenset({"true", "false"})


@dataclass(frozen=True)
class FunctionSymbol:
    """函数符号"""
    name: str
    arg_sorts: Tuple[str, ...]
    result_sort: str

    @property
    def arity(self) -> int:
        return len(self.arg_sorts)


@dataclass(frozen=True)
class RelationSymbol:
    """关系符号（结果排序恒为 Boolean）"""
    name: str
    arg_sorts: Tuple[str, ...]

    @property
    def arity(self) -> int:
        return len(self.arg_sorts)


class SortedSignature:
    """带排序的签名

    构造阶段可逐条声明；调用 freeze() 之后不可再修改，可以在并发证明任务之间共享。
    所有声明按顺序记录，便于打印问题文件时只输出用户声明部分。
    """

    def __init__(self):
        """初始化空签名（不含任何预声明）"""
        self.parent: Dict[str, Optional[str]] = {}
        self.functions: Dict[str, FunctionSymbol] = {}
        self.relations: Dict[str, RelationSymbol] = {}
        self.constants: Dict[str, str] = {}
        self._declarations: List[tuple] = []
        self._base_mark = 0
        self._frozen = False

    # ==================== 声明 ====================

    def declare_sort(self, name: str, parent: Optional[str] = None) -> None:
        """声明排序

        Args:
            name: 排序名
            parent: 父排序；缺省挂在 Object 下
        """
        self._check_mutable()
        if name in self.parent:
            raise SignatureError(f"sort '{name}' declared twice")
        if name != ROOT_SORT and parent is None:
            parent = ROOT_SORT
        if parent is not None and parent not in self.parent:
            raise SignatureError(f"unknown parent sort '{parent}' for '{name}'")
        self.parent[name] = parent
        self._declarations.append(("sort", name, parent))

    def declare_constant(self, name: str, sort: str) -> None:
        """声明常量"""
        self._check_mutable()
        self._check_fresh_symbol(name)
        if name in LOGICAL_KEYWORDS or name in RESERVED_CONSTANTS:
            raise SignatureError(f"'{name}' is reserved and cannot name a constant")
        self._require_sort(sort, name)
        self.constants[name] = sort
        self._declarations.append(("const", name, sort))

    def declare_function(self, name: str, arg_sorts: Tuple[str, ...], result_sort: str) -> None:
        """声明函数符号"""
        self._check_mutable()
        self._check_fresh_symbol(name)
        if name in LOGICAL_KEYWORDS or (arg_sorts and name in OPERATOR_HEADS):
            raise SignatureError(f"'{name}' is reserved and cannot name a function")
        for sort in (*arg_sorts, result_sort):
            self._require_sort(sort, name)
        self.functions[name] = FunctionSymbol(name, tuple(arg_sorts), result_sort)
        self._declarations.append(("func", name, tuple(arg_sorts), result_sort))

    def declare_relation(self, name: str, arg_sorts: Tuple[str, ...]) -> None:
        """声明关系符号；带参数的关系不得使用算子保留名"""
        self._check_mutable()
        self._check_fresh_symbol(name)
        if name in LOGICAL_KEYWORDS or (arg_sorts and name in OPERATOR_HEADS):
            raise SignatureError(f"'{name}' is reserved and cannot name a relation")
        for sort in arg_sorts:
            self._require_sort(sort, name)
        self.relations[name] = RelationSymbol(name, tuple(arg_sorts))
        self._declarations.append(("rel", name, tuple(arg_sorts)))

    # ==================== 查询 ====================

    def has_sort(self, name: str) -> bool:
        return name in self.parent

    def is_subsort(self, sub: str, sup: str) -> bool:
        """sub 是否为 sup 的自反传递后代"""
        current: Optional[str] = sub
        while current is not None:
            if current == sup:
                return True
            current = self.parent.get(current)
        return False

    def comparable(self, a: str, b: str) -> bool:
        return self.is_subsort(a, b) or self.is_subsort(b, a)

    def constants_of_sort(self, sort: str) -> List[str]:
        """排序为 sort 后代的全部常量（按声明顺序）"""
        return [name for name, s in self.constants.items() if self.is_subsort(s, sort)]

    def has_symbol(self, name: str) -> bool:
        return name in self.constants or name in self.functions or name in self.relations

    def user_declarations(self) -> List[tuple]:
        """基础签名之后的声明（打印问题文件时使用）"""
        return list(self._declarations[self._base_mark:])

    # ==================== 生命周期 ====================

    def mark_base(self) -> None:
        """把当前全部声明标记为基础部分"""
        self._base_mark = len(self._declarations)

    def freeze(self) -> "SortedSignature":
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    def copy(self) -> "SortedSignature":
        """复制为可修改的新签名（保留基础标记）"""
        clone = SortedSignature()
        clone.parent = dict(self.parent)
        clone.functions = dict(self.functions)
        clone.relations = dict(self.relations)
        clone.constants = dict(self.constants)
        clone._declarations = list(self._declarations)
        clone._base_mark = self._base_mark
        return clone

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SortedSignature):
            return NotImplemented
        return self._declarations == other._declarations

    def __hash__(self) -> int:
        return hash(tuple(self._declarations))

    # ==================== 内部 ====================

    def _check_mutable(self) -> None:
        if self._frozen:
            raise SignatureError("signature is frozen")

    def _check_fresh_symbol(self, name: str) -> None:
        if self.has_symbol(name):
            raise SignatureError(f"symbol '{name}' declared twice")

    def _require_sort(self, sort: str, symbol: str) -> None:
        if sort not in self.parent:
            raise SignatureError(f"unknown sort '{sort}' in declaration of '{symbol}'")


def base_signature() -> SortedSignature:
    """预声明事件演算符号与排序的签名（未冻结，可继续扩展）"""
    sig = SortedSignature()
    for name, parent in BASE_SORTS.items():
        sig.declare_sort(name, parent)
    sig.declare_relation("true", ())
    sig.declare_relation("false", ())
    sig.declare_function("action", ("Agent", "ActionType"), "Action")
    sig.declare_relation("initially", ("Fluent",))
    sig.declare_relation("holds", ("Fluent", "Moment"))
    sig.declare_relation("happens", ("Event", "Moment"))
    sig.declare_relation("clipped", ("Moment", "Fluent", "Moment"))
    sig.declare_relation("initiates", ("Event", "Fluent", "Moment"))
    sig.declare_relation("terminates", ("Event", "Fluent", "Moment"))
    sig.declare_relation("prior", ("Moment", "Moment"))
    sig.mark_base()
    return sig
