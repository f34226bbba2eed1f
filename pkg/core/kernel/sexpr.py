# core/kernel/sexpr.py
"""S 表达式读取器：括号前缀记法，空白不敏感，`;` 开始行注释"""
from dataclasses import dataclass, field
from typing import List, Union

from core.kernel.errors import ParseError


@dataclass(frozen=True)
class Symbol:
    """原子记号（带源位置）"""
    text: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class SList:
    """括号列表（带左括号位置）"""
    items: tuple = field(default_factory=tuple)
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def __len__(self) -> int:
        return len(self.items)

    def __getitem__(self, index):
        return self.items[index]

    @property
    def head(self) -> str:
        """表头符号文本；空表或表头不是符号时返回空串"""
        if self.items and isinstance(self.items[0], Symbol):
            return self.items[0].text
        return ""


SExpr = Union[Symbol, SList]

_DELIMITERS = set(" \t\r\n();")
MAX_DEPTH = 200  # 括号嵌套层数上限，下游的递归遍历依赖此界


class SexprReader:
    """逐字符扫描文本，产出带位置的 S 表达式"""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.column = 1

    def _peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _advance(self) -> str:
        char = self.text[self.pos]
        self.pos += 1
        if char == "\n":
            self.line += 1
            self.column = 1
        else:
            self.column += 1
        return char

    def _skip_blank(self) -> None:
        while True:
            char = self._peek()
            if not char:
                return
            if char == ";":
                while self._peek() and self._peek() != "\n":
                    self._advance()
            elif char in " \t\r\n":
                self._advance()
            else:
                return

    def at_end(self) -> bool:
        self._skip_blank()
        return not self._peek()

    def read(self) -> SExpr:
        """读取一个完整表达式（显式栈，嵌套超过 MAX_DEPTH 报 ParseError）"""
        # 栈中每项为 (左括号行, 左括号列, 已读元素)
        stack: List[tuple] = []
        while True:
            self._skip_blank()
            char = self._peek()
            line, column = self.line, self.column
            if not char:
                if stack:
                    open_line, open_column, _ = stack[-1]
                    raise ParseError("unclosed '('", open_line, open_column)
                raise ParseError("unexpected end of input", line, column)
            if char == "(":
                if len(stack) >= MAX_DEPTH:
                    raise ParseError(f"nesting deeper than {MAX_DEPTH} levels", line, column)
                self._advance()
                stack.append((line, column, []))
                continue
            if char == ")":
                if not stack:
                    raise ParseError("unexpected ')'", line, column)
                self._advance()
                open_line, open_column, items = stack.pop()
                expr: SExpr = SList(tuple(items), open_line, open_column)
            else:
                token = []
                while self._peek() and self._peek() not in _DELIMITERS:
                    token.append(self._advance())
                expr = Symbol("".join(token), line, column)
            if not stack:
                return expr
            stack[-1][2].append(expr)


def read_all(text: str) -> List[SExpr]:
    """读取文本中的全部顶层表达式"""
    reader = SexprReader(text)
    result = []
    while not reader.at_end():
        result.append(reader.read())
    return result


def read_one(text: str) -> SExpr:
    """读取恰好一个顶层表达式"""
    reader = SexprReader(text)
    expr = reader.read()
    if not reader.at_end():
        raise ParseError("trailing input after expression", reader.line, reader.column)
    return expr


def render(expr: SExpr) -> str:
    """把 S 表达式还原为文本（扩展块原样打印时使用）"""
    if isinstance(expr, Symbol):
        return expr.text
    return "(" + " ".join(render(item) for item in expr.items) + ")"
