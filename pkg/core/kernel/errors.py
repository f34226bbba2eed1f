# core/kernel/errors.py
"""内核异常定义"""
from typing import Optional


class KernelError(Exception):
    """内核错误基类（语法、排序、签名错误的共同父类）"""


class ParseError(KernelError):
    """语法错误，携带行号与列号"""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class SortError(KernelError):
    """排序错误，指出出错的符号以及期望/实际排序"""

    def __init__(
        self,
        message: str,
        symbol: str,
        expected: Optional[str] = None,
        actual: Optional[str] = None,
    ):
        detail = f"{message} (symbol={symbol}"
        if expected is not None:
            detail += f", expected={expected}"
        if actual is not None:
            detail += f", actual={actual}"
        super().__init__(detail + ")")
        self.symbol = symbol
        self.expected = expected
        self.actual = actual


class SignatureError(KernelError):
    """签名错误：重复声明、未知排序、继承环等"""
