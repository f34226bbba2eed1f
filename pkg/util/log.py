# util/log.py
"""统一日志：`[Tag] message` 格式写到 stderr，级别着色"""
import logging
import sys

from colorama import Fore, Style, init as colorama_init

import config

colorama_init()

_LEVEL_COLORS = {
    logging.DEBUG: Style.DIM,
    logging.INFO: Fore.CYAN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED + Style.BRIGHT,
}


class _TagFormatter(logging.Formatter):
    """输出 `[Tag] message`，WARNING 及以上带级别前缀"""

    def format(self, record: logging.LogRecord) -> str:
        text = f"[{record.name}] {record.getMessage()}"
        if record.levelno >= logging.WARNING:
            text = f"{record.levelname}: {text}"
        color = _LEVEL_COLORS.get(record.levelno, "")
        return f"{color}{text}{Style.RESET_ALL}" if color else text


_handler = logging.StreamHandler(sys.stderr)
_handler.setFormatter(_TagFormatter())


def get_logger(tag: str) -> logging.Logger:
    """按组件标签获取 logger（stdout 保留给 --json 输出）

    Args:
        tag: 组件标签，例如 "Prover"

    Returns:
        logging.Logger: 已配置的 logger
    """
    logger = logging.getLogger(tag)
    if _handler not in logger.handlers:
        logger.addHandler(_handler)
        logger.propagate = False
    logger.setLevel(config.LOG_LEVEL.upper())
    return logger
