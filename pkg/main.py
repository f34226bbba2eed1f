# main.py
"""反事实推理器命令行入口（子命令见 core/harness/cli.py）"""
import sys

from core.harness.cli import main

if __name__ == "__main__":
    sys.exit(main())
