# 反事实推理器配置
import os
from dotenv import load_dotenv

# 加载项目根目录的 .env
load_dotenv(override=True)


def _optional_int(name: str):
    value = os.getenv(name)
    return int(value) if value else None


# 证明器配置
PROVER_TIMEOUT_MS = int(os.getenv("PROVER_TIMEOUT_MS", "30000"))  # 单次证明的墙钟时限（毫秒）
PROVER_DEPTH = int(os.getenv("PROVER_DEPTH", "3"))  # 模式饱和的迭代深度
PROVER_MAX_CLAUSES = int(os.getenv("PROVER_MAX_CLAUSES", "20000"))  # 归结生成子句数上限
PROVER_MAX_WEIGHT = int(os.getenv("PROVER_MAX_WEIGHT", "60"))  # 超过该权重的子句直接丢弃

# 一致性近似配置
CONSISTENCY_DELTA_MS = int(os.getenv("CONSISTENCY_DELTA_MS", "2000"))  # Φ ⊢ ⊥ 的查询时限 δ（毫秒）

# 反事实子集搜索配置
CF_ORDER = os.getenv("CF_ORDER", "large-first")  # 子集枚举顺序（small-first / large-first）
CF_ENTAILMENT_MS = int(os.getenv("CF_ENTAILMENT_MS", "5000"))  # 单次 (Γ′+φ) ⊢ ψ 的时限（毫秒）
CF_OVERALL_CAP_MS = int(os.getenv("CF_OVERALL_CAP_MS", "30000"))  # 整个子集搜索的时限（毫秒）
CF_MAX_SUBSET_SIZE = _optional_int("CF_MAX_SUBSET_SIZE")  # 子集基数上限（不设则不限）
CF_SUBSET_HARD_CAP = 30  # |Γ| 的硬上限

# 基准测试配置
BENCH_WORKERS = int(os.getenv("BENCH_WORKERS", "1"))  # 并发问题数（1 为确定性模式）
DATASET_DIR = os.getenv("DATASET_DIR", "data/dataset")  # 数据集目录
DILEMMA_PATH = os.getenv("DILEMMA_PATH", "data/dilemmas/trolley.clp")  # DDE 两难问题文件
VALIDATION_TIMEOUT_MS = int(os.getenv("VALIDATION_TIMEOUT_MS", "30000"))  # 数据集校验 Γ ⊢ ¬φ 的时限

# 随机性质测试配置
RANDOM_SEED = int(os.getenv("RANDOM_SEED", "20180217"))  # 随机公式生成种子
ORACLE_MAX_PREMISES = 12  # 真值表判定器接受的 |Γ| 上限
ORACLE_MAX_ATOMS = 16  # 真值表判定器接受的原子数上限

# 日志配置
LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")  # 日志级别
