# core/harness/dataset.py
"""基准数据集：目录下的 .clp 问题文件 + manifest.yaml 期望状态清单"""
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import yaml

import config
from core.harness.models import RecordKind, ValidationReport
from core.harness.oracle import oracle_counterfactual, oracle_entails
from core.kernel.errors import KernelError
from core.kernel.formulas import FALSE, Implies, Not, is_propositional
from core.kernel.models import Problem, Query, QueryKind
from core.kernel.parser import load_problem
from core.prover.models import Budget, ProofStatus
from core.prover.prover import prove
from util.log import get_logger

logger = get_logger("Dataset")

MANIFEST = "manifest.yaml"
MIN_PROBLEMS = 16


class DatasetError(Exception):
    """数据集或清单无法读取"""


@dataclass
class DatasetEntry:
    """清单中的一个问题"""
    file: str
    name: str
    premises: int
    propositional: bool
    expected: Dict[RecordKind, str]
    problem: Optional[Problem] = None


@dataclass
class Dataset:
    directory: str
    entries: List[DatasetEntry] = field(default_factory=list)
    premise_range: Tuple[int, int] = (2, 15)


def classify(query: Query) -> Optional[RecordKind]:
    """按查询形状判定条件句类型；无法归类时返回 None"""
    if query.kind is QueryKind.CF:
        return RecordKind.CF_ABSURD if query.consequent == FALSE else RecordKind.CF
    if query.kind is QueryKind.ENTAIL:
        goal = query.goal
        if isinstance(goal, Implies) and goal.cons == FALSE:
            return RecordKind.MATERIAL_ABSURD
    return None


def queries_by_kind(problem: Problem) -> Dict[RecordKind, Query]:
    result: Dict[RecordKind, Query] = {}
    for query in problem.queries:
        kind = classify(query)
        if kind is not None and kind not in result:
            result[kind] = query
    return result


def load_dataset(directory: str = config.DATASET_DIR) -> Dataset:
    """读取清单与全部问题文件

    Raises:
        DatasetError: 清单缺失 / 格式错误，或问题文件无法解析
    """
    path = os.path.join(directory, MANIFEST)
    try:
        with open(path, "rb") as fh:
            manifest = yaml.safe_load(fh) or {}
    except (OSError, yaml.YAMLError) as e:
        raise DatasetError(f"cannot read manifest {path}: {e}") from e
    if not isinstance(manifest, dict) or not isinstance(manifest.get("problems"), list):
        raise DatasetError(f"{path} lists no problems")

    defaults = {RecordKind(k): v for k, v in (manifest.get("expected") or {}).items()}
    low, high = manifest.get("premise_range", [2, 15])
    dataset = Dataset(directory, premise_range=(int(low), int(high)))
    for item in manifest["problems"]:
        try:
            overrides = {RecordKind(k): v for k, v in (item.get("expected") or {}).items()}
            entry = DatasetEntry(
                file=item["file"],
                name=item.get("name", os.path.splitext(item["file"])[0]),
                premises=int(item.get("premises", -1)),
                propositional=bool(item.get("propositional", False)),
                expected={**defaults, **overrides},
            )
        except (KeyError, TypeError, ValueError) as e:
            raise DatasetError(f"malformed manifest entry {item!r}: {e}") from e
        try:
            entry.problem = load_problem(os.path.join(directory, entry.file))
        except (OSError, KernelError) as e:
            raise DatasetError(f"cannot load {entry.file}: {e}") from e
        dataset.entries.append(entry)
    return dataset


def _oracle_status(entry: DatasetEntry, kind: RecordKind, query: Query) -> str:
    problem = entry.problem
    if kind is RecordKind.MATERIAL_ABSURD:
        entailed = oracle_entails(problem.assumptions, query.goal)
    else:
        entailed = oracle_counterfactual(problem.assumptions, query.antecedent, query.consequent).entailed
    return ProofStatus.PROVED.value if entailed else ProofStatus.NOT_PROVED.value


def validate_dataset(
    directory: str = config.DATASET_DIR,
    timeout_ms: int = config.VALIDATION_TIMEOUT_MS,
) -> ValidationReport:
    """校验数据集

    检查：每个问题的前件可被证伪（Γ ⊢ ¬φ）、三类条件句齐全、前提数与清单一致且覆盖范围、
    命题问题的期望状态与真值表判定器一致。

    Returns:
        ValidationReport: 违例列表（为空即通过）

    Raises:
        DatasetError: 数据集无法读取
    """
    dataset = load_dataset(directory)
    report = ValidationReport(dataset=directory, problems=len(dataset.entries))
    if len(dataset.entries) < MIN_PROBLEMS:
        report.add(f"dataset holds {len(dataset.entries)} problems, expected at least {MIN_PROBLEMS}")

    low, high = dataset.premise_range
    counts = []
    budget = Budget(timeout_ms=timeout_ms)
    for entry in dataset.entries:
        problem = entry.problem
        count = len(problem.assumptions)
        counts.append(count)
        if entry.premises >= 0 and entry.premises != count:
            report.add(f"manifest says {entry.premises} premises, file has {count}", entry.name)
        if not low <= count <= high:
            report.add(f"{count} premises outside the range {low}..{high}", entry.name)

        queries = queries_by_kind(problem)
        missing = [k.value for k in RecordKind if k not in queries]
        if missing:
            report.add(f"missing conditionals: {', '.join(missing)}", entry.name)
        cf = queries.get(RecordKind.CF)
        if cf is not None:
            outcome = prove(problem.assumptions, Not(cf.antecedent), budget, problem.signature)
            if not outcome.proved:
                report.add("antecedent is not provably counterfactual (Γ ⊬ ¬φ)", entry.name)

        formulas = [*problem.assumptions, *(f for q in problem.queries for f in q.formulas)]
        if entry.propositional != all(is_propositional(f) for f in formulas):
            report.add("manifest 'propositional' flag does not match the file", entry.name)
        elif entry.propositional and count <= config.ORACLE_MAX_PREMISES:
            for kind, query in queries.items():
                expected = entry.expected.get(kind)
                actual = _oracle_status(entry, kind, query)
                if expected is not None and expected != actual:
                    report.add(f"oracle says {actual} for {kind.value}, manifest expects {expected}", entry.name)

    if counts and (min(counts) > low or max(counts) < high):
        report.add(f"premise counts {min(counts)}..{max(counts)} do not span {low}..{high}")
    for issue in report.issues:
        logger.warning(f"{issue.problem or directory}: {issue.message}")
    return report
