# core/harness/cli.py
"""命令行入口

子命令：prove / cf / cf-in / oracle 处理单个问题文件，dde 推导 C5a / C5b，
bench 运行数据集，validate 校验数据集。

退出码：0 = Proved（bench / validate 为全部符合期望），1 = NotProvedWithinBudget，2 = 输入错误。
"""
import argparse
import json
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from colorama import Fore, Style, init as colorama_init
from pydantic import ValidationError

import config
from core.counterfactual.engine import prove_counterfactual, prove_counterfactual_in_context
from core.counterfactual.models import CfConfig, SubsetOrder, WitnessKind
from core.counterfactual.subsets import SubsetCapExceeded
from core.ethics.c5 import C5Clause, c5a_formula, c5b_formula, derive_c5
from core.ethics.dilemma import DilemmaError, load_dilemma
from core.harness.bench import run_benchmark
from core.harness.dataset import DatasetError, validate_dataset
from core.harness.oracle import FragmentError, oracle_counterfactual, oracle_entails
from core.harness.report import emit_report, format_summary, unexpected
from core.kernel.errors import KernelError
from core.kernel.models import Problem, Query, QueryKind
from core.kernel.parser import load_problem
from core.kernel.printer import print_formula, print_query
from core.prover.models import Budget, ProofStatus, ProverInputError
from core.prover.prover import prove
from util.decoder import json_safe_encoder
from util.log import get_logger

logger = get_logger("CLI")

EXIT_PROVED = 0
EXIT_NOT_PROVED = 1
EXIT_INPUT_ERROR = 2

INPUT_ERRORS = (
    KernelError, DilemmaError, FragmentError, DatasetError, SubsetCapExceeded,
    ProverInputError, ValidationError, OSError,
)


class CliInputError(ValueError):
    """命令行参数与问题文件不匹配（例如 --query 越界）"""


# ==================== 参数解析 ====================

def _add_budget_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--timeout-ms", type=int, help=f"证明 / 子集搜索时限（默认 {config.PROVER_TIMEOUT_MS}）")
    parser.add_argument("--delta-ms", type=int, help=f"一致性查询时限 δ（默认 {config.CONSISTENCY_DELTA_MS}）")
    parser.add_argument("--depth", type=int, help=f"模式饱和深度（默认 {config.PROVER_DEPTH}）")
    parser.add_argument(
        "--order", choices=[o.value for o in SubsetOrder], help=f"子集枚举顺序（默认 {config.CF_ORDER}）",
    )
    parser.add_argument("--json", action="store_true", help="在 stdout 输出单个 JSON 文档")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cfreason", description="反事实条件句推理器")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("prove", "证明 entail 查询"),
        ("cf", "判定 cf 查询 Γ ⊢ φ ↪ ψ"),
        ("cf-in", "判定 cf-in 查询 Γ ⊢ Υ[φ ↪ ψ]"),
        ("oracle", "用真值表判定器精确判定（仅命题片段）"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("file", help="问题文件 (.clp)")
        cmd.add_argument("--query", type=int, help="按 1 起的下标选择查询（默认取该类型的第一条）")
        _add_budget_flags(cmd)

    dde = sub.add_parser("dde", help="从两难知识库推导 C5a / C5b")
    dde.add_argument("file", nargs="?", default=config.DILEMMA_PATH, help="两难问题文件")
    dde.add_argument("--clause", choices=["a", "b", "both"], default="both")
    dde.add_argument("--ablate", action="store_true", help="去掉主体所信的公共知识前提")
    _add_budget_flags(dde)

    bench = sub.add_parser("bench", help="运行基准数据集")
    bench.add_argument("dataset", nargs="?", default=config.DATASET_DIR)
    bench.add_argument("--workers", type=int, default=config.BENCH_WORKERS, help="并发问题数（1 为确定性模式）")
    bench.add_argument("--progress", action="store_true", help="显示进度条")
    _add_budget_flags(bench)

    validate = sub.add_parser("validate", help="校验基准数据集")
    validate.add_argument("dataset", nargs="?", default=config.DATASET_DIR)
    validate.add_argument("--timeout-ms", type=int, default=config.VALIDATION_TIMEOUT_MS)
    validate.add_argument("--json", action="store_true")
    return parser


def settings_from_args(args: argparse.Namespace) -> Tuple[Budget, CfConfig]:
    """命令行参数覆盖配置文件；非法值由 pydantic 拒绝"""
    budget_fields: Dict[str, Any] = {}
    cf_fields: Dict[str, Any] = {}
    if getattr(args, "timeout_ms", None) is not None:
        budget_fields["timeout_ms"] = args.timeout_ms
        cf_fields["overall_cap_ms"] = args.timeout_ms
        cf_fields["entailment_ms"] = min(args.timeout_ms, config.CF_ENTAILMENT_MS)
    if getattr(args, "depth", None) is not None:
        budget_fields["depth"] = args.depth
        cf_fields["depth"] = args.depth
    if getattr(args, "delta_ms", None) is not None:
        cf_fields["delta_ms"] = args.delta_ms
    if getattr(args, "order", None) is not None:
        cf_fields["order"] = args.order
    return Budget(**budget_fields), CfConfig(**cf_fields)


def select_query(problem: Problem, kind: QueryKind, index: Optional[int]) -> Tuple[int, Query]:
    """取 --query 指定的查询（1 起下标）或该类型的第一条

    Raises:
        CliInputError: 下标越界、类型不符或文件中没有该类型的查询
    """
    if index is not None:
        if not 1 <= index <= len(problem.queries):
            raise CliInputError(f"--query {index} out of range 1..{len(problem.queries)}")
        query = problem.queries[index - 1]
        if query.kind is not kind:
            raise CliInputError(f"query {index} is '{query.kind.value}', not '{kind.value}'")
        return index, query
    for i, query in enumerate(problem.queries, start=1):
        if query.kind is kind:
            return i, query
    raise CliInputError(f"{problem.name} has no '{kind.value}' query")


# ==================== 输出 ====================

def _colored_status(status: str) -> str:
    color = Fore.GREEN if status == ProofStatus.PROVED.value else Fore.RED
    return f"{color}{status}{Style.RESET_ALL}"


def _emit(payload: Dict[str, Any], as_json: bool, lines: Sequence[str]) -> None:
    if as_json:
        print(json.dumps(payload, default=json_safe_encoder, ensure_ascii=False, indent=2))
        return
    for line in lines:
        print(line)


def _cf_lines(result) -> List[str]:
    lines = [
        f"status: {_colored_status(result.status.value)}",
        f"elapsed: {result.elapsed_ms:.1f} ms",
    ]
    witness = result.witness
    if witness is not None and witness.kind is WitnessKind.INCONSISTENT_ANTECEDENT:
        lines.append("witness: antecedent is inconsistent")
    elif witness is not None:
        lines.append(f"witness Γ′ (indices {list(witness.indices)}):")
        lines.extend(f"  {print_formula(f)}" for f in witness.subset)
        if witness.approximation_used:
            lines.append("  (consistency presumed within δ)")
    c = result.counters
    lines.append(
        f"subsets: {c.subsets_examined} examined, {c.subsets_pruned} pruned; "
        f"calls: {c.consistency_calls} consistency, {c.entailment_calls} entailment"
    )
    return lines


# ==================== 子命令 ====================

def _exit_for(proved: bool) -> int:
    return EXIT_PROVED if proved else EXIT_NOT_PROVED


def cmd_prove(args: argparse.Namespace) -> int:
    problem = load_problem(args.file)
    budget, _ = settings_from_args(args)
    index, query = select_query(problem, QueryKind.ENTAIL, args.query)
    outcome = prove(problem.assumptions, query.goal, budget, problem.signature)
    payload = {"problem": problem.name, "query": index, **outcome.to_dict()}
    lines = [
        f"{problem.name} #{index}: {print_query(query)}",
        f"status: {_colored_status(outcome.status.value)}",
        f"elapsed: {outcome.elapsed_ms:.1f} ms",
    ]
    lines.extend(f"  {step.rule}: {print_formula(step.conclusion)}" for step in outcome.justification)
    _emit(payload, args.json, lines)
    return _exit_for(outcome.proved)


def cmd_cf(args: argparse.Namespace) -> int:
    problem = load_problem(args.file)
    _, cfg = settings_from_args(args)
    kind = QueryKind.CF_IN if args.command == "cf-in" else QueryKind.CF
    index, query = select_query(problem, kind, args.query)
    if kind is QueryKind.CF_IN:
        result = prove_counterfactual_in_context(
            problem.assumptions, query.context, query.antecedent, query.consequent, cfg, problem.signature,
        )
    else:
        result = prove_counterfactual(problem.assumptions, query.antecedent, query.consequent, cfg, problem.signature)
    payload = {"problem": problem.name, "query": index, **result.to_dict()}
    _emit(payload, args.json, [f"{problem.name} #{index}: {print_query(query)}", *_cf_lines(result)])
    return _exit_for(result.proved)


def cmd_oracle(args: argparse.Namespace) -> int:
    problem = load_problem(args.file)
    if args.query is not None and 1 <= args.query <= len(problem.queries):
        kind = problem.queries[args.query - 1].kind
    else:
        kind = QueryKind.CF if problem.queries_of(QueryKind.CF) else QueryKind.ENTAIL
    if kind is QueryKind.CF_IN:
        raise FragmentError("cf-in queries are modal; the oracle only decides the propositional fragment")
    index, query = select_query(problem, kind, args.query)
    payload: Dict[str, Any] = {"problem": problem.name, "query": index}
    if kind is QueryKind.ENTAIL:
        entailed = oracle_entails(problem.assumptions, query.goal)
        payload["entailed"] = entailed
        lines = [f"entailed: {entailed}"]
    else:
        verdict = oracle_counterfactual(problem.assumptions, query.antecedent, query.consequent)
        payload.update({
            "entailed": verdict.entailed,
            "witness": list(verdict.witness) if verdict.witness is not None else None,
            "inconsistent_antecedent": verdict.inconsistent_antecedent,
            "subsets_examined": verdict.subsets_examined,
        })
        lines = [f"entailed: {verdict.entailed}"]
        if verdict.inconsistent_antecedent:
            lines.append("witness: antecedent is unsatisfiable")
        elif verdict.witness is not None:
            lines.append(f"witness Γ′ (indices {list(verdict.witness)}):")
            lines.extend(f"  {print_formula(problem.assumptions[i])}" for i in verdict.witness)
    _emit(payload, args.json, [f"{problem.name} #{index}: {print_query(query)}", *lines])
    return _exit_for(payload["entailed"])


def cmd_dde(args: argparse.Namespace) -> int:
    kb = load_dilemma(args.file)
    if args.ablate:
        kb = kb.without_believed_common_knowledge()
        logger.info(f"ablation: {len(kb.assumptions)} assumptions kept")
    budget, cfg = settings_from_args(args)
    clauses = [C5Clause.A, C5Clause.B] if args.clause == "both" else [C5Clause(args.clause)]
    payload: Dict[str, Any] = {"problem": kb.name, "ablated": args.ablate, "clauses": {}}
    lines: List[str] = []
    proved = True
    for clause in clauses:
        goal = c5a_formula(kb) if clause is C5Clause.A else c5b_formula(kb)
        result = derive_c5(kb, clause, budget, cfg)
        proved = proved and result.proved
        payload["clauses"][f"C5{clause.value}"] = {"formula": print_formula(goal), **result.to_dict()}
        lines.append(f"C5{clause.value}: {_colored_status(result.status.value)} ({result.elapsed_ms:.1f} ms)")
        lines.append(f"  {print_formula(goal)}")
    _emit(payload, args.json, lines)
    return _exit_for(proved)


def cmd_bench(args: argparse.Namespace) -> int:
    budget, cfg = settings_from_args(args)
    report = run_benchmark(args.dataset, cfg, budget, workers=args.workers, progress=args.progress)
    misses = unexpected(report.records)
    if args.json:
        print(emit_report(report))
    else:
        for record in report.records:
            mark = "" if record.as_expected else f"  (expected {record.expected})"
            print(f"{record.problem:<14} {record.kind.value:<16} {_colored_status(record.status)} "
                  f"{record.elapsed_ms / 1000.0:8.3f}s{mark}")
        print()
        print(format_summary(report.records))
    for record in misses:
        logger.warning(f"{record.problem}/{record.kind.value}: {record.status}, expected {record.expected}")
    return EXIT_PROVED if not misses else EXIT_NOT_PROVED


def cmd_validate(args: argparse.Namespace) -> int:
    report = validate_dataset(args.dataset, args.timeout_ms)
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        print(f"{report.dataset}: {report.problems} problems, {len(report.issues)} issue(s)")
        for issue in report.issues:
            print(f"  {issue.problem or '-'}: {issue.message}")
    return EXIT_PROVED if report.clean else EXIT_NOT_PROVED


COMMANDS = {
    "prove": cmd_prove,
    "cf": cmd_cf,
    "cf-in": cmd_cf,
    "oracle": cmd_oracle,
    "dde": cmd_dde,
    "bench": cmd_bench,
    "validate": cmd_validate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """解析参数并运行子命令

    Returns:
        int: 退出码（argparse 自身的用法错误以 SystemExit(2) 退出）
    """
    colorama_init()
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (CliInputError, *INPUT_ERRORS) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
