# test/test_harness.py
"""测试工具测试：判定器、数据集、报告、调度器与命令行"""

import asyncio
import json
import shutil
import time
from pathlib import Path

import pytest
import yaml

import config
from core.counterfactual import CfConfig, SubsetOrder, WitnessKind, prove_counterfactual, verify_witness
from core.harness import (
    BenchJob, BenchRecord, BenchReport, BenchScheduler, DatasetError, FragmentError, JobStatus, RecordKind,
    emit_report, format_summary, load_dataset, oracle_consistent, oracle_counterfactual,
    oracle_entails, parse_report, run_benchmark, summary_table, validate_dataset,
)
from core.harness.cli import EXIT_INPUT_ERROR, EXIT_NOT_PROVED, EXIT_PROVED, main
from core.harness.generators import FormulaGenerator
from core.kernel import FALSE, Atom, Const, Implies, Modal, ModalOp, Not
from core.kernel.formulas import And, Or
from core.prover import Budget, Deadline
from util.decoder import json_safe_encoder

DATA = Path(__file__).resolve().parent.parent / "data"
DATASET = DATA / "dataset"
EXAMPLES = DATA / "examples"

p, q = Atom("p"), Atom("q")

ENGINE = CfConfig(delta_ms=5000, entailment_ms=5000, overall_cap_ms=120000)


def small_dataset(tmp_path, files, **overrides):
    """把数据集中的若干问题复制到临时目录并写清单"""
    manifest = yaml.safe_load((DATASET / "manifest.yaml").read_text(encoding="utf-8"))
    kept = [item for item in manifest["problems"] if item["file"] in files]
    for item in kept:
        item.update(overrides.get(item["file"], {}))
        shutil.copy(DATASET / item["file"], tmp_path / item["file"])
    manifest["problems"] = kept
    (tmp_path / "manifest.yaml").write_text(yaml.safe_dump(manifest, allow_unicode=True), encoding="utf-8")
    return str(tmp_path)


def equivalent(gen, phi):
    """φ 的一个逻辑等价改写"""
    choice = gen.rng.randrange(3)
    if choice == 0:
        return Not(Not(phi))
    if choice == 1:
        return And((phi, phi))
    return Or((phi, And((phi, gen.formula(1)))))


def record(problem, kind, seconds, status="Proved"):
    return BenchRecord(problem=problem, kind=kind, status=status, expected="Proved", elapsed_ms=seconds * 1000)


class TestOracle:
    """真值表判定器"""

    def test_identity(self):
        """测试 Γ={¬p}、φ=ψ=p 时成立"""
        assert oracle_counterfactual([Not(p)], p, p).entailed

    def test_witness_small_first(self):
        """测试 small-first 下的第一个见证"""
        verdict = oracle_counterfactual([Not(p), Implies(p, q)], p, q)
        assert verdict.entailed
        assert verdict.witness == (1,)

    def test_absurd_consequent(self):
        """测试一致的前件推不出 ⊥"""
        assert not oracle_counterfactual([Not(p)], p, FALSE).entailed

    def test_unsatisfiable_antecedent(self):
        """测试不可满足的前件"""
        verdict = oracle_counterfactual([], And((p, Not(p))), q)
        assert verdict.entailed and verdict.inconsistent_antecedent

    def test_basic_queries(self):
        """测试可满足性与蕴涵"""
        assert oracle_consistent([p, Implies(p, q)])
        assert not oracle_consistent([p, Not(p)])
        assert oracle_entails([p, Implies(p, q)], q)

    def test_modal_rejected(self):
        """测试模态输入超出命题片段"""
        k = Modal(ModalOp.KNOWS, Const("a", "Agent"), Const("t", "Moment"), p)
        with pytest.raises(FragmentError):
            oracle_counterfactual([k], p, p)

    def test_too_many_premises(self):
        """测试前提数超过判定器上限"""
        gamma = [Atom(f"q{i}") for i in range(config.ORACLE_MAX_PREMISES + 1)]
        with pytest.raises(FragmentError):
            oracle_counterfactual(gamma, p, p)

    @pytest.mark.slow
    def test_engine_agrees(self):
        """测试 500 个随机命题实例上引擎（两种顺序）与判定器一致，且每个见证都能复核"""
        seed = config.RANDOM_SEED
        gen = FormulaGenerator(seed=seed)
        for i in range(500):
            gamma, phi, psi = gen.instance(max_premises=8)
            expected = oracle_counterfactual(gamma, phi, psi).entailed
            for order in SubsetOrder:
                cfg = ENGINE.model_copy(update={"order": order})
                result = prove_counterfactual(gamma, phi, psi, cfg)
                label = f"seed={seed} case={i} order={order.value}"
                assert result.proved == expected, label
                if not result.proved:
                    continue
                assert verify_witness(result, gamma, phi, psi, cfg), label
                if result.witness.kind is WitnessKind.SUBSET:
                    chosen = list(result.witness.subset) + [phi]
                    assert oracle_consistent(chosen) and oracle_entails(chosen, psi), label


class TestEquivalentAntecedents:
    """互推前件的性质族（判定器层面）"""

    def test_mutual_antecedents_material(self):
        """测试 Γ 下 φ、ψ 互为反事实时 φ → χ 与 ψ → χ 同真"""
        seed = config.RANDOM_SEED + 101
        gen = FormulaGenerator(seed=seed)
        for i in range(100):
            gamma, phi, chi = gen.instance()
            psi = equivalent(gen, phi) if i % 2 else gen.formula(2)
            if oracle_counterfactual(gamma, phi, psi).entailed and oracle_counterfactual(gamma, psi, phi).entailed:
                left = oracle_entails(gamma, Implies(phi, chi))
                assert left == oracle_entails(gamma, Implies(psi, chi)), f"seed={seed} case={i}"

    def test_cso_antecedent(self):
        """测试 {} 下 φ、ψ 互为反事实时 φ ↪ χ 与 ψ ↪ χ 同真"""
        seed = config.RANDOM_SEED + 102
        gen = FormulaGenerator(seed=seed)
        for i in range(100):
            gamma, phi, chi = gen.instance()
            psi = equivalent(gen, phi) if i % 2 else gen.formula(2)
            if oracle_counterfactual([], phi, psi).entailed and oracle_counterfactual([], psi, phi).entailed:
                left = oracle_counterfactual(gamma, phi, chi).entailed
                assert left == oracle_counterfactual(gamma, psi, chi).entailed, f"seed={seed} case={i}"

    def test_cso_consequent(self):
        """测试 {} 下 φ、ψ 互为反事实时 χ ↪ φ 与 χ ↪ ψ 同真"""
        seed = config.RANDOM_SEED + 103
        gen = FormulaGenerator(seed=seed)
        for i in range(100):
            gamma, phi, chi = gen.instance()
            psi = equivalent(gen, phi) if i % 2 else gen.formula(2)
            if oracle_counterfactual([], phi, psi).entailed and oracle_counterfactual([], psi, phi).entailed:
                left = oracle_counterfactual(gamma, chi, phi).entailed
                assert left == oracle_counterfactual(gamma, chi, psi).entailed, f"seed={seed} case={i}"


class TestDataset:
    """数据集读取与校验"""

    def test_load(self):
        """测试清单列出 16 个问题，每个都有三类条件句"""
        dataset = load_dataset(str(DATASET))
        assert len(dataset.entries) == 16
        assert dataset.entries[0].name == "socrates"
        assert dataset.entries[0].expected[RecordKind.CF_ABSURD] == "NotProvedWithinBudget"

    @pytest.mark.slow
    def test_shipped_dataset_clean(self):
        """测试随附数据集通过全部检查"""
        report = validate_dataset(str(DATASET))
        assert report.clean, [issue.message for issue in report.issues]

    def test_wrong_premise_count(self, tmp_path):
        """测试清单前提数与文件不符、问题数不足都被报告"""
        directory = small_dataset(tmp_path, ["02_storm.clp"], **{"02_storm.clp": {"premises": 5}})
        report = validate_dataset(directory, timeout_ms=5000)
        messages = [issue.message for issue in report.issues]
        assert any("manifest says 5 premises" in m for m in messages)
        assert any("expected at least 16" in m for m in messages)

    def test_oracle_disagreement(self, tmp_path):
        """测试期望状态与判定器不一致时被报告"""
        overrides = {"02_storm.clp": {"expected": {"cf-absurd": "Proved"}}}
        directory = small_dataset(tmp_path, ["02_storm.clp"], **overrides)
        report = validate_dataset(directory, timeout_ms=5000)
        assert any("oracle says" in issue.message and issue.problem == "storm" for issue in report.issues)

    def test_wrong_propositional_flag(self, tmp_path):
        """测试 propositional 标记与文件不符"""
        directory = small_dataset(tmp_path, ["01_socrates.clp"], **{"01_socrates.clp": {"propositional": True}})
        report = validate_dataset(directory, timeout_ms=5000)
        assert any("propositional" in issue.message for issue in report.issues)

    def test_missing_manifest(self, tmp_path):
        """测试缺少清单"""
        with pytest.raises(DatasetError):
            load_dataset(str(tmp_path))


class TestReport:
    """汇总表与 JSON 报告"""

    def test_summary_columns(self):
        """测试汇总表的列与行序"""
        records = [
            record("a", RecordKind.CF_ABSURD, 3.0, "NotProvedWithinBudget"),
            record("a", RecordKind.CF, 1.0),
            record("b", RecordKind.CF, 3.0),
            record("a", RecordKind.MATERIAL_ABSURD, 0.5),
        ]
        table = summary_table(records)
        assert list(table.columns) == ["Formula-kind", "Mean", "Min", "Max"]
        assert list(table["Formula-kind"]) == ["φ ↪ ψ", "φ → ⊥", "φ ↪ ⊥"]
        assert table.iloc[0]["Mean"] == pytest.approx(2.0)
        assert table.iloc[0]["Max"] == pytest.approx(3.0)
        assert "Formula-kind" in format_summary(records)

    def test_empty_summary(self):
        """测试没有记录时返回空表"""
        assert summary_table([]).empty

    def test_json_round_trip(self):
        """测试 parse(emit(report)) == report"""
        report = BenchReport(
            dataset="data/dataset",
            seed=config.RANDOM_SEED,
            settings={"workers": 1},
            records=[record("a", RecordKind.CF, 1.25), record("a", RecordKind.MATERIAL_ABSURD, 0.5)],
        )
        assert parse_report(emit_report(report)) == report

    def test_expectations(self):
        """测试 as_expected 判定"""
        miss = record("a", RecordKind.CF, 1.0, "NotProvedWithinBudget")
        assert not miss.as_expected
        assert not BenchReport(dataset="x", seed=0, records=[miss]).all_as_expected

    def test_json_encoder(self):
        """测试 --json 输出的兜底编码器"""
        payload = {"formula": Implies(p, q), "kind": RecordKind.CF, "indices": (0, 2)}
        decoded = json.loads(json.dumps(payload, default=json_safe_encoder))
        assert decoded == {"formula": "(implies p q)", "kind": "cf", "indices": [0, 2]}
        with pytest.raises(TypeError):
            json.dumps({"x": object()}, default=json_safe_encoder)


class TestBenchScheduler:
    """基准调度器"""

    def test_invalid_limit(self):
        """测试并发上限必须为正"""
        with pytest.raises(ValueError):
            BenchScheduler(max_concurrent_jobs=0)

    async def test_run_all_keeps_order(self):
        """测试全部任务完成且保持输入顺序"""
        scheduler = BenchScheduler(max_concurrent_jobs=2)
        jobs = [
            BenchJob(problem=f"p{i}", kind=RecordKind.CF, run=lambda i=i: record(f"p{i}", RecordKind.CF, 0.1 * i))
            for i in range(4)
        ]
        done = []
        result = await scheduler.run_all(jobs, on_done=lambda job: done.append(job.problem))
        assert [job.problem for job in result] == ["p0", "p1", "p2", "p3"]
        assert all(job.status is JobStatus.COMPLETED for job in result)
        assert sorted(done) == ["p0", "p1", "p2", "p3"]
        assert scheduler.get_running_count() == 0

    async def test_timeout_becomes_not_proved(self):
        """测试监控超时记为 NotProvedWithinBudget"""
        scheduler = BenchScheduler()
        job = BenchJob(
            problem="slow", kind=RecordKind.CF_ABSURD, run=lambda: time.sleep(0.5), timeout=0.05,
            expected="NotProvedWithinBudget",
        )
        await scheduler.run_all([job])
        assert job.status is JobStatus.COMPLETED
        assert job.result.status == "NotProvedWithinBudget"
        assert job.result.as_expected

    async def test_timeout_stops_worker(self):
        """测试超时后工作线程在下一次截止检查时停下，调度器等它退出后才返回"""
        events = []

        def spin():
            deadline = Deadline(60000)
            while not deadline.expired():
                time.sleep(0.01)
            events.append("stopped")

        scheduler = BenchScheduler()
        job = BenchJob(problem="spin", kind=RecordKind.CF, run=spin, timeout=0.1)
        start = time.monotonic()
        await scheduler.run_all([job])
        assert events == ["stopped"]
        assert time.monotonic() - start < 5
        assert job.result.status == "NotProvedWithinBudget"

    async def test_next_job_waits_for_stopped_worker(self):
        """测试单工作线程下，下一个任务在超时任务的线程退出后才开始"""
        events = []

        def spin():
            deadline = Deadline(60000)
            while not deadline.expired():
                time.sleep(0.01)
            events.append("first stopped")

        def follow():
            events.append("second started")
            return record("b", RecordKind.CF, 0.0)

        scheduler = BenchScheduler(max_concurrent_jobs=1)
        first = BenchJob(problem="a", kind=RecordKind.CF, run=spin, timeout=0.1)
        second = BenchJob(problem="b", kind=RecordKind.CF, run=follow)
        await scheduler.run_all([first, second])
        assert events == ["first stopped", "second started"]

    async def test_cancel_stops_worker(self):
        """测试取消任务时置位停止信号并标记为失败"""
        events = []

        def spin():
            deadline = Deadline(60000)
            while not deadline.expired():
                time.sleep(0.01)
            events.append("stopped")

        scheduler = BenchScheduler()
        job = BenchJob(problem="spin", kind=RecordKind.CF, run=spin)
        assert await scheduler.schedule(job)
        await asyncio.sleep(0.05)
        assert await scheduler.cancel_job(job.job_id)
        while scheduler.get_running_count():
            await asyncio.sleep(0.01)
        assert events == ["stopped"]
        assert job.status is JobStatus.FAILED and job.error == "cancelled"

    async def test_failure_recorded(self):
        """测试任务异常时标记为失败"""
        def boom():
            raise RuntimeError("boom")

        scheduler = BenchScheduler()
        job = BenchJob(problem="bad", kind=RecordKind.CF, run=boom)
        await scheduler.run_all([job])
        assert job.status is JobStatus.FAILED
        assert job.error == "boom"

    async def test_concurrency_limit(self):
        """测试达到并发上限时拒绝调度"""
        scheduler = BenchScheduler(max_concurrent_jobs=1)
        first = BenchJob(problem="a", kind=RecordKind.CF, run=lambda: time.sleep(0.1))
        second = BenchJob(problem="b", kind=RecordKind.CF, run=lambda: None)
        assert await scheduler.schedule(first)
        assert not await scheduler.schedule(second)
        assert await scheduler.cancel_job(first.job_id)
        while scheduler.get_running_count():
            await asyncio.sleep(0.01)
        assert first.status is JobStatus.FAILED


class TestBenchmark:
    """基准运行"""

    def test_small_run(self, tmp_path):
        """测试两个问题得到 6 条符合期望的记录"""
        directory = small_dataset(tmp_path, ["01_socrates.clp", "02_storm.clp"])
        cfg = CfConfig(delta_ms=2000, entailment_ms=5000, overall_cap_ms=20000)
        report = run_benchmark(directory, cfg, Budget(timeout_ms=10000), workers=1)
        assert len(report.records) == 6
        assert [r.kind for r in report.records[:3]] == list(RecordKind)
        assert report.all_as_expected, [(r.problem, r.kind.value, r.status) for r in report.records]
        assert report.seed == config.RANDOM_SEED

    @pytest.mark.slow
    def test_deterministic(self):
        """测试单工作线程下两次运行的状态与见证相同，平均耗时 cf-absurd > cf > material-absurd"""
        first = run_benchmark(str(DATASET), workers=1)
        second = run_benchmark(str(DATASET), workers=1)
        assert [(r.status, r.witness) for r in first.records] == [(r.status, r.witness) for r in second.records]
        assert first.all_as_expected
        cf, material_absurd, cf_absurd = summary_table(first.records)["Mean"].tolist()
        assert cf_absurd > cf > material_absurd, (cf, material_absurd, cf_absurd)


class TestCli:
    """命令行退出码与输出"""

    def test_cf_socrates(self):
        """测试 Socrates 的 cf 查询退出码 0"""
        assert main(["cf", str(EXAMPLES / "socrates.clp")]) == EXIT_PROVED

    def test_cf_absurd(self):
        """测试第三条查询（荒谬后件）退出码 1"""
        assert main(["cf", str(EXAMPLES / "socrates.clp"), "--query", "3", "--timeout-ms", "10000"]) == EXIT_NOT_PROVED

    def test_prove_empty(self):
        """测试空假设的 prove 退出码 0"""
        assert main(["prove", str(EXAMPLES / "empty.clp")]) == EXIT_PROVED

    def test_cf_in(self):
        """测试 cf-in 查询"""
        assert main(["cf-in", str(EXAMPLES / "belief.clp")]) == EXIT_PROVED

    def test_malformed_file(self, tmp_path):
        """测试语法错误退出码 2"""
        bad = tmp_path / "bad.clp"
        bad.write_text("(problem bad (assumptions P", encoding="utf-8")
        assert main(["prove", str(bad)]) == EXIT_INPUT_ERROR

    def test_deep_nesting(self, tmp_path):
        """测试 3000 层嵌套的输入给出诊断并退出码 2"""
        deep = tmp_path / "deep.clp"
        body = "(not " * 3000 + "p" + ")" * 3000
        deep.write_text(f"(problem deep (rel p ()) (assumptions {body}) (queries))", encoding="utf-8")
        assert main(["prove", str(deep)]) == EXIT_INPUT_ERROR

    def test_invalid_utf8(self, tmp_path):
        """测试非 UTF-8 字节给出诊断并退出码 2"""
        bad = tmp_path / "bad.clp"
        bad.write_bytes(b"\xff\xfe(problem bad)")
        assert main(["prove", str(bad)]) == EXIT_INPUT_ERROR

    def test_missing_file(self, tmp_path):
        """测试文件不存在退出码 2"""
        assert main(["prove", str(tmp_path / "none.clp")]) == EXIT_INPUT_ERROR

    def test_query_kind_mismatch(self):
        """测试 --query 指向其他类型的查询退出码 2"""
        assert main(["prove", str(EXAMPLES / "socrates.clp"), "--query", "1"]) == EXIT_INPUT_ERROR

    def test_oracle_rejects_modal(self):
        """测试判定器拒绝 cf-in 查询"""
        assert main(["oracle", str(EXAMPLES / "belief.clp"), "--query", "1"]) == EXIT_INPUT_ERROR

    def test_json_output(self, capsys):
        """测试 --json 输出单个可解析的文档"""
        assert main(["cf", str(EXAMPLES / "socrates.clp"), "--json"]) == EXIT_PROVED
        payload = json.loads(capsys.readouterr().out)
        assert payload["status"] == "Proved"
        assert payload["query"] == 1
        assert payload["witness"]["indices"] == [0]
