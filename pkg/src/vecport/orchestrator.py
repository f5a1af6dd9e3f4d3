"""Per-case finite state machine: translate, repair, optimize, select best.

The correctness loop (Translate -> Compile -> FuncTest) repairs the candidate
from compiler diagnostics or test reports until it passes on every configured
VLEN or the translation budget runs out. The optimization loop then iterates
on the current best variant with register-pressure and speedup feedback;
failed optimization rounds consume budget but can never lose the correct
baseline, so the returned best variant always passed all tests.

Every LLM call is recorded as one Attempt; with a replay client and mock
executors the whole trace, log included, reproduces byte-for-byte except for
timestamps.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path

from .agents import (
    Diagnostics,
    build_optimize_prompt,
    build_repair_prompt,
    build_translate_prompt,
    extract_code,
)
from .corpus import ValidatedCase
from .errors import NoCodeError, PerfError, ReplayExhaustedError, VecportError
from .executors import CompileResult, PerfResult, TestResult
from .liveness import PressureReport, analyze_source
from .metrics import OutcomeSummary


class FsmState(Enum):
    INIT = "Init"
    TRANSLATE = "Translate"
    COMPILE = "Compile"
    FUNC_TEST = "FuncTest"
    BASELINE_PERF = "BaselinePerf"
    OPTIMIZE = "Optimize"
    OPT_COMPILE = "OptCompile"
    OPT_TEST = "OptTest"
    OPT_PERF = "OptPerf"
    SELECT_BEST = "SelectBest"
    DONE = "Done"
    FAILED = "Failed"


@dataclass
class Budgets:
    translate_max: int = 10
    optimize_max: int = 10

    def __post_init__(self):
        if self.translate_max < 1 or self.optimize_max < 0:
            raise ValueError("budgets must be positive")


@dataclass
class Attempt:
    attempt_no: int
    phase: str  # "translation" | "optimization"
    prompt_digest: str
    response_digest: str
    code: str
    compile_ok: bool | None = None
    compile_diagnostics: str = ""
    tests_passed: bool | None = None
    test_report: str = ""
    pressure: dict | None = None  # report fed into an optimization prompt
    note: str = ""
    timestamp: float = 0.0

    def to_record(self) -> dict:
        return {
            "attempt_no": self.attempt_no,
            "phase": self.phase,
            "prompt_digest": self.prompt_digest,
            "response_digest": self.response_digest,
            "code": self.code,
            "compile_ok": self.compile_ok,
            "compile_diagnostics": self.compile_diagnostics,
            "tests_passed": self.tests_passed,
            "test_report": self.test_report,
            "pressure": self.pressure,
            "note": self.note,
            "timestamp": self.timestamp,
        }


@dataclass
class Variant:
    variant_id: int
    code: str
    pressure: PressureReport | None = None
    perf: PerfResult | None = None
    passed_all_tests: bool = True


@dataclass
class TaskOutcome:
    case_id: str
    passed: bool
    attempts_used: int
    best_variant: Variant | None
    all_attempts: list[Attempt]
    variants: list[Variant] = field(default_factory=list)
    final_speedup: Fraction | None = None
    fsm_trace: list[FsmState] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def summary(self) -> OutcomeSummary:
        return OutcomeSummary(
            case_id=self.case_id,
            passed=self.passed,
            attempts_used=self.attempts_used,
            final_speedup=self.final_speedup,
        )

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "passed": self.passed,
            "attempts_used": self.attempts_used,
            "final_speedup": str(self.final_speedup) if self.final_speedup is not None else None,
            "best_variant": None
            if self.best_variant is None
            else {
                "variant_id": self.best_variant.variant_id,
                "code": self.best_variant.code,
                "pressure": self.best_variant.pressure.to_dict()
                if self.best_variant.pressure
                else None,
                "perf": self.best_variant.perf.to_dict() if self.best_variant.perf else None,
            },
            "attempts": [a.to_record() for a in self.all_attempts],
            "fsm_trace": [s.value for s in self.fsm_trace],
            "notes": self.notes,
        }


@dataclass
class TaskDeps:
    """Everything a task needs injected: the model client and the executors."""

    client: object  # LlmClient
    executor: object  # CommandExecutor | MockExecutor
    temperature: float = 0.2
    max_tokens: int = 4096
    pressure_mode: str = "literal"
    log_dir: Path | None = None
    perf_runs: int = 5


def select_best(variants: list[Variant]) -> Variant:
    """Best-performing passing variant: measured beats unmeasured, higher
    speedup beats lower, ties go to the earliest variant."""
    if not variants:
        raise ValueError("select_best requires at least one passing variant")
    best = variants[0]
    for v in variants[1:]:
        if v.perf is None:
            continue
        if best.perf is None or v.perf.speedup > best.perf.speedup:
            best = v
    return best


class _TaskLog:
    def __init__(self, log_dir: Path | None, case_id: str):
        self.path = None
        if log_dir is not None:
            d = Path(log_dir) / case_id / "log"
            d.mkdir(parents=True, exist_ok=True)
            self.path = d / "attempts.ndjson"
            self.path.write_text("")

    def record(self, attempt: Attempt) -> None:
        if self.path is not None:
            with self.path.open("a") as fh:
                fh.write(json.dumps(attempt.to_record(), sort_keys=True) + "\n")


def _safe_pressure(code: str, signature: str, mode: str) -> PressureReport | None:
    try:
        return analyze_source(code, signature, mode)
    except VecportError:
        return None


def run_task(case: ValidatedCase, budgets: Budgets, deps: TaskDeps) -> TaskOutcome:
    """Drive one case through the full FSM; see the module docstring.

    Configuration errors (missing tools, unusable replay script) propagate to
    the caller; they abort the run and are never folded into a Failed outcome.
    """
    trace = [FsmState.INIT]
    attempts: list[Attempt] = []
    notes: list[str] = []
    log = _TaskLog(deps.log_dir, case.case_id)
    client = deps.client.session(case.case_id) if hasattr(deps.client, "session") else deps.client

    def call_llm(bundle) -> tuple[str, str]:
        text = client.complete(bundle.messages, deps.temperature, deps.max_tokens)
        return text, hashlib.sha256(text.encode()).hexdigest()

    # --- correctness loop -------------------------------------------------
    feedback: Diagnostics | None = None
    prev_code = ""
    v0: Variant | None = None
    attempts_used = budgets.translate_max

    for attempt_no in range(1, budgets.translate_max + 1):
        trace.append(FsmState.TRANSLATE)
        if feedback is None:
            bundle = build_translate_prompt(case)
        else:
            bundle = build_repair_prompt(case, prev_code, feedback)
        response, response_digest = call_llm(bundle)
        attempt = Attempt(
            attempt_no=attempt_no,
            phase="translation",
            prompt_digest=bundle.context_digest,
            response_digest=response_digest,
            code="",
            timestamp=time.time(),
        )
        try:
            code = extract_code(response)
        except NoCodeError:
            attempt.note = "no code emitted"
            attempts.append(attempt)
            log.record(attempt)
            prev_code = response
            feedback = Diagnostics(
                "compile",
                "the previous reply contained no code block; reply with exactly "
                "one fenced code block holding the complete C file",
            )
            continue
        attempt.code = code
        prev_code = code

        trace.append(FsmState.COMPILE)
        compiled: CompileResult = deps.executor.compile_candidate(
            code, case, "functional", tag=f"t{attempt_no}"
        )
        attempt.compile_ok = compiled.success
        attempt.compile_diagnostics = compiled.diagnostics
        if not compiled.success:
            attempts.append(attempt)
            log.record(attempt)
            feedback = Diagnostics("compile", compiled.diagnostics)
            continue

        trace.append(FsmState.FUNC_TEST)
        tested: TestResult = deps.executor.run_functional_tests(compiled.artifact_path)
        attempt.tests_passed = tested.all_passed
        attempt.test_report = tested.describe()
        attempts.append(attempt)
        log.record(attempt)
        if not tested.all_passed:
            feedback = Diagnostics("test", tested.describe())
            continue

        attempts_used = attempt_no
        v0 = Variant(
            variant_id=0,
            code=code,
            pressure=_safe_pressure(code, case.function_signature, deps.pressure_mode),
        )
        break

    if v0 is None:
        trace.append(FsmState.FAILED)
        return TaskOutcome(
            case_id=case.case_id,
            passed=False,
            attempts_used=budgets.translate_max,
            best_variant=None,
            all_attempts=attempts,
            fsm_trace=trace,
            notes=notes,
        )

    # --- baseline measurement ---------------------------------------------
    trace.append(FsmState.BASELINE_PERF)
    native_artifact = None
    native_compiled = deps.executor.compile_candidate(
        case.native_text, case, "perf", tag="native"
    )
    if native_compiled.success:
        native_artifact = native_compiled.artifact_path
    else:
        notes.append("native reference failed to compile; no perf data for this case")
    if native_artifact is not None:
        v0_perf_compiled = deps.executor.compile_candidate(
            v0.code, case, "perf", tag="t0-perf"
        )
        if v0_perf_compiled.success:
            try:
                v0.perf = deps.executor.run_perf(
                    v0_perf_compiled.artifact_path, native_artifact, deps.perf_runs
                )
            except PerfError as exc:
                notes.append(f"baseline perf unavailable: {exc}")
        else:
            notes.append("baseline perf harness failed to compile")

    variants = [v0]

    # --- optimization loop --------------------------------------------------
    opt_feedback: Diagnostics | None = None
    for opt_no in range(1, budgets.optimize_max + 1):
        trace.append(FsmState.OPTIMIZE)
        anchor = select_best(variants)
        pressure = _safe_pressure(anchor.code, case.function_signature, deps.pressure_mode)
        bundle = build_optimize_prompt(
            case,
            anchor.code,
            pressure,
            speedup=anchor.perf.speedup if anchor.perf else None,
            feedback=opt_feedback,
        )
        try:
            response, response_digest = call_llm(bundle)
        except ReplayExhaustedError:
            notes.append(f"replay script exhausted after {opt_no - 1} optimization rounds")
            break
        attempt = Attempt(
            attempt_no=opt_no,
            phase="optimization",
            prompt_digest=bundle.context_digest,
            response_digest=response_digest,
            code="",
            pressure=pressure.to_dict() if pressure is not None else None,
            timestamp=time.time(),
        )
        try:
            code = extract_code(response)
        except NoCodeError:
            attempt.note = "no code emitted"
            attempts.append(attempt)
            log.record(attempt)
            opt_feedback = Diagnostics(
                "compile", "the previous reply contained no code block"
            )
            continue
        attempt.code = code

        trace.append(FsmState.OPT_COMPILE)
        compiled = deps.executor.compile_candidate(
            code, case, "functional", tag=f"opt{opt_no}"
        )
        attempt.compile_ok = compiled.success
        attempt.compile_diagnostics = compiled.diagnostics
        if not compiled.success:
            attempts.append(attempt)
            log.record(attempt)
            opt_feedback = Diagnostics("compile", compiled.diagnostics)
            continue

        trace.append(FsmState.OPT_TEST)
        tested = deps.executor.run_functional_tests(compiled.artifact_path)
        attempt.tests_passed = tested.all_passed
        attempt.test_report = tested.describe()
        if not tested.all_passed:
            attempts.append(attempt)
            log.record(attempt)
            opt_feedback = Diagnostics("test", tested.describe())
            continue
        attempts.append(attempt)
        log.record(attempt)

        variant = Variant(
            variant_id=len(variants),
            code=code,
            pressure=_safe_pressure(code, case.function_signature, deps.pressure_mode),
        )
        trace.append(FsmState.OPT_PERF)
        if native_artifact is not None:
            perf_compiled = deps.executor.compile_candidate(
                code, case, "perf", tag=f"opt{opt_no}-perf"
            )
            if perf_compiled.success:
                try:
                    variant.perf = deps.executor.run_perf(
                        perf_compiled.artifact_path, native_artifact, deps.perf_runs
                    )
                except PerfError as exc:
                    notes.append(f"variant {variant.variant_id}: no perf data ({exc})")
            else:
                notes.append(f"variant {variant.variant_id}: perf harness failed to compile")
        variants.append(variant)
        opt_feedback = None

    # --- selection -----------------------------------------------------------
    trace.append(FsmState.SELECT_BEST)
    best = select_best(variants)
    trace.append(FsmState.DONE)
    return TaskOutcome(
        case_id=case.case_id,
        passed=True,
        attempts_used=attempts_used,
        best_variant=best,
        all_attempts=attempts,
        variants=variants,
        final_speedup=best.perf.speedup if best.perf else None,
        fsm_trace=trace,
        notes=notes,
    )
