"""External toolchain drivers: cross-compile, emulated functional tests across
vector lengths, and benchmark runs.

Everything shells out through command templates so a different compiler,
emulator, or a real board behind an ssh wrapper slots in without code
changes. Candidates never touch the case directory; each attempt gets its own
scratch directory under ``work/<case>/<tag>/``, kept only when requested.

Functional pass/fail is the exit-code contract (0 = pass); benchmark cost is
the final stdout line, a bare integer nanosecond count. Perf always runs both
binaries on the same runner at the largest configured VLEN, so speedups are
comparative even under emulation, never absolute hardware claims.
"""

from __future__ import annotations

import re
import shlex
import shutil
import statistics
import subprocess
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .corpus import ValidatedCase
from .errors import ConfigurationError, PerfError

DEFAULT_CC = "riscv64-linux-gnu-gcc"
DEFAULT_FLAGS = "-march=rv64gcv -O3"
DEFAULT_RUNNER = "qemu-riscv64"
DEFAULT_COMPILE_TEMPLATE = "{cc} {flags} {inputs} -o {output}"
DEFAULT_RUNNER_TEMPLATE = (
    "{runner} -cpu rv64,v=true,vlen={vlen},elen=64,vext_spec=v1.0 {binary}"
)
OUTPUT_TAIL_BYTES = 4096
_COST_RE = re.compile(r"^[0-9]+$")


@dataclass
class ToolchainConfig:
    cc: str = DEFAULT_CC
    flags: str = DEFAULT_FLAGS
    compile_cmd_template: str = DEFAULT_COMPILE_TEMPLATE
    runner: str = DEFAULT_RUNNER
    runner_cmd_template: str = DEFAULT_RUNNER_TEMPLATE
    vlens: tuple[int, ...] = (128, 256)
    compile_timeout_s: int = 120
    run_timeout_s: int = 60

    def __post_init__(self):
        if not self.vlens:
            raise ConfigurationError("at least one VLEN must be configured")
        for v in self.vlens:
            if v < 32 or v > 65536 or v & (v - 1):
                raise ConfigurationError(
                    f"VLEN {v} invalid: must be a power of two in [32, 65536]"
                )


@dataclass
class CompileResult:
    success: bool
    diagnostics: str
    artifact_path: Path | None = None


@dataclass
class VlenRun:
    passed: bool
    exit_code: int | None
    output_tail: str


@dataclass
class TestResult:
    __test__ = False  # domain type, not a pytest suite

    all_passed: bool
    per_vlen: dict[int, VlenRun]

    def describe(self) -> str:
        """Report suitable for a repair prompt; names every VLEN tried."""
        lines = ["functional test results:"]
        for vlen in sorted(self.per_vlen):
            run = self.per_vlen[vlen]
            if run.passed:
                lines.append(f"  VLEN={vlen}: PASS")
            else:
                code = "timeout" if run.exit_code is None else f"exit code {run.exit_code}"
                lines.append(f"  VLEN={vlen}: FAIL ({code})")
        for vlen in sorted(self.per_vlen):
            run = self.per_vlen[vlen]
            if not run.passed and run.output_tail.strip():
                lines.append(f"--- output tail (VLEN={vlen}) ---")
                lines.append(run.output_tail.rstrip())
        return "\n".join(lines)


@dataclass
class PerfResult:
    translated_cost_ns: int
    native_cost_ns: int
    speedup: Fraction
    runs: int

    def to_dict(self) -> dict:
        return {
            "translated_cost_ns": self.translated_cost_ns,
            "native_cost_ns": self.native_cost_ns,
            "speedup": str(self.speedup),
            "runs": self.runs,
        }


def _tail(text: str, limit: int = OUTPUT_TAIL_BYTES) -> str:
    return text[-limit:] if len(text) > limit else text


def _harness_path(case: ValidatedCase, which: str) -> Path:
    if which == "functional":
        return case.manifest.functional_test_path
    if which == "perf":
        return case.manifest.perf_test_path
    raise ValueError(f"unknown harness {which!r}")


class CommandExecutor:
    """Runs the real cross-compiler and emulator per the configured templates."""

    def __init__(self, config: ToolchainConfig, work_dir: Path | str,
                 keep_scratch: bool = False):
        self.config = config
        self.work_dir = Path(work_dir)
        self.keep_scratch = keep_scratch
        self._tag_counter = 0

    def probe(self) -> None:
        """Fail fast, and distinctly from a compile failure, on missing tools."""
        for tool, what in ((self.config.cc, "compiler"), (self.config.runner, "runner")):
            exe = shlex.split(tool)[0]
            if shutil.which(exe) is None and not Path(exe).is_file():
                raise ConfigurationError(f"{what} not found: {exe}")

    def _scratch(self, case_id: str, tag: str) -> Path:
        d = self.work_dir / case_id / tag
        d.mkdir(parents=True, exist_ok=True)
        return d

    def compile_candidate(
        self,
        candidate_source: str,
        case: ValidatedCase,
        which_harness: str,
        tag: str | None = None,
    ) -> CompileResult:
        if tag is None:
            self._tag_counter += 1
            tag = f"attempt{self._tag_counter}"
        scratch = self._scratch(case.case_id, tag)
        candidate = scratch / "candidate.c"
        candidate.write_text(candidate_source)
        harness = _harness_path(case, which_harness)
        output = scratch / f"bin_{which_harness}"
        cmd = self.config.compile_cmd_template.format(
            cc=self.config.cc,
            flags=self.config.flags,
            inputs=f"{shlex.quote(str(candidate))} {shlex.quote(str(harness))}",
            output=shlex.quote(str(output)),
        )
        try:
            proc = subprocess.run(
                shlex.split(cmd),
                capture_output=True,
                text=True,
                timeout=self.config.compile_timeout_s,
            )
        except subprocess.TimeoutExpired:
            return CompileResult(False, f"compile timeout after {self.config.compile_timeout_s}s")
        except FileNotFoundError as exc:
            raise ConfigurationError(f"compiler not runnable: {exc}") from exc
        diagnostics = (proc.stderr or "") + (proc.stdout or "")
        (scratch / "compile_stderr.txt").write_text(diagnostics)
        if proc.returncode != 0 or not output.exists():
            return CompileResult(False, _tail(diagnostics, 16384))
        return CompileResult(True, _tail(diagnostics, 16384), artifact_path=output)

    def _run_binary(self, binary: Path, vlen: int) -> tuple[int | None, str]:
        cmd = self.config.runner_cmd_template.format(
            runner=self.config.runner, vlen=vlen, binary=shlex.quote(str(binary))
        )
        try:
            proc = subprocess.run(
                shlex.split(cmd),
                capture_output=True,
                text=True,
                timeout=self.config.run_timeout_s,
            )
        except subprocess.TimeoutExpired:
            return None, f"timeout after {self.config.run_timeout_s}s"
        except FileNotFoundError as exc:
            raise ConfigurationError(f"runner not runnable: {exc}") from exc
        try:  # post-mortem copies next to the binary; last run wins
            (binary.parent / "stdout.txt").write_text(proc.stdout or "")
            (binary.parent / "stderr.txt").write_text(proc.stderr or "")
        except OSError:
            pass
        return proc.returncode, (proc.stdout or "") + (proc.stderr or "")

    def run_functional_tests(self, artifact: Path) -> TestResult:
        per_vlen: dict[int, VlenRun] = {}
        for vlen in self.config.vlens:
            code, output = self._run_binary(artifact, vlen)
            per_vlen[vlen] = VlenRun(
                passed=(code == 0), exit_code=code, output_tail=_tail(output)
            )
        return TestResult(
            all_passed=all(r.passed for r in per_vlen.values()), per_vlen=per_vlen
        )

    def _measure_cost(self, binary: Path, vlen: int, runs: int) -> int:
        costs = []
        for _ in range(runs):
            code, output = self._run_binary(binary, vlen)
            if code != 0:
                raise PerfError(
                    f"benchmark binary exited with {code if code is not None else 'timeout'}"
                )
            lines = [ln.strip() for ln in output.splitlines() if ln.strip()]
            if not lines or not _COST_RE.match(lines[-1]):
                raise PerfError(
                    f"benchmark output has no nanosecond cost line: {_tail(output, 300)!r}"
                )
            cost = int(lines[-1])
            if cost <= 0:
                raise PerfError("benchmark reported a non-positive cost")
            costs.append(cost)
        return int(statistics.median(costs))

    def run_perf(
        self, translated_artifact: Path, native_artifact: Path, runs: int = 5
    ) -> PerfResult:
        """Median-of-N cost for both binaries at the largest configured VLEN."""
        vlen = max(self.config.vlens)
        native = self._measure_cost(native_artifact, vlen, runs)
        translated = self._measure_cost(translated_artifact, vlen, runs)
        return PerfResult(
            translated_cost_ns=translated,
            native_cost_ns=native,
            speedup=Fraction(native, translated),
            runs=runs,
        )

    def cleanup(self) -> None:
        """Drop per-attempt scratch unless retention was requested.

        Attempt logs live under ``work/<case>/log/`` and always survive.
        """
        if self.keep_scratch or not self.work_dir.exists():
            return
        for case_dir in self.work_dir.iterdir():
            if not case_dir.is_dir():
                continue
            for sub in case_dir.iterdir():
                if sub.is_dir() and sub.name != "log":
                    shutil.rmtree(sub, ignore_errors=True)


# ---------------------------------------------------------------------------
# Marker-driven mock, for dry runs and deterministic pipeline tests.

_MOCK_COMPILE_RE = re.compile(r"mock-compile-error:\s*(.*)")
_MOCK_TEST_RE = re.compile(r"mock-test-fail(?::\s*vlen=(\d+))?(?::?\s*(.*))?")
_MOCK_COST_RE = re.compile(r"mock-cost:\s*(\d+)")
_MOCK_TIMEOUT_RE = re.compile(r"mock-run-timeout")


class MockExecutor:
    """Executor stand-in scripted by magic comments inside candidate sources.

        /* mock-compile-error: message */   compile fails with the message
        /* mock-test-fail: vlen=256 msg */  functional test fails at that VLEN
        /* mock-test-fail: msg */           fails at every VLEN
        /* mock-cost: 120000 */             benchmark cost in nanoseconds
        /* mock-run-timeout */              every run times out

    Unmarked sources compile, pass, and cost ``default_cost_ns``. The native
    reference costs its own mock-cost marker if present, else
    ``native_cost_ns``. Everything is pure string inspection, so a replay
    script fully determines the pipeline's behavior.
    """

    def __init__(
        self,
        vlens: tuple[int, ...] = (128, 256),
        native_cost_ns: int = 100_000,
        default_cost_ns: int = 100_000,
        work_dir: Path | str | None = None,
    ):
        self.vlens = tuple(vlens)
        self.native_cost_ns = native_cost_ns
        self.default_cost_ns = default_cost_ns
        self.work_dir = Path(work_dir) if work_dir is not None else Path(
            tempfile.mkdtemp(prefix="vecport-mock-")
        )
        self._tag_counter = 0

    def probe(self) -> None:
        return None

    def compile_candidate(
        self,
        candidate_source: str,
        case: ValidatedCase,
        which_harness: str,
        tag: str | None = None,
    ) -> CompileResult:
        _harness_path(case, which_harness)  # validates the harness choice
        if tag is None:
            self._tag_counter += 1
            tag = f"attempt{self._tag_counter}"
        m = _MOCK_COMPILE_RE.search(candidate_source)
        if m:
            return CompileResult(False, m.group(1).strip() or "mock compile error")
        scratch = self.work_dir / case.case_id / tag
        scratch.mkdir(parents=True, exist_ok=True)
        artifact = scratch / f"candidate_{which_harness}.c"
        artifact.write_text(candidate_source)
        return CompileResult(True, "", artifact_path=artifact)

    def run_functional_tests(self, artifact: Path) -> TestResult:
        source = Path(artifact).read_text()
        per_vlen: dict[int, VlenRun] = {}
        timeout = _MOCK_TIMEOUT_RE.search(source) is not None
        fail_vlen: int | None = None
        fail_msg = ""
        fail_all = False
        m = _MOCK_TEST_RE.search(source)
        if m:
            if m.group(1):
                fail_vlen = int(m.group(1))
            else:
                fail_all = True
            fail_msg = (m.group(2) or "").removesuffix("*/").strip() or "mock test failure"
        for vlen in self.vlens:
            if timeout:
                per_vlen[vlen] = VlenRun(False, None, "timeout")
            elif fail_all or fail_vlen == vlen:
                per_vlen[vlen] = VlenRun(False, 1, fail_msg)
            else:
                per_vlen[vlen] = VlenRun(True, 0, "ok")
        return TestResult(
            all_passed=all(r.passed for r in per_vlen.values()), per_vlen=per_vlen
        )

    def _cost_of(self, artifact: Path, default: int) -> int:
        source = Path(artifact).read_text()
        m = _MOCK_COST_RE.search(source)
        return int(m.group(1)) if m else default

    def run_perf(
        self, translated_artifact: Path, native_artifact: Path, runs: int = 5
    ) -> PerfResult:
        native = self._cost_of(native_artifact, self.native_cost_ns)
        translated = self._cost_of(translated_artifact, self.default_cost_ns)
        if native <= 0 or translated <= 0:
            raise PerfError("mock cost must be positive")
        return PerfResult(
            translated_cost_ns=translated,
            native_cost_ns=native,
            speedup=Fraction(native, translated),
            runs=runs,
        )

    def cleanup(self) -> None:
        if not self.work_dir.exists():
            return
        for case_dir in self.work_dir.iterdir():
            if not case_dir.is_dir():
                continue
            for sub in case_dir.iterdir():
                if sub.is_dir() and sub.name != "log":
                    shutil.rmtree(sub, ignore_errors=True)
