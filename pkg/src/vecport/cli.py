"""Command-line entry point.

    vecport translate --corpus DIR (--replay FILE | --endpoint URL) [options]
    vecport analyze FILE FUNCTION [--mode literal|physical] [--dump-ir]
    vecport report OUTPUT_DIR

Exit codes: 0 success, 1 usage or configuration problem, 2 internal error.
Translation failures are results, not process errors: a run that ends with
failed cases still exits 0 and reports them.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path

from .corpus import bundled_corpus_dir, load_corpus, validate_case
from .errors import ConfigurationError, ParseError, UsageError, VecportError
from .executors import CommandExecutor, MockExecutor, ToolchainConfig
from .liveness import analyze_source
from .llm_client import RemoteClient, ReplayClient
from .metrics import OutcomeSummary, emit_report
from .orchestrator import Budgets, TaskDeps, run_task
from .parser import dump_ir, parse_function

_CONFIG_KV_RE = re.compile(r'^\s*(\w+)\s*=\s*"(.*)"\s*$')


@dataclass
class RunConfig:
    corpus: str = ""
    cases: tuple[str, ...] = ()
    model: str = "default"
    endpoint: str = ""
    replay: str = ""
    temperature: float = 0.2
    translate_max: int = 10
    optimize_max: int = 10
    cc: str = ""
    flags: str = ""
    runner: str = ""
    vlens: tuple[int, ...] = (128, 256)
    pressure_mode: str = "literal"
    parallelism: int = 1
    out: str = "vecport-out"
    include_failed: bool = True
    no_exec: bool = False
    keep_scratch: bool = False


_DEFAULTS = RunConfig()

_FIELD_PARSERS = {
    "cases": lambda s: tuple(x.strip() for x in s.split(",") if x.strip()),
    "temperature": float,
    "translate_max": int,
    "optimize_max": int,
    "vlens": lambda s: tuple(int(x) for x in s.split(",") if x.strip()),
    "parallelism": int,
    "include_failed": lambda s: s.lower() in ("1", "true", "yes"),
    "no_exec": lambda s: s.lower() in ("1", "true", "yes"),
    "keep_scratch": lambda s: s.lower() in ("1", "true", "yes"),
}


def load_config_file(path: Path | str) -> dict:
    """Flat key = "value" file; keys mirror the translate flags."""
    values: dict = {}
    known = {f.name for f in fields(RunConfig)}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _CONFIG_KV_RE.match(line)
        if m is None:
            raise UsageError(f"{path}: line {lineno}: expected key = \"value\"")
        key, value = m.groups()
        if key not in known:
            raise UsageError(f"{path}: unknown config key {key!r}")
        parser = _FIELD_PARSERS.get(key, str)
        try:
            values[key] = parser(value)
        except ValueError as exc:
            raise UsageError(f"{path}: bad value for {key}: {exc}") from exc
    return values


def resolve_config(flag_values: dict, file_values: dict) -> RunConfig:
    """Flag beats config file beats built-in default, field by field."""
    out = {}
    for f in fields(RunConfig):
        flag = flag_values.get(f.name)
        if flag is not None:
            out[f.name] = flag
        elif f.name in file_values:
            out[f.name] = file_values[f.name]
        else:
            out[f.name] = getattr(_DEFAULTS, f.name)
    return RunConfig(**out)


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vecport", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("translate", help="run the translation pipeline over a corpus")
    t.add_argument("--corpus", help="corpus directory (default: bundled corpus)")
    t.add_argument("--case", action="append", dest="cases", metavar="ID",
                   help="restrict to this case id (repeatable)")
    t.add_argument("--config", help="flat key-value config file; flags override it")
    t.add_argument("--model", help="model name sent to the endpoint")
    t.add_argument("--endpoint", help="chat-completion HTTP endpoint URL")
    t.add_argument("--replay", help="replay script (JSON) standing in for the LLM")
    t.add_argument("--temperature", type=float)
    t.add_argument("--translate-max", type=int, dest="translate_max")
    t.add_argument("--optimize-max", type=int, dest="optimize_max")
    t.add_argument("--cc", help="cross compiler (default riscv64-linux-gnu-gcc)")
    t.add_argument("--flags", help="compiler flags (default '-march=rv64gcv -O3')")
    t.add_argument("--runner", help="emulator/runner binary (default qemu-riscv64)")
    t.add_argument("--vlens", type=lambda s: tuple(int(x) for x in s.split(",")),
                   help="comma-separated VLENs for functional tests (default 128,256)")
    t.add_argument("--pressure-mode", dest="pressure_mode",
                   choices=("literal", "physical"))
    t.add_argument("--parallelism", type=int)
    t.add_argument("--out", help="output directory (default vecport-out)")
    t.add_argument("--include-failed", dest="include_failed", action="store_const",
                   const=True, help="failed cases score minimally (default)")
    t.add_argument("--exclude-failed", dest="include_failed", action="store_const",
                   const=False, help="failed cases do not enter the efficiency score")
    t.add_argument("--no-exec", dest="no_exec", action="store_const", const=True,
                   help="mock executors: no compiler or emulator required")
    t.add_argument("--keep-scratch", dest="keep_scratch", action="store_const",
                   const=True, help="retain per-attempt scratch directories")

    a = sub.add_parser("analyze", help="register pressure report for an RVV C file")
    a.add_argument("file", help="RVV intrinsic C source file")
    a.add_argument("function", help="function name (or full signature)")
    a.add_argument("--mode", choices=("literal", "physical"), default="literal")
    a.add_argument("--dump-ir", action="store_true", help="also print the IR and CFG")

    r = sub.add_parser("report", help="recompute metrics from persisted outcomes")
    r.add_argument("out_dir", help="output directory of a previous translate run")
    r.add_argument("--up-limit", type=int, default=10)
    r.add_argument("--exclude-failed", dest="include_failed", action="store_false")
    return p


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    file_values = load_config_file(args.config) if args.config else {}
    flag_values = {
        f.name: getattr(args, f.name, None) for f in fields(RunConfig)
    }
    if flag_values.get("cases") is not None:
        flag_values["cases"] = tuple(flag_values["cases"])
    cfg = resolve_config(flag_values, file_values)
    if cfg.endpoint and cfg.replay:
        raise UsageError("choose one of --endpoint or --replay, not both")
    if not cfg.endpoint and not cfg.replay:
        raise UsageError("one of --endpoint or --replay is required")
    if cfg.translate_max < 1 or cfg.optimize_max < 1:
        raise UsageError("iteration budgets must be at least 1")
    if cfg.parallelism < 1:
        raise UsageError("parallelism must be at least 1")
    return cfg


def cmd_translate(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    corpus_dir = Path(cfg.corpus) if cfg.corpus else bundled_corpus_dir()
    listing = load_corpus(corpus_dir)
    for case_dir, problem in listing.problems:
        print(f"warning: skipping {case_dir}: {problem}", file=sys.stderr)
    manifests = listing.manifests
    if cfg.cases:
        known = {m.case_id for m in manifests}
        unknown = [c for c in cfg.cases if c not in known]
        if unknown:
            raise UsageError(
                f"unknown case id(s): {', '.join(unknown)}; "
                f"valid ids: {', '.join(sorted(known))}"
            )
        manifests = [m for m in manifests if m.case_id in cfg.cases]
    if not manifests:
        raise UsageError("no cases selected")

    if cfg.replay:
        client = ReplayClient.from_file(cfg.replay)
        parallelism = cfg.parallelism
        if parallelism > 1 and not client.per_case and len(manifests) > 1:
            print(
                "warning: list-form replay script is one shared sequence; "
                "forcing parallelism 1 for determinism",
                file=sys.stderr,
            )
            parallelism = 1
    else:
        client = RemoteClient(endpoint=cfg.endpoint, model=cfg.model,
                              timeout_s=120.0)
        parallelism = cfg.parallelism

    out_dir = Path(cfg.out)
    work_dir = out_dir / "work"
    tool_kwargs = {}
    if cfg.cc:
        tool_kwargs["cc"] = cfg.cc
    if cfg.flags:
        tool_kwargs["flags"] = cfg.flags
    if cfg.runner:
        tool_kwargs["runner"] = cfg.runner
    if cfg.no_exec:
        executor = MockExecutor(vlens=cfg.vlens, work_dir=work_dir)
    else:
        executor = CommandExecutor(
            ToolchainConfig(vlens=cfg.vlens, **tool_kwargs),
            work_dir=work_dir,
            keep_scratch=cfg.keep_scratch,
        )
        executor.probe()

    cases = []
    for manifest in manifests:
        case = validate_case(manifest)
        for w in case.warnings:
            print(f"warning: {w}", file=sys.stderr)
        cases.append(case)

    budgets = Budgets(cfg.translate_max, cfg.optimize_max)
    deps = TaskDeps(
        client=client,
        executor=executor,
        temperature=cfg.temperature,
        pressure_mode=cfg.pressure_mode,
        log_dir=work_dir,
    )

    outcomes = {}
    try:
        if parallelism == 1:
            for case in cases:
                outcomes[case.case_id] = run_task(case, budgets, deps)
        else:
            pool = ThreadPoolExecutor(max_workers=parallelism)
            try:
                futures = {
                    pool.submit(run_task, case, budgets, deps): case.case_id
                    for case in cases
                }
                for fut in as_completed(futures):
                    outcomes[futures[fut]] = fut.result()
            finally:
                # In-flight tasks finish (their external processes have
                # timeouts); queued ones are dropped on interrupt.
                pool.shutdown(wait=True, cancel_futures=True)
    except KeyboardInterrupt:
        print("interrupted; flushing completed outcomes", file=sys.stderr)
        _write_outputs(out_dir, outcomes, cfg)
        return 130

    _write_outputs(out_dir, outcomes, cfg)
    if not cfg.keep_scratch:
        executor.cleanup()
    summaries = [outcomes[c].summary() for c in sorted(outcomes)]
    print(emit_report(summaries, "text_table", cfg.translate_max, cfg.include_failed))
    return 0


def _write_outputs(out_dir: Path, outcomes: dict, cfg: RunConfig) -> None:
    if not outcomes:
        return
    outcome_dir = out_dir / "outcomes"
    outcome_dir.mkdir(parents=True, exist_ok=True)
    for case_id in sorted(outcomes):
        path = outcome_dir / f"{case_id}.json"
        path.write_text(json.dumps(outcomes[case_id].to_dict(), indent=2, sort_keys=True) + "\n")
    summaries = [outcomes[c].summary() for c in sorted(outcomes)]
    (out_dir / "report.txt").write_text(
        emit_report(summaries, "text_table", cfg.translate_max, cfg.include_failed)
    )
    (out_dir / "report.json").write_text(
        emit_report(summaries, "machine", cfg.translate_max, cfg.include_failed)
    )


def cmd_analyze(args: argparse.Namespace) -> int:
    source = Path(args.file).read_text()
    report = analyze_source(source, args.function, args.mode)
    if args.dump_ir:
        ir = parse_function(source, args.function)
        print(dump_ir(ir))
    print(report.to_text())
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    outcome_dir = Path(args.out_dir) / "outcomes"
    if not outcome_dir.is_dir():
        raise UsageError(f"no outcomes directory under {args.out_dir}")
    summaries = []
    for path in sorted(outcome_dir.glob("*.json")):
        try:
            data = json.loads(path.read_text())
            summaries.append(
                OutcomeSummary(
                    case_id=data["case_id"],
                    passed=data["passed"],
                    attempts_used=data["attempts_used"],
                    final_speedup=Fraction(data["final_speedup"])
                    if data.get("final_speedup")
                    else None,
                )
            )
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            print(f"warning: skipping corrupt outcome {path.name}: {exc}", file=sys.stderr)
    if not summaries:
        raise UsageError(f"no readable outcomes under {args.out_dir}")
    up_limit = getattr(args, "up_limit", 10)
    include_failed = getattr(args, "include_failed", True)
    print(emit_report(summaries, "text_table", up_limit, include_failed))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems; 1 is this tool's usage code
        return 1 if exc.code else 0
    try:
        if args.command == "translate":
            return cmd_translate(args)
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "report":
            return cmd_report(args)
        raise UsageError(f"unknown command {args.command!r}")
    except (UsageError, ConfigurationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except VecportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
