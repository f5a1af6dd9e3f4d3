import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vecport.cli import RunConfig, load_config_file, main, resolve_config
from vecport.corpus import bundled_corpus_dir

GOOD_RVV = (bundled_corpus_dir() / "vec_add" / "native.c").read_text()
MULH_RVV = (bundled_corpus_dir() / "mulh_s16" / "native.c").read_text()


def fenced(code: str) -> str:
    return f"```c\n{code}```"


def write_replay(tmp_path, mapping) -> Path:
    path = tmp_path / "replay.json"
    path.write_text(json.dumps(mapping))
    return path


def run_translate(tmp_path, out_name="out", extra=(), cases=("vec_add",)):
    replay = write_replay(
        tmp_path,
        {
            "vec_add": [fenced(GOOD_RVV), fenced(GOOD_RVV)],
            "mulh_s16": [fenced(MULH_RVV), fenced(MULH_RVV)],
        },
    )
    out = tmp_path / out_name
    argv = ["translate", "--replay", str(replay), "--no-exec", "--optimize-max", "1",
            "--out", str(out)]
    for c in cases:
        argv += ["--case", c]
    argv += list(extra)
    return main(argv), out


def _strip_volatile(outcome: dict) -> dict:
    for attempt in outcome.get("attempts", []):
        attempt["timestamp"] = None
    return outcome


# --- translate ------------------------------------------------------------

def test_translate_bundled_case_is_deterministic(tmp_path, capsys):
    rc1, out1 = run_translate(tmp_path, "out1")
    rc2, out2 = run_translate(tmp_path, "out2")
    assert rc1 == rc2 == 0
    assert (out1 / "report.txt").read_bytes() == (out2 / "report.txt").read_bytes()
    assert (out1 / "report.json").read_bytes() == (out2 / "report.json").read_bytes()
    o1 = _strip_volatile(json.loads((out1 / "outcomes" / "vec_add.json").read_text()))
    o2 = _strip_volatile(json.loads((out2 / "outcomes" / "vec_add.json").read_text()))
    assert o1 == o2


def test_translate_report_golden(tmp_path, capsys):
    rc, out = run_translate(tmp_path, cases=("vec_add", "mulh_s16"))
    assert rc == 0
    expected = """\
case                     passed  attempts  speedup
--------------------------------------------------
mulh_s16                 yes            1     1.00
vec_add                  yes            1     1.00
--------------------------------------------------
cases: 2   passed: 2   pass rate: 100.0%
avg iterations (passing): 1.0   efficiency score: 2.0 (budget 10, failed cases included)
speedup buckets: <0.5: 0  0.5-0.9: 0  0.9-1.1: 2  1.1-2.0: 0  >2.0: 0
"""
    assert (out / "report.txt").read_text() == expected


def test_translate_writes_attempt_logs(tmp_path):
    rc, out = run_translate(tmp_path)
    assert rc == 0
    log = out / "work" / "vec_add" / "log" / "attempts.ndjson"
    assert log.is_file()
    records = [json.loads(line) for line in log.read_text().splitlines()]
    assert records[0]["phase"] == "translation"


def test_translate_unknown_case_lists_valid_ids(tmp_path, capsys):
    rc, _ = run_translate(tmp_path, cases=("no_such_case",))
    assert rc == 1
    err = capsys.readouterr().err
    assert "no_such_case" in err
    assert "vec_add" in err  # the valid ids are listed


def test_translate_requires_exactly_one_client(tmp_path, capsys):
    replay = write_replay(tmp_path, {"vec_add": []})
    rc = main([
        "translate", "--replay", str(replay), "--endpoint", "http://x", "--no-exec",
    ])
    assert rc == 1
    assert "not both" in capsys.readouterr().err

    rc = main(["translate", "--no-exec"])
    assert rc == 1


def test_translate_parallelism_matches_serial(tmp_path):
    rc1, out1 = run_translate(
        tmp_path, "serial", cases=("vec_add", "mulh_s16"), extra=("--parallelism", "1")
    )
    rc2, out2 = run_translate(
        tmp_path, "parallel", cases=("vec_add", "mulh_s16"), extra=("--parallelism", "2")
    )
    assert rc1 == rc2 == 0
    for case_id in ("vec_add", "mulh_s16"):
        a = _strip_volatile(json.loads((out1 / "outcomes" / f"{case_id}.json").read_text()))
        b = _strip_volatile(json.loads((out2 / "outcomes" / f"{case_id}.json").read_text()))
        assert a == b
    assert (out1 / "report.json").read_bytes() == (out2 / "report.json").read_bytes()


def test_translate_failed_case_is_a_result_not_an_error(tmp_path, capsys):
    replay = write_replay(tmp_path, {"vec_add": ["no code here at all"] * 3})
    out = tmp_path / "out"
    rc = main([
        "translate", "--replay", str(replay), "--no-exec", "--case", "vec_add",
        "--translate-max", "3", "--optimize-max", "1", "--out", str(out),
    ])
    assert rc == 0
    outcome = json.loads((out / "outcomes" / "vec_add.json").read_text())
    assert outcome["passed"] is False
    assert outcome["attempts_used"] == 3


def test_translate_zero_budget_is_a_usage_error(tmp_path, capsys):
    replay = write_replay(tmp_path, {"vec_add": []})
    rc = main([
        "translate", "--replay", str(replay), "--no-exec",
        "--optimize-max", "0",
    ])
    assert rc == 1
    assert "at least 1" in capsys.readouterr().err


def test_translate_scratch_cleaned_but_logs_kept(tmp_path):
    rc, out = run_translate(tmp_path)
    assert rc == 0
    case_work = out / "work" / "vec_add"
    assert (case_work / "log" / "attempts.ndjson").is_file()
    scratch = [d for d in case_work.iterdir() if d.is_dir() and d.name != "log"]
    assert scratch == []


def test_translate_keep_scratch_retains_attempt_dirs(tmp_path):
    rc, out = run_translate(tmp_path, extra=("--keep-scratch",))
    assert rc == 0
    case_work = out / "work" / "vec_add"
    scratch = [d for d in case_work.iterdir() if d.is_dir() and d.name != "log"]
    assert scratch  # per-attempt artifacts survive for post-mortem


def test_bad_flag_value_is_a_usage_error():
    assert main(["translate", "--parallelism", "goose"]) == 1
    assert main(["no-such-command"]) == 1
    assert main(["--help"]) == 0


# --- analyze ----------------------------------------------------------------

def test_analyze_vec_add_native_golden(capsys):
    rc = main(["analyze", str(bundled_corpus_dir() / "vec_add" / "native.c"), "vec_add_s32"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "peak vector register pressure: 6 of 32" in out
    assert "statement 4 (line 10)" in out
    assert "__riscv_vadd_vv_i32m2" in out
    assert "fits in the register file" in out


def test_analyze_scalar_file_reports_zero(tmp_path, capsys):
    f = tmp_path / "scalar.c"
    f.write_text("int sum(const int *p, int n) { int s = 0; while (n > 0) { s += p[n - 1]; n -= 1; } return s; }\n")
    rc = main(["analyze", str(f), "sum"])
    assert rc == 0
    assert "pressure: 0 of 32" in capsys.readouterr().out


def test_analyze_goto_file_names_the_line(tmp_path, capsys):
    f = tmp_path / "bad.c"
    f.write_text("void f(void) {\n    goto end;\nend:\n    return;\n}\n")
    rc = main(["analyze", str(f), "f"])
    assert rc == 1
    err = capsys.readouterr().err
    assert "goto" in err
    assert "line 2" in err


def test_analyze_dump_ir_flag(capsys):
    rc = main([
        "analyze", str(bundled_corpus_dir() / "vec_add" / "native.c"),
        "vec_add_s32", "--dump-ir",
    ])
    assert rc == 0
    out = capsys.readouterr().out
    assert "B0 (entry)" in out
    assert "use: va, vb" in out


def test_analyze_physical_mode(capsys):
    rc = main([
        "analyze", str(bundled_corpus_dir() / "vec_add" / "native.c"),
        "vec_add_s32", "--mode", "physical",
    ])
    assert rc == 0
    assert "6 of 32" in capsys.readouterr().out  # m2 values: same either way


# --- report -------------------------------------------------------------------

def test_report_recomputes_identical_numbers(tmp_path, capsys):
    rc, out = run_translate(tmp_path, cases=("vec_add", "mulh_s16"))
    capsys.readouterr()
    rc = main(["report", str(out)])
    assert rc == 0
    printed = capsys.readouterr().out
    assert printed.strip() == (out / "report.txt").read_text().strip()


def test_report_empty_dir_is_usage_error(tmp_path, capsys):
    rc = main(["report", str(tmp_path)])
    assert rc == 1
    assert "no outcomes" in capsys.readouterr().err


def test_report_skips_corrupt_outcomes_with_warning(tmp_path, capsys):
    rc, out = run_translate(tmp_path)
    (out / "outcomes" / "zz_corrupt.json").write_text("{ not json")
    capsys.readouterr()
    rc = main(["report", str(out)])
    assert rc == 0
    captured = capsys.readouterr()
    assert "skipping corrupt outcome" in captured.err
    assert "vec_add" in captured.out


# --- config handling ---------------------------------------------------------

def test_config_file_values_used_and_flags_override(tmp_path):
    cfg_file = tmp_path / "run.conf"
    cfg_file.write_text(
        'temperature = "0.7"\n'
        'translate_max = "5"\n'
        'pressure_mode = "physical"\n'
    )
    values = load_config_file(cfg_file)
    cfg = resolve_config({"temperature": 0.1}, values)
    assert cfg.temperature == 0.1  # flag wins
    assert cfg.translate_max == 5  # file wins over default
    assert cfg.pressure_mode == "physical"
    assert cfg.optimize_max == 10  # default


def test_config_file_rejects_unknown_keys(tmp_path):
    from vecport.errors import UsageError

    cfg_file = tmp_path / "run.conf"
    cfg_file.write_text('tempurature = "0.7"\n')
    with pytest.raises(UsageError):
        load_config_file(cfg_file)


_TRISTATE_FIELDS = [
    ("temperature", 0.5, 0.9),
    ("translate_max", 3, 7),
    ("optimize_max", 2, 8),
    ("pressure_mode", "physical", "literal"),
    ("parallelism", 2, 4),
    ("out", "a", "b"),
    ("include_failed", False, True),
    ("model", "m1", "m2"),
    ("cc", "gcc-a", "gcc-b"),
    ("flags", "-O2", "-O3"),
    ("runner", "r1", "r2"),
    ("corpus", "c1", "c2"),
    ("replay", "f1", "f2"),
    ("endpoint", "e1", "e2"),
]


@settings(max_examples=100, deadline=None)
@given(
    st.integers(0, len(_TRISTATE_FIELDS) - 1),
    st.booleans(),
    st.booleans(),
)
def test_config_precedence_property(field_index, set_flag, set_file):
    name, flag_val, file_val = _TRISTATE_FIELDS[field_index]
    flag_values = {name: flag_val} if set_flag else {}
    file_values = {name: file_val} if set_file else {}
    cfg = resolve_config(flag_values, file_values)
    got = getattr(cfg, name)
    if set_flag:
        assert got == flag_val
    elif set_file:
        assert got == file_val
    else:
        assert got == getattr(RunConfig(), name)
