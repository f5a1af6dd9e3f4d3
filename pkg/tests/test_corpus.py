import pytest

from vecport.corpus import (
    CaseManifest,
    bundled_corpus_dir,
    load_corpus,
    validate_case,
)
from vecport.errors import CorpusError, NoCasesError

MINI_NEON = """\
#include <arm_neon.h>
#include <stddef.h>
#include <stdint.h>

void add1(const int32_t *a, int32_t *b, size_t n) {
    for (size_t i = 0; i + 4 <= n; i += 4) {
        vst1q_s32(b + i, vaddq_s32(vld1q_s32(a + i), vdupq_n_s32(1)));
    }
}
"""

SCALAR_SOURCE = """\
#include <stddef.h>
#include <stdint.h>

void add1(const int32_t *a, int32_t *b, size_t n) {
    for (size_t i = 0; i < n; i++) b[i] = a[i] + 1;
}
"""

SIGNATURE = "void add1(const int32_t *a, int32_t *b, size_t n)"


def write_case(root, case_id, source=MINI_NEON, signature=SIGNATURE, skip=()):
    d = root / case_id
    d.mkdir()
    files = {
        "neon.c": source,
        "test.c": "int main(void) { return 0; }\n",
        "bench.c": "int main(void) { return 0; }\n",
        "native.c": "void add1(void) {}\n",
    }
    for name, text in files.items():
        if name not in skip:
            (d / name).write_text(text)
    (d / "manifest.txt").write_text(
        f'id = "{case_id}"\n'
        'arch = "neon"\n'
        'source = "neon.c"\n'
        'test = "test.c"\n'
        'bench = "bench.c"\n'
        'native = "native.c"\n'
        f'signature = "{signature}"\n'
    )
    return d


def test_load_three_cases_sorted(tmp_path):
    for case_id in ("zeta", "alpha", "mid"):
        write_case(tmp_path, case_id)
    listing = load_corpus(tmp_path)
    assert [m.case_id for m in listing] == ["alpha", "mid", "zeta"]
    assert listing.problems == []


def test_load_is_deterministic(tmp_path):
    for case_id in ("b", "a", "c"):
        write_case(tmp_path, case_id)
    first = [m.case_id for m in load_corpus(tmp_path)]
    second = [m.case_id for m in load_corpus(tmp_path)]
    assert first == second


def test_missing_source_recorded_as_problem(tmp_path):
    write_case(tmp_path, "good")
    write_case(tmp_path, "broken", skip=("neon.c",))
    listing = load_corpus(tmp_path)
    assert [m.case_id for m in listing] == ["good"]
    assert len(listing.problems) == 1
    assert "broken" in listing.problems[0][0]


def test_empty_corpus_is_an_error(tmp_path):
    with pytest.raises(NoCasesError):
        load_corpus(tmp_path)


def test_missing_directory_is_an_error(tmp_path):
    with pytest.raises(CorpusError):
        load_corpus(tmp_path / "nope")


def test_duplicate_case_ids_flagged(tmp_path):
    write_case(tmp_path, "one")
    d = write_case(tmp_path, "two")
    text = (d / "manifest.txt").read_text().replace('id = "two"', 'id = "one"')
    (d / "manifest.txt").write_text(text)
    listing = load_corpus(tmp_path)
    assert len(listing) == 1
    assert "duplicate" in listing.problems[0][1]


def test_malformed_manifest_recorded(tmp_path):
    d = write_case(tmp_path, "bad")
    (d / "manifest.txt").write_text("id: bad\n")
    listing = load_corpus(tmp_path)
    assert listing.manifests == []
    assert len(listing.problems) == 1


def test_bad_signature_rejected(tmp_path):
    write_case(tmp_path, "sig", signature="definitely not C")
    listing = load_corpus(tmp_path)
    assert listing.manifests == []
    assert "signature" in listing.problems[0][1]


def test_validate_reads_all_texts(tmp_path):
    write_case(tmp_path, "ok")
    (manifest,) = load_corpus(tmp_path).manifests
    case = validate_case(manifest)
    assert "vaddq_s32" in case.source_text
    assert case.warnings == ()
    assert case.test_text.startswith("int main")


def test_validate_warns_on_scalar_looking_source(tmp_path):
    write_case(tmp_path, "scalar", source=SCALAR_SOURCE)
    (manifest,) = load_corpus(tmp_path).manifests
    case = validate_case(manifest)
    assert len(case.warnings) == 1
    assert "vectorized" in case.warnings[0]


def test_validate_requires_signature_in_source(tmp_path):
    write_case(tmp_path, "nosig")
    d = tmp_path / "nosig"
    (d / "manifest.txt").write_text(
        (d / "manifest.txt")
        .read_text()
        .replace(SIGNATURE, "void other_name(const int32_t *a, int32_t *b, size_t n)")
    )
    (manifest,) = load_corpus(tmp_path).manifests
    with pytest.raises(CorpusError, match="other_name"):
        validate_case(manifest)


def test_validate_never_mutates_files(tmp_path):
    d = write_case(tmp_path, "ro")
    before = {p.name: p.read_bytes() for p in d.iterdir()}
    (manifest,) = load_corpus(tmp_path).manifests
    validate_case(manifest)
    after = {p.name: p.read_bytes() for p in d.iterdir()}
    assert before == after


def test_bundled_corpus_loads_clean():
    listing = load_corpus(bundled_corpus_dir())
    assert len(listing) >= 6
    assert listing.problems == []
    for manifest in listing:
        case = validate_case(manifest)
        assert case.warnings == ()
