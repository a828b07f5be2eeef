import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from conftest import TESTS
from semdb.cli import RunConfig, main, run

GOLDEN = TESTS / "golden"
NINE_SLOTS = "vit(segment_description(x,yes,'a'),[p(l1,i1)],l1,[],[],[],[],[],[]).\n"


def call(cfg: RunConfig) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    status = run(cfg, out, err)
    return status, out.getvalue(), err.getvalue()


@pytest.fixture
def sample_file(tmp_path, sample_text) -> Path:
    path = tmp_path / "sample.vit"
    path.write_text(sample_text)
    return path


@pytest.mark.parametrize("command, golden", [("compile", "semlex.out"), ("table", "table.out")])
def test_emit_golden(command, golden):
    status, out, err = call(RunConfig(command))
    assert (status, err) == (0, "")
    assert out == (GOLDEN / golden).read_text()


def test_emit_to_file(tmp_path):
    target = tmp_path / "semlex.out"
    assert call(RunConfig("compile", output_path=target)) == (0, "", "")
    assert target.read_text() == (GOLDEN / "semlex.out").read_text()


def test_unmatched_base(tmp_path, demo_source):
    lex = tmp_path / "lex.plex"
    lex.write_text(demo_source + "\nbase gehen :<< verb_c >>: lemma: gehen .\n")
    status, out, err = call(RunConfig("compile", lexicon_path=lex))
    assert status == 0 and "gehen" in err and out.count("sem_lex") == 2
    assert call(RunConfig("compile", lexicon_path=lex, strict=True))[0] == 1


def test_bad_lexicon(tmp_path):
    lex = tmp_path / "bad.plex"
    lex.write_text("class a :< top >: f: X .")
    status, out, err = call(RunConfig("compile", lexicon_path=lex))
    assert status == 2 and out == ""
    assert err.startswith("semdb: error: ") and f"{lex}:1:" in err


def test_missing_file(tmp_path):
    status, _, err = call(RunConfig("check", vit_path=tmp_path / "nope.vit"))
    assert status == 2 and "cannot read" in err


def test_check_clean(sample_file):
    assert call(RunConfig("check", vit_path=sample_file)) == (0, "", "")
    assert call(RunConfig("check", vit_path=sample_file, strict=True)) == (0, "", "")


def test_check_violation(tmp_path, sample_text):
    path = tmp_path / "bad.vit"
    path.write_text(sample_text.replace("num(i3,pl)", "num(i3,dual)"))
    status, out, _ = call(RunConfig("check", vit_path=path))
    assert status == 0 and out.startswith("V9_SyntaxVocabulary\tsyntax:num(i3,dual)\t")
    assert call(RunConfig("check", vit_path=path, strict=True))[0] == 1
    status, out, _ = call(RunConfig("check", vit_path=path, format="json"))
    (record,) = json.loads(out)
    assert record["vit"] == "ttestr4u1" and record["code"] == "V9_SyntaxVocabulary"


def test_check_nine_slots(tmp_path):
    path = tmp_path / "nine.vit"
    path.write_text(NINE_SLOTS)
    status, out, err = call(RunConfig("check", vit_path=path))
    assert status == 2 and out == "" and "9" in err


def test_batch_continues(tmp_path, sample_text):
    path = tmp_path / "batch.vit"
    path.write_text(NINE_SLOTS + sample_text.replace("num(i3,pl)", "num(i3,dual)"))
    status, out, err = call(RunConfig("check", vit_path=path))
    assert status == 2 and f"{path}:1:" in err
    assert out.startswith("V9_SyntaxVocabulary")


def test_readings(sample_file):
    status, out, _ = call(RunConfig("readings", vit_path=sample_file))
    assert status == 0
    assert out == "% ttestr4u1: 1 reading\nh1->l3 h2->l2\n% default: h1->l3 h2->l2 admissible\n"
    status, out, _ = call(RunConfig("readings", vit_path=sample_file, trees=True))
    assert "  h1 -> l3: ein_card_qua(l3,i2,l1,h2,1)" in out


def test_readings_two_quantifiers():
    status, out, _ = call(RunConfig("readings", vit_path=TESTS / "data" / "two_quantifiers.vit"))
    assert status == 0
    assert out.splitlines()[:3] == ["% synth2q: 2 readings", "h0->l1 h1->l2 h2->l3", "h0->l2 h1->l3 h2->l1"]


def test_readings_bad_default(tmp_path, sample_text):
    path = tmp_path / "swapped.vit"
    path.write_text(sample_text.replace("ccom_plug(h2,l2)", "ccom_plug(h2,l3)").replace("ccom_plug(h1,l3)", "ccom_plug(h1,l2)"))
    status, out, _ = call(RunConfig("readings", vit_path=path))
    assert status == 0 and out.endswith("% default: h1->l2 h2->l3 not admissible\n")
    assert call(RunConfig("readings", vit_path=path, strict=True))[0] == 1
    path.write_text(sample_text.replace("ccom_plug(h2,l2),", ""))
    status, out, _ = call(RunConfig("readings", vit_path=path))
    assert "% default: incomplete" in out


def test_output_is_deterministic(sample_file):
    for cfg in (RunConfig("compile"), RunConfig("table"), RunConfig("readings", vit_path=sample_file, trees=True)):
        assert call(cfg) == call(cfg)


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["check"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_entry_point(sample_file):
    proc = subprocess.run([sys.executable, "-m", "semdb", "check", "--vits", str(sample_file), "--strict"],
                          capture_output=True, text=True)
    assert (proc.returncode, proc.stdout, proc.stderr) == (0, "", "")
