import io
import json
import shutil
from pathlib import Path

import pytest

from snacs.cli import run
from snacs.corpus_io import read_corpus

FIXTURES = Path(__file__).parent / "fixtures"

BAD = (
    "# sent_id = s1\n1\tarriving\n2\tin\n3\tthe\n4\tafternoon\n"
    "\n# annotations\n"
    "s1\t2:2\tin\tp.Time\tp.Locus\tNone\n"
)


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_query_ancestors():
    assert call("query", "StartTime", "--ancestors") == (0, "Time Temporal Circumstance\n")
    assert call("query", "p.StartTime", "--ancestors") == (0, "Time Temporal Circumstance\n")
    assert call("query", "Circumstance", "--ancestors") == (0, "\n")


def test_query_other_modes():
    assert call("query", "Gestalt", "--children") == (0, "Possessor Whole\n")
    assert call("query", "StartTime", "--wu-palmer", "EndTime") == (0, "0.7500\n")
    code, out = call("query", "Locus")
    assert code == 0 and "parent\tCircumstance\n" in out and "depth\t2\n" in out
    assert call("query", "Patient")[0] == 2


def test_migrate():
    assert call("migrate", "Patient") == (0, "MapsTo: Theme\n")
    assert call("migrate", "Age") == (0, "REMOVED\n")
    assert call("migrate", "Locus") == (0, "ALREADY-V2\n")
    assert call("migrate", "Nonsense")[0] == 2


def test_validate(tmp_path):
    bad = tmp_path / "bad.tsv"
    bad.write_text(BAD, encoding="utf-8")
    code, out = call("validate", str(bad))
    assert code == 1
    assert out == f"{bad}:8 E_TEMPORAL_FUNCTION temporal role Time cannot take function Locus\n"
    assert call("validate", "--strict", str(bad)) == (code, out)
    assert call("validate", str(FIXTURES / "sample_corpus.tsv")) == (0, "")


def test_validate_exit_code_tracks_output():
    code, out = call("validate", str(FIXTURES / "corrupted_corpus.tsv"))
    assert code == 1 and len(out.splitlines()) == 11
    assert all(" E_" in line for line in out.splitlines())


def test_validate_format_error(tmp_path):
    p = tmp_path / "broken.tsv"
    p.write_text("# sent_id = s1\n1\tx\n", encoding="utf-8")
    code, out = call("validate", str(p))
    assert code == 2 and out.startswith(f"{p}:3 E_FORMAT ")


def test_usage_errors(capsys):
    assert call("frobnicate")[0] == 2
    assert "usage:" in capsys.readouterr().err
    assert call("query", "Locus", "--bogus")[0] == 2
    assert call("query", "Locus", "--ancestors", "--children")[0] == 2
    assert call()[0] == 2
    assert call("validate", "/no/such/file.tsv")[0] == 2


def test_score_formats():
    gold, pred = str(FIXTURES / "toy_gold.tsv"), str(FIXTURES / "toy_pred.tsv")
    code, out = call("score", "--gold", gold, "--pred", pred, "--format", "machine")
    assert code == 0 and json.loads(out)["ident_f"] == pytest.approx(0.8)
    code, table = call("score", "--gold", gold, "--pred", pred)
    assert code == 0 and table.startswith("n_gold          3\n")
    assert call("score", "--gold", gold, "--pred", str(FIXTURES / "sample_corpus.tsv"))[0] == 2


def test_tag_and_model(tmp_path):
    model = tmp_path / "model.tsv"
    out1, out2 = tmp_path / "a.tsv", tmp_path / "b.tsv"
    sample = str(FIXTURES / "sample_corpus.tsv")
    assert call("tag", "--train", sample, sample, str(out1), "--save-model", str(model)) == (0, "")
    assert call("tag", "--model", str(model), sample, str(out2)) == (0, "")
    assert out1.read_bytes() == out2.read_bytes()
    tagged, diags = read_corpus(out1)
    assert diags == [] and len(tagged.records) == 50


def test_tag_unlabeled_input_with_bundled_bank(tmp_path):
    import snacs
    bank = Path(snacs.__file__).parent / "data" / "examples.tsv"
    src = tmp_path / "in.tsv"
    src.write_text(BAD.replace("p.Time\tp.Locus", "_\t_"), encoding="utf-8")
    dst = tmp_path / "out.tsv"
    assert call("tag", "--train", str(bank), str(src), str(dst))[0] == 0
    corpus, diags = read_corpus(dst)
    assert diags == [] and corpus.records[0].label is not None


def test_stats():
    code, out = call("stats", str(FIXTURES / "toy_gold.tsv"))
    assert code == 0
    assert out == "1\tp.Recipient~>p.Goal\n1\tp.Time\n1\tp.Time~>p.Interval\n"


def test_export_schema(tmp_path):
    code, out = call("export-schema")
    assert code == 0 and len(out.splitlines()) == 51
    dest = tmp_path / "schema.tsv"
    assert call("export-schema", "--out", str(dest)) == (0, "")
    assert dest.read_text(encoding="utf-8") == out


def test_same_input_same_output(tmp_path):
    copy = tmp_path / "c.tsv"
    shutil.copy(FIXTURES / "corrupted_corpus.tsv", copy)
    assert call("validate", str(copy)) == call("validate", str(copy))
    assert call("loo", "--format", "machine") == call("loo", "--format", "machine")
