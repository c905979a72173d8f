"""End-to-end CLI tests driving accuscore.cli.main in process."""

import io

import pytest

from accuscore.cli import main
from accuscore.formats import FileFormatError, load_mistake_csv
from accuscore.model import Role

GOLD = "gsml_nuggets_heat.csv"
REPORTED = "rml_nuggets_heat.csv"

ALIGN_CSV = (
    "DOC_ID,RM_ID,GSM_ID,CRITERION,OVERLAP\n"
    "nuggets-heat,RM-1,GSM-1,SAME_CATEGORY,2\n"
    "nuggets-heat,RM-2,GSM-2,EXACT,1\n"
    "nuggets-heat,RM-4,,NOT_FOUND,0\n"
    "nuggets-heat,RM-3,GSM-3,DIFFERENT_CATEGORY,3\n"
)


@pytest.fixture(autouse=True)
def _no_ambient_corpus(monkeypatch):
    monkeypatch.delenv("ACCUSCORE_CORPUS", raising=False)


@pytest.fixture()
def corpus_args(corpus_dir):
    return ["--corpus", str(corpus_dir)]


def _fixture(fixtures_dir, name):
    return str(fixtures_dir / name)


class TestTokenize:
    def test_file_input(self, corpus_dir, capsys):
        assert main(["tokenize", str(corpus_dir / "nuggets-heat.txt")]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "0\tThe"
        assert lines[5] == "5\tMiami"
        assert len(lines) == 20

    def test_stdin_input(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("alpha beta"))
        assert main(["tokenize", "-"]) == 0
        assert capsys.readouterr().out == "0\talpha\n1\tbeta\n"

    def test_normalize_flag(self, tmp_path, capsys):
        raw = tmp_path / "raw.txt"
        raw.write_text("Hello, world.\n", encoding="utf-8")
        assert main(["tokenize", "--normalize", str(raw)]) == 0
        tokens = [line.split("\t")[1] for line in capsys.readouterr().out.splitlines()]
        assert tokens == ["Hello", ",", "world", "."]


class TestValidate:
    def test_clean_file(self, fixtures_dir, corpus_args, capsys):
        assert main(["validate", _fixture(fixtures_dir, GOLD), *corpus_args]) == 0
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "3 entries: 0 error(s), 0 warning(s)" in captured.err

    def test_reported_role(self, fixtures_dir, corpus_args, capsys):
        assert main(
            ["validate", _fixture(fixtures_dir, REPORTED), "--role", "REPORTED",
             *corpus_args]
        ) == 0
        assert "4 entries: 0 error(s)" in capsys.readouterr().err

    def test_errors_reported_but_exit_zero_by_default(self, tmp_path, corpus_args, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text(
            "DOC_ID,MISTAKE_ID,START_TOKEN,END_TOKEN,TEXT,CATEGORY\n"
            "nuggets-heat,GSM-1,5,6,Wrong Text,NAME\n",
            encoding="utf-8",
        )
        assert main(["validate", str(bad), *corpus_args]) == 0
        captured = capsys.readouterr()
        assert "text-mismatch" in captured.out
        assert "1 error(s)" in captured.err

    def test_strict_makes_errors_fatal(self, tmp_path, corpus_args):
        bad = tmp_path / "bad.csv"
        bad.write_text(
            "DOC_ID,MISTAKE_ID,START_TOKEN,END_TOKEN,TEXT,CATEGORY\n"
            "ghost-doc,GSM-1,0,0,x,NAME\n",
            encoding="utf-8",
        )
        assert main(["validate", str(bad), "--strict", *corpus_args]) == 1

    def test_corpus_from_environment(self, fixtures_dir, corpus_dir, monkeypatch):
        monkeypatch.setenv("ACCUSCORE_CORPUS", str(corpus_dir))
        assert main(["validate", _fixture(fixtures_dir, GOLD)]) == 0

    def test_missing_corpus_is_usage_error(self, fixtures_dir):
        with pytest.raises(SystemExit) as exc:
            main(["validate", _fixture(fixtures_dir, GOLD)])
        assert exc.value.code == 2


class TestAlign:
    def test_writes_golden_csv(self, fixtures_dir, corpus_args, tmp_path, capsys):
        out = tmp_path / "alignment.csv"
        assert main(
            ["align", "--gsml", _fixture(fixtures_dir, GOLD),
             "--rml", _fixture(fixtures_dir, REPORTED),
             "-o", str(out), *corpus_args]
        ) == 0
        assert out.read_text(encoding="utf-8") == ALIGN_CSV
        assert "wrote 4 alignment(s)" in capsys.readouterr().err

    def test_stdout_mode(self, fixtures_dir, corpus_args, capsys):
        assert main(
            ["align", "--gsml", _fixture(fixtures_dir, GOLD),
             "--rml", _fixture(fixtures_dir, REPORTED), *corpus_args]
        ) == 0
        assert capsys.readouterr().out == ALIGN_CSV

    def test_reruns_are_byte_identical(self, fixtures_dir, corpus_args, tmp_path):
        out = tmp_path / "alignment.csv"
        argv = ["align", "--gsml", _fixture(fixtures_dir, GOLD),
                "--rml", _fixture(fixtures_dir, REPORTED), "-o", str(out), *corpus_args]
        main(argv)
        first = out.read_bytes()
        main(argv)
        assert out.read_bytes() == first

    def test_deterministic_flag_strips_timestamp(self, fixtures_dir, corpus_args,
                                                 tmp_path, capsys):
        out = tmp_path / "alignment.csv"
        argv = ["align", "--gsml", _fixture(fixtures_dir, GOLD),
                "--rml", _fixture(fixtures_dir, REPORTED), "-o", str(out), *corpus_args]
        assert main([*argv, "--deterministic"]) == 0
        err = capsys.readouterr().err
        assert err == f"wrote 4 alignment(s) to {out}\n"
        assert main(argv) == 0
        assert " at 20" in capsys.readouterr().err

    def test_invalid_input_exits_one_without_output(self, fixtures_dir, corpus_args,
                                                    tmp_path, capsys):
        bad = tmp_path / "bad_rml.csv"
        bad.write_text(
            "DOC_ID,MISTAKE_ID,START_TOKEN,END_TOKEN,TEXT,CATEGORY\n"
            "nuggets-heat,RM-1,5,6,Wrong Text,NAME\n",
            encoding="utf-8",
        )
        out = tmp_path / "alignment.csv"
        assert main(
            ["align", "--gsml", _fixture(fixtures_dir, GOLD), "--rml", str(bad),
             "-o", str(out), *corpus_args]
        ) == 1
        assert not out.exists()
        assert "rml: ERROR [text-mismatch]" in capsys.readouterr().err

    def test_malformed_csv_exits_one_naming_line(self, fixtures_dir, corpus_args,
                                                 tmp_path, capsys):
        bad = tmp_path / "broken.csv"
        bad.write_text("NOT,A,HEADER\n", encoding="utf-8")
        assert main(
            ["align", "--gsml", str(bad), "--rml", _fixture(fixtures_dir, REPORTED),
             *corpus_args]
        ) == 1
        err = capsys.readouterr().err
        assert err.startswith("error: ")
        assert f"{bad}:1" in err


class TestScore:
    def test_table_on_stdout(self, fixtures_dir, corpus_args, capsys):
        assert main(
            ["score", "--gsml", _fixture(fixtures_dir, GOLD),
             "--rml", _fixture(fixtures_dir, REPORTED), *corpus_args]
        ) == 0
        out = capsys.readouterr().out
        assert "CORPUS" in out
        assert "3/4 = 0.7500" in out
        assert "0.8571" in out
        assert "(undefined)" in out
        assert "nuggets-heat" not in out

    def test_per_doc_rows(self, fixtures_dir, corpus_args, capsys):
        assert main(
            ["score", "--gsml", _fixture(fixtures_dir, GOLD),
             "--rml", _fixture(fixtures_dir, REPORTED), "--per-doc", *corpus_args]
        ) == 0
        assert "nuggets-heat" in capsys.readouterr().out

    def test_csv_output(self, fixtures_dir, corpus_args, tmp_path):
        out = tmp_path / "scores.csv"
        assert main(
            ["score", "--gsml", _fixture(fixtures_dir, GOLD),
             "--rml", _fixture(fixtures_dir, REPORTED), "-o", str(out), *corpus_args]
        ) == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[1] == "CORPUS,OVERALL,3,3,1.000000,3,4,0.750000,0.857143"
        assert "CORPUS,WORD,0,1,0.000000,0,0,," in lines


class TestMerge:
    @pytest.fixture()
    def annotator_files(self, tmp_path):
        header = "DOC_ID,MISTAKE_ID,START_TOKEN,END_TOKEN,TEXT,CATEGORY\n"
        rows = {
            "ann-a": "nuggets-heat,GSM-1,14,16,game - high,WORD\n",
            "ann-b": "nuggets-heat,GSM-1,14,16,game - high,WORD\n",
            "ann-c": "nuggets-heat,GSM-1,13,16,a game - high,NUMBER\n",
        }
        paths = []
        for name, row in rows.items():
            path = tmp_path / f"{name}.csv"
            path.write_text(header + row, encoding="utf-8")
            paths.append(str(path))
        return paths

    def test_majority_merge(self, annotator_files, corpus_args, tmp_path, capsys):
        out = tmp_path / "merged.csv"
        argv = ["merge", "--quorum", "2", "-o", str(out), *corpus_args]
        for path in annotator_files:
            argv += ["--annotator", path]
        assert main(argv) == 0
        merged = load_mistake_csv(out, Role.GOLD)
        assert [(m.span.start, m.span.end, m.category.value) for m in merged] == [
            (14, 16, "WORD")
        ]
        assert "wrote 1 merged entries" in capsys.readouterr().err

    def test_tie_note_on_stderr(self, tmp_path, corpus_args, capsys):
        header = "DOC_ID,MISTAKE_ID,START_TOKEN,END_TOKEN,TEXT,CATEGORY\n"
        a = tmp_path / "ann-a.csv"
        a.write_text(header + "nuggets-heat,GSM-1,0,0,The,WORD\n", encoding="utf-8")
        b = tmp_path / "ann-b.csv"
        b.write_text(header + "nuggets-heat,GSM-1,0,0,The,NUMBER\n", encoding="utf-8")
        assert main(
            ["merge", "--annotator", str(a), "--annotator", str(b), "--quorum", "2",
             *corpus_args]
        ) == 0
        err = capsys.readouterr().err
        assert "note:" in err and "tied" in err and "kept NUMBER" in err

    def test_quorum_out_of_range_is_usage_error(self, annotator_files, corpus_args):
        argv = ["merge", "--quorum", "5", *corpus_args]
        for path in annotator_files:
            argv += ["--annotator", path]
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2

    def test_duplicate_annotator_stems_rejected(self, tmp_path, corpus_args):
        header = "DOC_ID,MISTAKE_ID,START_TOKEN,END_TOKEN,TEXT,CATEGORY\n"
        for sub in ("one", "two"):
            (tmp_path / sub).mkdir()
            (tmp_path / sub / "ann.csv").write_text(header, encoding="utf-8")
        with pytest.raises(SystemExit) as exc:
            main(
                ["merge", "--annotator", str(tmp_path / "one" / "ann.csv"),
                 "--annotator", str(tmp_path / "two" / "ann.csv"),
                 "--quorum", "1", *corpus_args]
            )
        assert exc.value.code == 2


class TestAgreement:
    def test_identical_annotators(self, fixtures_dir, tmp_path, corpus_args, capsys):
        gold = (fixtures_dir / GOLD).read_text(encoding="utf-8")
        a = tmp_path / "ann-a.csv"
        b = tmp_path / "ann-b.csv"
        a.write_text(gold, encoding="utf-8")
        b.write_text(gold, encoding="utf-8")
        out = tmp_path / "agreement.csv"
        assert main(
            ["agreement", "--annotator", str(a), "--annotator", str(b),
             "-o", str(out), *corpus_args]
        ) == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "GOLD_ANNOTATOR,REPORTED_ANNOTATOR,PRECISION,RECALL,F1"
        assert lines[1] == "ann-a,ann-b,1.000000,1.000000,1.000000"
        assert lines[2] == "ann-b,ann-a,1.000000,1.000000,1.000000"
        assert lines[3] == "MEAN,,,,1.000000"
        assert "mean pairwise F1: 1.0000" in capsys.readouterr().err

    def test_needs_two_files(self, fixtures_dir, corpus_args):
        with pytest.raises(SystemExit) as exc:
            main(["agreement", "--annotator", _fixture(fixtures_dir, GOLD), *corpus_args])
        assert exc.value.code == 2


class TestBaseline:
    def test_golden_run(self, corpus_args, tmp_path, capsys):
        out = tmp_path / "baseline.csv"
        assert main(["baseline", "-o", str(out), *corpus_args]) == 0
        rml = load_mistake_csv(out, Role.REPORTED)
        assert [(m.span.start, m.text) for m in rml] == [
            (6, "2"), (16, "Monday"), (19, "Talking Stick Resort Arena"),
            (38, "59"), (40, "42"),
        ]
        err = capsys.readouterr().err
        assert "note: nuggets-heat has no linked game record; skipped" in err

    def test_missing_games_dir_exits_one(self, tmp_path, capsys):
        (tmp_path / "doc.txt").write_text("x y .\n", encoding="utf-8")
        assert main(["baseline", "--corpus", str(tmp_path)]) == 1
        assert "error:" in capsys.readouterr().err
