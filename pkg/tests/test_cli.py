import pytest

from conftest import GOLDENS
from src.cli import VERSION, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def emitted(tmp_path, capsys):
    """Catalog files for bool-or, bool-or-neg, z2 and l1 in a temporary directory."""
    for name in ("bool-or", "bool-or-neg", "z2", "l1"):
        assert main(["fixtures", "emit", name, "-o", str(tmp_path)]) == 0
    capsys.readouterr()
    return tmp_path


class TestForestCommands:
    @pytest.mark.parametrize("command, source, golden", [
        ("psi", "nested.forest", "nested.psi"),
        ("pi", "nested.forest", "nested.pi"),
        ("pi", "empty.forest", "empty.pi"),
    ])
    def test_goldens(self, capsys, command, source, golden):
        code, out, _ = run(capsys, command, str(GOLDENS / source))
        assert code == 0
        assert out == (GOLDENS / golden).read_text(encoding="utf-8")

    def test_syntax_error(self, capsys):
        code, out, err = run(capsys, "psi", str(GOLDENS / "broken.forest"))
        assert code == 3
        assert out == ""
        assert err.startswith("error: ")
        assert "forest      :=" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "psi", str(tmp_path / "absent.forest"))
        assert code == 3
        assert "error:" in err


class TestGlobalOptions:
    def test_version(self, capsys):
        assert run(capsys, "--version")[:2] == (0, f"forestalg {VERSION}\n")

    def test_formats(self, capsys):
        code, out, _ = run(capsys, "--formats")
        assert code == 0
        assert "DFA text form" in out

    @pytest.mark.parametrize("argv", [[], ["frobnicate"], ["check", "associative", "x.fa"], ["--jobs", "many", "oracle"]])
    def test_usage_errors(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 3
        assert err.startswith("error: ")

    def test_settings_file(self, capsys, tmp_path, emitted):
        settings = tmp_path / "settings.json"
        settings.write_text('{"psi_max_h": 1}', encoding="utf-8")
        code, out, _ = run(capsys, "--settings", str(settings), "check", "2-distributive",
                           str(emitted / "bool-or.fa"))
        assert code == 2
        assert out.startswith("2-distributive: inconclusive")

    def test_unknown_setting(self, capsys, tmp_path):
        settings = tmp_path / "settings.json"
        settings.write_text('{"colour": "red"}', encoding="utf-8")
        assert run(capsys, "--settings", str(settings), "fixtures", "list")[0] == 3

    def test_mistyped_setting(self, capsys, tmp_path, emitted):
        settings = tmp_path / "settings.json"
        settings.write_text('{"psi_max_h": "ten"}', encoding="utf-8")
        code, _, err = run(capsys, "--settings", str(settings), "check", "2-distributive",
                           str(emitted / "bool-or.fa"))
        assert code == 3
        assert "must be int" in err


class TestAlgebraCommands:
    def test_validate(self, capsys, emitted):
        assert run(capsys, "validate", str(emitted / "bool-or.fa"))[0] == 0

    def test_two_distributive(self, capsys, emitted):
        code, out, _ = run(capsys, "check", "2-distributive", str(emitted / "bool-or.fa"))
        assert code == 0
        assert out == (GOLDENS / "bool_or.2dist").read_text(encoding="utf-8")

    def test_not_two_distributive(self, capsys, emitted):
        code, out, _ = run(capsys, "check", "2-distributive", str(emitted / "bool-or-neg.fa"))
        assert code == 1
        assert out.splitlines()[1].startswith("certificate: v=")

    def test_horizontal(self, capsys, emitted):
        assert run(capsys, "check", "horizontal", str(emitted / "z2.fa"))[0] == 1
        assert run(capsys, "check", "horizontal", str(emitted / "bool-or.fa"))[0] == 0

    def test_distributive(self, capsys, emitted):
        assert run(capsys, "check", "distributive", str(emitted / "bool-or.fa"))[0] == 0
        assert run(capsys, "check", "distributive", str(emitted / "bool-or-neg.fa"))[0] == 1

    def test_wreath(self, capsys, emitted, tmp_path):
        out_file = tmp_path / "w.fa"
        code, out, _ = run(capsys, "wreath", str(emitted / "bool-or.fa"), str(emitted / "bool-or.fa"),
                           "-o", str(out_file))
        assert code == 0
        assert out.splitlines()[0].startswith("|H|=4 ")
        assert out.splitlines()[1] == "projection: ok"
        assert run(capsys, "validate", str(out_file))[0] == 0

    def test_generated_wreath_needs_both_files(self, capsys, emitted, tmp_path):
        code, _, _ = run(capsys, "wreath", str(emitted / "bool-or.fa"), str(emitted / "bool-or.fa"),
                         "-o", str(tmp_path / "w.fa"), "--letters", str(emitted / "bool-or.lm"))
        assert code == 3


class TestPathCommands:
    def test_automaton(self, capsys, emitted, tmp_path):
        dot = tmp_path / "pi.dot"
        code, out, _ = run(capsys, "paths", str(emitted / "l1.fa"), str(emitted / "l1.lm"),
                           "--accept-file", str(emitted / "l1.accept"), "--dot", str(dot))
        assert code == 0
        assert out.startswith("DFA\n")
        assert dot.read_text(encoding="utf-8").startswith("digraph pi_automaton")

    def test_intersect(self, capsys, emitted):
        args = ["paths", str(emitted / "bool-or.fa"), str(emitted / "bool-or.lm"), "--accept", "1"]
        assert run(capsys, *args, "--intersect", "0,1")[:2] == (1, "paths intersect: no\n")
        assert run(capsys, *args, "--intersect", "1,1")[:2] == (0, "paths intersect: yes\n")

    @pytest.mark.parametrize("extra", [["--accept", "x"], ["--accept", "1", "--intersect", "0"]])
    def test_bad_indices(self, capsys, emitted, extra):
        code, _, _ = run(capsys, "paths", str(emitted / "bool-or.fa"), str(emitted / "bool-or.lm"), *extra)
        assert code == 3


class TestDerivedCommand:
    def test_one_object_category(self, capsys, emitted, tmp_path):
        flat = tmp_path / "flat.lm"
        flat.write_text("LETTER id 0\nLETTER c0 0\nLETTER c1 0\n", encoding="utf-8")
        trivial = tmp_path / "trivial.fa"
        assert main(["fixtures", "emit", "trivial", "-o", str(tmp_path)]) == 0
        capsys.readouterr()
        code, out, _ = run(capsys, "derived", str(emitted / "bool-or.fa"), str(emitted / "bool-or.lm"),
                           str(trivial), str(flat), "--check", "local-dist", "--diagram", "A:0>0#2[H:0@0]")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "objects: 0"
        assert "locally distributive: yes" in lines
        assert "value: H:1@0" in lines
        assert "merged: A:0>0#2[H:0@0]" in lines

    def test_alphabet_mismatch(self, capsys, emitted):
        code, _, _ = run(capsys, "derived", str(emitted / "bool-or.fa"), str(emitted / "bool-or.lm"),
                         str(emitted / "l1.fa"), str(emitted / "l1.lm"))
        assert code == 3


class TestFixturesCommand:
    def test_list(self, capsys):
        code, out, _ = run(capsys, "fixtures", "list")
        assert code == 0
        assert "sibling-pair-detector" in out

    def test_emit_unknown(self, capsys, tmp_path):
        assert run(capsys, "fixtures", "emit", "nope", "-o", str(tmp_path))[0] == 3


class TestDivisionAndReports:
    @pytest.fixture
    def one_object(self, emitted, tmp_path):
        flat = tmp_path / "flat.lm"
        flat.write_text("LETTER id 0\nLETTER c0 0\nLETTER c1 0\n", encoding="utf-8")
        main(["fixtures", "emit", "trivial", "-o", str(tmp_path)])
        return [str(emitted / "bool-or.fa"), str(emitted / "bool-or.lm"), str(tmp_path / "trivial.fa"), str(flat)]

    def test_divide(self, capsys, one_object, emitted):
        code, out, _ = run(capsys, "derived", *one_object, "--divide", str(emitted / "bool-or.fa"))
        assert code == 0
        assert out.splitlines()[-1].startswith("division search: found after ")

    def test_no_division_into_trivial(self, capsys, one_object, tmp_path):
        code, out, _ = run(capsys, "derived", *one_object, "--divide", str(tmp_path / "trivial.fa"))
        assert code == 1
        assert out.splitlines()[-1].startswith("division search: not-found")

    def test_oracle_report(self, capsys, tmp_path):
        settings = tmp_path / "settings.json"
        settings.write_text('{"output_directory": "%s"}' % (tmp_path / "runs"), encoding="utf-8")
        code, out, _ = run(capsys, "--settings", str(settings), "oracle", "--suite", "psi", "--save")
        assert code == 0
        assert "psi-properties" in out
        (run_dir,) = (tmp_path / "runs").iterdir()
        assert run_dir.name.startswith("oracle-")
        assert (run_dir / "report.txt").read_text(encoding="utf-8") == out
        assert '"output_directory"' in (run_dir / "settings.json").read_text(encoding="utf-8")
