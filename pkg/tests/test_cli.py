"""End-to-end tests for the ctgroups command line."""

import json

import pytest

from ctgroups.core.config import settings
from ctgroups.main import EXIT_FAILED, EXIT_INPUT, EXIT_OK, build_parser, main


def _run(data_dir, tmp_path, *args, diagram="c4.txt", name="out.json"):
    out = tmp_path / name
    argv = ["--diagram", str(data_dir / diagram), "--out", str(out), *args]
    return main(argv), out


class TestClassify:
    def test_c4_over_gf4(self, data_dir, tmp_path):
        code, out = _run(data_dir, tmp_path, "--command", "classify", "--field", "2^2")
        assert code == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["totals"] == {"classes": 4, "orientable": 2}
        assert doc["header"]["field"] == "2^2"
        assert doc["header"]["tool"] == "ct-amalgams"
        assert doc["header"]["spanning"]["extra"] == ["4->3"]

    def test_theta_over_gf8(self, data_dir, tmp_path):
        code, out = _run(data_dir, tmp_path, "--command", "classify", "--field", "2^3", diagram="theta.txt")
        assert code == EXIT_OK
        assert json.loads(out.read_text())["totals"] == {"classes": 36, "orientable": 9}

    def test_stdout(self, data_dir, capsys):
        code = main(["--command", "classify", "--field", "2^2", "--diagram", str(data_dir / "c5.txt")])
        assert code == EXIT_OK
        assert json.loads(capsys.readouterr().out)["totals"]["classes"] == 4

    def test_verify_runs_are_byte_identical(self, data_dir, tmp_path):
        args = ("--command", "verify", "--field", "2^2", "--seed", "7")
        _, first = _run(data_dir, tmp_path, *args, name="a.json")
        _, second = _run(data_dir, tmp_path, *args, name="b.json")
        assert first.read_bytes() == second.read_bytes()

    @pytest.mark.parametrize("diagram, field", [("c4.txt", "2^2"), ("theta.txt", "2^3")])
    def test_classify_runs_are_byte_identical(self, data_dir, tmp_path, diagram, field):
        args = ("--command", "classify", "--field", field)
        _, first = _run(data_dir, tmp_path, *args, diagram=diagram, name="a.json")
        _, second = _run(data_dir, tmp_path, *args, diagram=diagram, name="b.json")
        assert first.read_bytes() == second.read_bytes()

    def test_base_vertex(self, data_dir, tmp_path):
        code, out = _run(data_dir, tmp_path, "--command", "classify", "--field", "2^2", "--base", "3")
        assert code == EXIT_OK
        assert json.loads(out.read_text())["header"]["spanning"]["base"] == "3"


class TestVerify:
    def test_twisted_cycle(self, data_dir, tmp_path):
        code, out = _run(
            data_dir, tmp_path, "--command", "verify", "--field", "2^2", "--pointing", str(data_dir / "c4_twisted.txt")
        )
        assert code == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["orientation"]["found"] is False
        assert doc["orientation"]["orientable_phi"] is False
        assert doc["pointing"] == ["delta 4 1 1 0"]
        assert all(t["order"] == 3 and t["consistent"] for t in doc["tori"])

    def test_trivial_cycle_is_oriented(self, data_dir, tmp_path):
        code, out = _run(data_dir, tmp_path, "--command", "verify", "--field", "2^2")
        assert code == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["orientation"]["found"] is True
        assert set(doc["orientation"]["signs"].values()) == {"+"}

    def test_reversed_convention(self, data_dir, tmp_path):
        code, out = _run(data_dir, tmp_path, "--command", "verify", "--field", "2^2", "--convention", "reversed")
        assert code == EXIT_OK
        assert json.loads(out.read_text())["orientation"]["signs"] == {"1": "+", "2": "-", "3": "+", "4": "-"}


class TestOtherCommands:
    def test_oracle(self, data_dir, tmp_path):
        code, out = _run(data_dir, tmp_path, "--command", "oracle", "--field", "2^2", diagram="a3.txt")
        assert code == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["mismatches"] == []
        assert doc["cross_pairs"] == 0
        assert doc["matrix_pairs_checked"] > 0

    def test_complete_cycle(self, data_dir, tmp_path):
        code, out = _run(data_dir, tmp_path, "--command", "complete", "--field", "2^2")
        assert code == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["kind"] == "affine"
        assert doc["target"] == "SL_4(GF(4)[t,t^-1])"
        assert doc["evaluation"]["checks"][0]["subject"].startswith("t=")

    def test_complete_theta_has_no_witness(self, data_dir, tmp_path):
        code, out = _run(data_dir, tmp_path, "--command", "complete", "--field", "2^2", diagram="theta.txt")
        assert code == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["kind"] == "none"
        assert doc["available"] is False

    def test_emit(self, data_dir, tmp_path):
        code, out = _run(data_dir, tmp_path, "--command", "emit", "--field", "2^2", name="c4.pres")
        assert code == EXIT_OK
        text = out.read_text()
        assert text.startswith("FIELD 2^2\nCONVENTION forward\n")
        assert "NONEDGE 1 3" in text


class TestErrors:
    def test_field_too_small(self, data_dir, tmp_path, caplog):
        code, out = _run(data_dir, tmp_path, "--command", "classify", "--field", "2^1")
        assert code == EXIT_INPUT
        assert "order at least 4" in caplog.text
        assert not out.exists()

    @pytest.mark.parametrize("field", ["4^1", "x", "3^1"])
    def test_bad_fields(self, data_dir, tmp_path, field):
        code, _ = _run(data_dir, tmp_path, "--command", "classify", "--field", field)
        assert code == EXIT_INPUT

    def test_triangle(self, data_dir, tmp_path):
        code, _ = _run(data_dir, tmp_path, "--command", "classify", "--field", "2^2", diagram="triangle.txt")
        assert code == EXIT_INPUT

    def test_missing_file(self, data_dir, tmp_path):
        code, _ = _run(data_dir, tmp_path, "--command", "classify", "--field", "2^2", diagram="nope.txt")
        assert code == EXIT_INPUT

    def test_unknown_base(self, data_dir, tmp_path):
        code, _ = _run(data_dir, tmp_path, "--command", "classify", "--field", "2^2", "--base", "9")
        assert code == EXIT_INPUT

    def test_bad_pointing(self, data_dir, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("delta 1 3 0 0\n")
        code, _ = _run(data_dir, tmp_path, "--command", "verify", "--field", "2^2", "--pointing", str(bad))
        assert code == EXIT_INPUT

    def test_completion_out_of_scope(self, data_dir, tmp_path):
        code, _ = _run(
            data_dir, tmp_path, "--command", "complete", "--field", "2^2", "--pointing", str(data_dir / "c4_twisted.txt")
        )
        assert code == EXIT_INPUT

    def test_budget_is_an_input_error(self, data_dir, tmp_path, monkeypatch):
        monkeypatch.setattr(settings, "ORIENTATION_MAX_VERTICES", 2)
        code, _ = _run(data_dir, tmp_path, "--command", "verify", "--field", "2^2")
        assert code == EXIT_INPUT

    def test_exit_codes_are_distinct(self):
        assert len({EXIT_OK, EXIT_INPUT, EXIT_FAILED}) == 3

    def test_command_is_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["--field", "2^2", "--diagram", "x"])
