import json
import os
import shutil

import pytest

from ydhalg.cli import main

from conftest import fixture_path


def test_verify_pass(capsys):
    code = main(["verify", fixture_path("k_z3.ydh")])
    out = capsys.readouterr().out
    assert code == 0
    assert "axioms pass" in out and "trivial=True" in out


def test_verify_multiple_files(capsys):
    code = main(["verify", fixture_path("k_z3.ydh"),
                 fixture_path("kdual_z2z2.ydh")])
    assert code == 0


def test_verify_failure(tmp_path, capsys):
    text = open(fixture_path("k_z2.ydh"), encoding="utf-8").read()
    bad = text.replace("mult 1 1 0 1", "mult 1 1 0 2")
    target = tmp_path / "bad.ydh"
    target.write_text(bad)
    code = main(["verify", str(target)])
    assert code == 1
    assert "FAIL" in capsys.readouterr().out


def test_analyze_json_deterministic(tmp_path, capsys):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert main(["analyze", fixture_path("kdual_z3.ydh"),
                 "--json", str(out1)]) == 0
    assert main(["analyze", fixture_path("kdual_z3.ydh"),
                 "--json", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    report = json.loads(out1.read_text())
    assert report["passed"] is True
    assert report["schema"] == "ydh-report/1"


def test_analyze_nontrivial_reports_gcd_line(capsys):
    code = main(["analyze", fixture_path("nontrivial_z2_d4_00.ydh")])
    captured = capsys.readouterr()
    assert code == 0
    assert "gcd(dim,|G|)=2" in captured.err
    report = json.loads(captured.out)
    assert report["trivial"]["is_trivial"] is False


def test_core_subcommand(capsys):
    code = main(["core", fixture_path("k_z3.ydh"), "--idempotent", "0"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["size"] == 1 and data["checks_passed"]


def test_dualize_subcommand(tmp_path, capsys):
    out = tmp_path / "dual.ydh"
    assert main(["dualize", fixture_path("k_z3.ydh"),
                 "-o", str(out)]) == 0
    assert main(["verify", str(out)]) == 0


def test_parse_error_exit_code(tmp_path, capsys):
    target = tmp_path / "bad.ydh"
    target.write_text("ydh 1\nnot a line\nend\n")
    assert main(["verify", str(target)]) == 2


def test_missing_file_exit_code(capsys):
    assert main(["verify", "/does/not/exist.ydh"]) == 2


def test_usage_exit_code(capsys):
    assert main(["bogus"]) == 2
    assert main([]) == 2


def test_nonsplit_exit_code(tmp_path, capsys):
    # K[Z/3] declared at cyclotomic order 2 parses and verifies but cannot
    # be split: exit code 3 on analyze
    text = open(fixture_path("k_z3.ydh"), encoding="utf-8").read()
    target = tmp_path / "small_field.ydh"
    target.write_text(text.replace("order 6", "order 2"))
    assert main(["verify", str(target)]) == 0
    assert main(["analyze", str(target)]) == 3


def test_search_subcommand(tmp_path, capsys):
    code = main(["search", "--group", "Z/2", "--dim", "2",
                 "--out", str(tmp_path)])
    assert code == 0
    written = sorted(os.listdir(tmp_path))
    assert written and all(name.endswith(".ydh") for name in written)
    for name in written:
        assert main(["verify", str(tmp_path / name)]) == 0


def test_report_subcommand(tmp_path, capsys):
    out = tmp_path / "r.json"
    main(["analyze", fixture_path("kdual_z3.ydh"), "--json", str(out)])
    capsys.readouterr()
    assert main(["report", str(out)]) == 0
    text = capsys.readouterr().out
    assert "axioms:   pass" in text


def test_threads_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("YDH_THREADS", "2")
    code = main(["verify", fixture_path("k_z3.ydh"),
                 fixture_path("k_z2.ydh"), fixture_path("kdual_z3.ydh")])
    assert code == 0
