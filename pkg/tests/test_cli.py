import json
import subprocess
import sys

import pytest

from stardyn import fixtures
from stardyn.cli import main


def fixture_path(name):
    return str(fixtures.path(name))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_classify(capsys):
    code, report, _ = run(capsys, "classify", fixture_path("S_shift3"))
    assert code == 0 and report["complete"] is True
    assert report["q"] == [[1, 1, 0, 1], [0, 1, 0, 1], [0, 1, 0, 1]]
    assert report["delta(1)"] == [[1, 1, 0, 1], [1, 1, 0, 1], [0, 1, 0, 1]]
    assert len(report["duality"]) == 5
    code, report, _ = run(capsys, "classify", fixture_path("S_const3"))
    assert code == 0 and report["complete"] is False
    code, report, _ = run(capsys, "classify", fixture_path("S_id"))
    assert code == 0 and report["auto"] is True


@pytest.mark.parametrize("name, levels, dims", [
    ("S_merge", 5, [3, 4, 5, 6, 7, 8]),
    ("S_shift3", 5, [3] * 6),
    ("S_const3", 3, [3, 5, 7, 9]),
])
def test_extend(capsys, name, levels, dims):
    code, report, _ = run(capsys, "extend", fixture_path(name), "--levels", str(levels))
    assert code == 0 and report["dims"] == dims
    assert all(r["pass"] for r in report["verify_tower"].values())


def test_extend_writes_diagrams(capsys, tmp_path):
    dot, png = tmp_path / "t.dot", tmp_path / "t.png"
    code, report, _ = run(capsys, "extend", fixture_path("S_merge"), "--levels", "2",
                          "--dot", str(dot), "--png", str(png))
    assert code == 0
    assert dot.read_text().startswith("digraph tower {")
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_spectrum(capsys, tmp_path):
    dot = tmp_path / "x.dot"
    code, report, _ = run(capsys, "spectrum", fixture_path("S_merge"), "--depth", "3", "--dot", str(dot))
    assert code == 0 and report["count"] == 5
    assert [p["label"] for p in report["points"]] == ["(2)", "(1,2)", "(0,1,2)", "(0,0,1,2)", "~(0)"]
    assert ["P1_2", "P0_1_2"] in report["alpha~ edges"]
    assert "P1_2 -> P0_1_2" in dot.read_text()


def test_covrep_shifted_copies_reports_expected_failure(capsys):
    code, report, _ = run(capsys, "covrep", fixture_path("S_shift3"), "--mode", "example13")
    assert code == 0
    assert report["relations"]["CR1''"]["status"] == "fail"
    assert all(report["relations"][r]["status"] == "pass" for r in ("CR1", "CR1'", "CR2"))


def test_covrep_strict(capsys):
    code, report, _ = run(capsys, "covrep", fixture_path("S_merge"), "--depth", "5")
    assert code == 0
    assert {r["status"] for r in report["relations"].values()} == {"pass"}


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_verify_all_fixtures(capsys, name):
    code, report, _ = run(capsys, "verify-all", fixture_path(name), "--depth", "4")
    assert code == 0 and report["pass"]


def test_malformed_file_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "partial_map", "points": ["a"]}')
    code, report, err = run(capsys, "classify", str(bad))
    assert code == 2 and report is None and "domain" in err


def test_noncommutative_input_exits_2(capsys, tmp_path):
    f = tmp_path / "m.json"
    f.write_text(json.dumps({"kind": "multimatrix", "blocks": [2], "endo": {"multiplicities": [[0]]}}))
    for cmd in ("spectrum", "covrep"):
        code, _, err = run(capsys, cmd, str(f), "--depth", "2")
        assert code == 2 and "partial_map" in err


def test_multimatrix_commands(capsys, tmp_path):
    f = tmp_path / "m.json"
    f.write_text(json.dumps({"kind": "multimatrix", "blocks": [1, 2],
                             "endo": {"multiplicities": [[], [0]], "padding": [1, 1]}}))
    code, report, _ = run(capsys, "extend", str(f), "--levels", "3")
    assert code == 0 and report["dims"][0] == 5
    code, report, _ = run(capsys, "verify-all", str(f), "--depth", "2")
    assert code == 0


def test_depth_limit(capsys, monkeypatch):
    monkeypatch.setenv("STARDYN_DEPTH_LIMIT", "10")
    code, _, err = run(capsys, "extend", fixture_path("S_const3"), "--levels", "3")
    assert code == 2 and "STARDYN_DEPTH_LIMIT" in err


def test_bad_arguments_exit_2(capsys):
    assert main(["extend", fixture_path("S_id"), "--levels", "-1"]) == 2
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "stardyn", "classify", fixture_path("S_id")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["auto"] is True


def test_contract_breach_exits_1(capsys, monkeypatch):
    from stardyn import checks
    from stardyn.errors import ContractBreach

    def broken(system, depth):
        raise ContractBreach("injected")

    monkeypatch.setattr(checks, "SUITES", checks.SUITES + (("injected", broken, False),))
    code, report, _ = run(capsys, "verify-all", fixture_path("S_id"), "--depth", "2")
    assert code == 1 and not report["pass"]
    assert report["suites"]["injected"]["breach"] == "injected"
