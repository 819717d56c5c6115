"""Golden-file tests for every CLI command.

Set LOGCOH_REGEN_GOLDEN=1 to rewrite the files under tests/golden.
"""
import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from logcoh.cli import run
from logcoh.fixtures import catalog, fixture_text

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("LOGCOH_REGEN_GOLDEN") == "1"


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("LOGCOH_FIELD", raising=False)
    for name in ("cp2_cubic", "pants_n1", "p2_lines3", "p2_lines5", "x_equals_c", "p2_lines3_broken",
                 "dx_eq_y", "d2_only", "exterior_xy", "boolean_3"):
        Path(f"{name}.json").write_text(fixture_text(name), encoding="utf-8")
    Path("lines4.json").write_text(json.dumps({"schema": "arr/1", "mode": "projective",
                                               "forms": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]}))
    Path("concurrent.json").write_text(json.dumps({"schema": "arr/1", "mode": "projective",
                                                   "forms": [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]]}))
    Path("central3.json").write_text(json.dumps({"schema": "arr/1", "mode": "central",
                                                 "forms": [[1, 0], [0, 1], [1, 1]]}))
    Path("six_lines.json").write_text(json.dumps({"forms": [[1, t, t * t] for t in range(6)]}))
    Path("gw.json").write_text(json.dumps({"{1}": True}))
    return tmp_path


def invoke(argv):
    out = io.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


def check_golden(name, text):
    path = GOLDEN / name
    if REGEN or not path.exists():
        GOLDEN.mkdir(exist_ok=True)
        path.write_text(text, encoding="utf-8")
    assert text == path.read_text(encoding="utf-8")


CASES = {
    "fixtures_list.txt": ["fixtures", "--list"],
    "fixtures_dx_eq_y.json": ["fixtures", "dx_eq_y"],
    "fixtures_pants_n1.json": ["fixtures", "pants_n1"],
    "validate_cp2_cubic.txt": ["validate", "--pair", "cp2_cubic.json"],
    "validate_p2_lines3.json": ["validate", "--pair", "p2_lines3.json", "--quick", "--format", "json"],
    "logcoh_cp2_cubic.txt": ["logcoh", "--pair", "cp2_cubic.json", "--max-weight", "9"],
    "logcoh_cp2_cubic.tsv": ["logcoh", "--pair", "cp2_cubic.json", "--max-weight", "9", "--format", "tsv"],
    "logcoh_pants_n1.json": ["logcoh", "--pair", "pants_n1.json", "--max-weight", "3", "--format", "json",
                             "--check-generation"],
    "logcoh_p2_lines3_fp.txt": ["logcoh", "--pair", "p2_lines3.json", "--max-weight", "2", "--field", "fp:1009"],
    "sr_pants_n1.txt": ["sr", "--pair", "pants_n1.json"],
    "sr_p2_lines3.json": ["sr", "--pair", "p2_lines3.json", "--format", "json", "--max-weight", "4"],
    "present_pants_n1.txt": ["present", "--pair", "pants_n1.json"],
    "present_p2_lines3.json": ["present", "--pair", "p2_lines3.json", "--format", "json"],
    "sspages_dx_eq_y.txt": ["sspages", "--complex", "dx_eq_y.json"],
    "sspages_d2_only.json": ["sspages", "--complex", "d2_only.json", "--format", "json"],
    "sspages_exterior_xy.tsv": ["sspages", "--complex", "exterior_xy.json", "--format", "tsv", "--max-page", "3"],
    "classify_p2_lines5.json": ["classify", "--pair", "p2_lines5.json"],
    "classify_cp2_cubic.txt": ["classify", "--pair", "cp2_cubic.json", "--gw-flags", "gw.json",
                               "--format", "text"],
    "classify_x_equals_c.json": ["classify", "--pair", "x_equals_c.json"],
    "classify_lines.json": ["classify", "--pair", "p2_lines3.json", "--lines", "six_lines.json"],
    "arrangement_os.txt": ["arrangement", "os", "--file", "boolean_3.json"],
    "arrangement_os_central3.json": ["arrangement", "os", "--file", "central3.json", "--format", "json"],
    "arrangement_complement.txt": ["arrangement", "complement", "--file", "lines4.json"],
    "arrangement_complement.json": ["arrangement", "complement", "--file", "lines4.json", "--format", "json"],
    "arrangement_pair.json": ["arrangement", "pair", "--n", "1", "--k", "3"],
    "arrangement_pair_file.json": ["arrangement", "pair", "--file", "lines4.json"],
    "arrangement_sh.txt": ["arrangement", "sh", "--n", "1", "--k", "3", "--max-weight", "3"],
    "arrangement_sh.json": ["arrangement", "sh", "--n", "2", "--k", "4", "--max-weight", "2", "--format", "json"],
    "arrangement_sh.tsv": ["arrangement", "sh", "--n", "2", "--k", "4", "--max-weight", "3", "--format", "tsv"],
    "arrangement_mirror.txt": ["arrangement", "mirror", "--m", "3", "--max-weight", "4"],
    "arrangement_mirror.json": ["arrangement", "mirror", "--m", "4", "--max-weight", "3", "--format", "json"],
    "mirror_check.txt": ["mirror-check"],
    "mirror_check.json": ["mirror-check", "--n", "1", "2", "--format", "json"],
}


@pytest.mark.parametrize("golden", sorted(CASES))
def test_golden(workdir, golden):
    code, text = invoke(CASES[golden])
    assert code == 0
    check_golden(golden, text)
    # a second run is byte-identical
    assert invoke(CASES[golden]) == (0, text)


def test_cp2_table_content(workdir):
    code, text = invoke(["logcoh", "--pair", "cp2_cubic.json", "--max-weight", "9", "--format", "json"])
    rows = {r["weight"]: r["dims"] for r in json.loads(text)["rows"]}
    assert rows[3] == rows[6] == rows[9] == [1, 2, 2, 1]


def test_classify_mult_top(workdir):
    _, text = invoke(["classify", "--pair", "p2_lines5.json"])
    v = json.loads(text)["verdicts"]
    assert v["multiplicatively_topological"]["status"] == "Established"
    assert v["multiplicatively_topological"]["citation"]


def test_x_equals_c_never_established(workdir):
    _, text = invoke(["classify", "--pair", "x_equals_c.json"])
    v = json.loads(text)["verdicts"]
    assert "Established" not in json.dumps(v)


def test_sspages_dx_eq_y(workdir):
    _, text = invoke(["sspages", "--complex", "dx_eq_y.json", "--format", "json"])
    pages = {p["r"]: p for p in json.loads(text)["pages"]}
    assert pages[1]["dims"] == [[0, 0, 1], [1, 0, 1]] and pages[2]["dims"] == []


def test_env_field(workdir, monkeypatch):
    monkeypatch.setenv("LOGCOH_FIELD", "fp:1009")
    code, text = invoke(["logcoh", "--pair", "p2_lines3.json", "--max-weight", "2"])
    assert code == 0 and text == (GOLDEN / "logcoh_p2_lines3_fp.txt").read_text()
    monkeypatch.setenv("LOGCOH_FIELD", "fp:1007")
    assert invoke(["logcoh", "--pair", "p2_lines3.json", "--max-weight", "2"])[0] == 2


def test_fixture_files_are_byte_stable(workdir):
    for name in catalog():
        assert invoke(["fixtures", name, "--out", f"out_{name}.json"]) == (0, "")
        assert Path(f"out_{name}.json").read_text() == fixture_text(name)


@pytest.mark.parametrize("argv,code", [
    (["validate", "--pair", "p2_lines3_broken.json"], 2),
    (["logcoh", "--pair", "p2_lines3_broken.json", "--max-weight", "2"], 2),
    (["logcoh", "--pair", "missing.json", "--max-weight", "2"], 2),
    (["logcoh", "--pair", "cp2_cubic.json", "--max-weight", "2", "--field", "fp:1007"], 2),
    (["present", "--pair", "x_equals_c.json"], 3),
    (["fixtures", "no_such_fixture"], 2),
    (["arrangement", "os"], 2),
    (["arrangement", "pair", "--file", "concurrent.json"], 3),
    (["arrangement", "pair"], 2),
    (["arrangement", "os", "--file", "lines4.json"], 3),
    (["arrangement", "mirror", "--m", "3", "--max-weight", "0"], 3),
    (["sspages", "--complex", "cp2_cubic.json"], 2),
])
def test_error_exit_codes(workdir, argv, code):
    assert invoke(argv)[0] == code


def test_console_script_entry(workdir):
    proc = subprocess.run([sys.executable, "-m", "logcoh.cli", "fixtures", "--list"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "fixtures_list.txt").read_text()
