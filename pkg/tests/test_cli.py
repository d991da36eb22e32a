import json
import subprocess
import sys

import pytest

from surjhh.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_diff_mod2_view(capsys):
    assert run(capsys, "diff", "(1,2,1)") == (0, "(2,1) + (1,2)", "")


def test_diff_integral(capsys):
    code, out, _ = run(capsys, "diff", "(1,2,1)", "--integral")
    assert out == "(2,1) - (1,2)"


def test_diff_json(capsys):
    code, out, _ = run(capsys, "diff", "(1,2,1)", "--json", "--integral")
    doc = json.loads(out)
    assert doc["boundary"] == [{"surjection": [2, 1], "coefficient": 1}, {"surjection": [1, 2], "coefficient": -1}]


def test_compose(capsys):
    code, out, _ = run(capsys, "compose", "(2,3,2,1)", "2", "(4,3,4,1,2)", "--integral")
    assert code == 0
    assert out.startswith("(5,6,5,4,5,2,3,1) - (5,4,6,4,5,2,3,1)")


def test_cut_signed(capsys):
    assert run(capsys, "cut", "(3,1,2,3,1)", "sphere:2", "e2", "--integral")[1] == "- e2 ⊗ e0 ⊗ e2"
    assert run(capsys, "cut", "(3,1,2,3,1)", "sphere:2", "e2")[1] == "e2 ⊗ e0 ⊗ e2"


def test_cut_json(capsys):
    code, out, _ = run(capsys, "cut", "(1,2)", "delta:1", "[0,1]", "--json")
    doc = json.loads(out)
    assert doc["terms"] == [
        {"factors": ["[0]", "[0,1]"], "coefficient": 1},
        {"factors": ["[0,1]", "[1]"], "coefficient": 1},
    ]


def test_hh_sphere(capsys):
    code, out, _ = run(capsys, "hh", "sphere:2", "2")
    assert code == 0
    assert out.splitlines() == ["dim HH_2 = 2", "α", "1⊗α⊗α"]


def test_hh_algebra_file(capsys, tmp_path):
    path = tmp_path / "dual.txt"
    path.write_text("1 0 unit\nx 2\n")
    code, out, _ = run(capsys, "hh", str(path), "2", "--json")
    assert json.loads(out)["basis"] == ["x", "1⊗x⊗x"]


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["diff", "(1,2,x)"], "column 6"),
        (["compose", "(1,2)", "5", "(1,2)"], "slot 5"),
        (["cut", "(1,2)", "torus:2", "e2"], "space"),
        (["cut", "(1,2)", "delta:2", "[0,1] + ?"], "column 9"),
        (["hh", "delta:1", "0"], "unit"),
        (["hh", "sphere:2", "6", "--truncation", "4"], "truncation"),
    ],
)
def test_bad_input_exits_2(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert needle in err


def test_algebra_file_error_has_line(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 0 unit\nx\n")
    code, _, err = run(capsys, "hh", str(path), "0")
    assert code == 2 and "line 2" in err


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert "does not commute" in out


def test_verify_check_failure_exits_1(capsys, monkeypatch):
    from surjhh import cli, pipeline

    def broken(**kw):
        r = pipeline.verify(**kw)
        r.add("zz.synthetic", None, 0, 1, pipeline.DERIVED)
        return r

    monkeypatch.setattr(cli, "verify", broken)
    code, out, _ = run(capsys, "verify")
    assert code == 1
    assert "FAIL  zz.synthetic" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "surjhh", "diff", "(1,2,1,2)"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "(2,1,2) + (1,2,1)"
