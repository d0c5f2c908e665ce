import json
import subprocess
import sys

import pytest

from castelnuovo import cli
from castelnuovo.groebner import HilbertProfile
from castelnuovo.surfgeom import ChartReport, VerificationReport

IDEAL = """\
ring p=101 vars=x,y,z order=grevlex
# two conics
x^2-y*z
x*y-z^2
"""


@pytest.fixture
def ideal_file(tmp_path):
    path = tmp_path / "i.ideal"
    path.write_text(IDEAL)
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gb_text_and_json(capsys, ideal_file):
    code, out, _ = run(capsys, "gb", ideal_file)
    assert code == 0
    lines = out.split("\n")
    assert lines[0] == "ring p=101 vars=x,y,z order=grevlex"
    assert "y^2*z-x*z^2" in lines
    code, out, _ = run(capsys, "gb", ideal_file, "--order", "lex", "--json")
    data = json.loads(out)
    assert code == 0 and data["size"] == len(data["basis"])
    code2, out2, _ = run(capsys, "gb", ideal_file, "--order", "lex", "--json")
    assert out2 == out


def test_member_and_certificate(capsys, ideal_file):
    code, out, _ = run(capsys, "member", ideal_file, "--poly", "x^3-x*y*z", "--certificate", "--json")
    data = json.loads(out)
    assert code == 0 and data["member"] and data["cofactors"] == ["x", "0"]
    code, out, _ = run(capsys, "member", ideal_file, "--poly", "x")
    assert code == 1 and out.strip() == "false"


def test_radical_modes(capsys, ideal_file):
    code, out, _ = run(capsys, "radical", ideal_file, "--poly", "x")
    assert code == 1 and out.strip() == "false"
    path = ideal_file.replace("i.ideal", "nil.ideal")
    with open(path, "w") as fh:
        fh.write("ring p=101 vars=x,y\nx^3\ny^2\n")
    code, out, _ = run(capsys, "radical", path, "--poly", "x+y", "--power", "10", "--json")
    assert code == 0 and json.loads(out) == {"radical_member": True, "method": "power", "power": 4}
    code, out, _ = run(capsys, "radical", path, "--poly", "x+y", "--power", "3")
    assert code == 1
    code, out, _ = run(capsys, "radical", path, "--poly", "x+y")
    assert code == 0 and out.strip() == "true"


def test_eliminate(capsys, tmp_path):
    path = tmp_path / "e.ideal"
    path.write_text("ring p=101 vars=x,y,z\nx-y^2\nx-z\n")
    code, out, _ = run(capsys, "eliminate", str(path), "--vars", "x")
    assert code == 0 and out.split("\n")[:2] == ["ring p=101 vars=y,z order=grevlex", "y^2-z"]
    code, _, err = run(capsys, "eliminate", str(path), "--vars", "q")
    assert code == 2 and "not ring variables" in err
    code, _, _ = run(capsys, "eliminate", str(path), "--vars", "x,y,z")
    assert code == 2


def test_hilbert(capsys, ideal_file, tmp_path):
    code, out, _ = run(capsys, "hilbert", ideal_file)
    assert code == 0 and out == "codimension : 2\ndegree      : 4\n"
    code, out, _ = run(capsys, "hilbert", ideal_file, "--json")
    assert json.loads(out) == {"codim": 2, "degree": 4}
    bad = tmp_path / "nh.ideal"
    bad.write_text("ring p=101 vars=x,y\nx^2-y\n")
    code, _, err = run(capsys, "hilbert", str(bad))
    assert code == 2 and "homogeneous" in err


def test_input_errors_have_locations(capsys, tmp_path):
    bad = tmp_path / "bad.ideal"
    bad.write_text("ring p=101 vars=x,y\nx+y\nx+q\n")
    code, _, err = run(capsys, "gb", str(bad))
    assert code == 2 and f"{bad}:3:" in err and "unknown variable" in err
    bad.write_text("x+y\n")
    code, _, err = run(capsys, "gb", str(bad))
    assert code == 2 and ":1:" in err
    bad.write_text("ring p=100 vars=x\n")
    assert run(capsys, "gb", str(bad))[0] == 2
    assert run(capsys, "gb", str(tmp_path / "missing.ideal"))[0] == 2
    assert run(capsys, "member", str(bad), "--poly", "x")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "gb", "--help")[0] == 0


def test_surface_input_errors(capsys, tmp_path):
    text = (cli.resolve_input("appendix.surface")).read_text()
    bad = tmp_path / "bad.surface"
    bad.write_text(text.replace("point = (1,-1)", "point = (1,-1"))
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2 and f"{bad}:5:" in err
    bad.write_text(text.replace("point = (1,1)", "point = (2,-2)"))
    code, _, err = run(capsys, "build-sigma", str(bad))
    assert code == 2 and "coincide" in err
    assert run(capsys, "verify", "appendix.surface", "--jobs", "0")[0] == 2


def test_build_sigma(capsys):
    code, out, _ = run(capsys, "build-sigma", "appendix.surface", "--json")
    data = json.loads(out)
    assert code == 0 and data["terms"] == 42 and data["lambda"] == [1, 1, 1, 1]


def test_verify_appendix_json_and_jobs(capsys):
    code, out, _ = run(capsys, "verify", "appendix.surface", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["segre"] == {"codim": 5, "degree": 32}
    assert data["passed"] and data["even_set"] and data["expected_nodes"] == 32
    assert [c["chart"] for c in data["charts"]] == ["s,x0", "s,x1", "s,x2", "t,x0", "t,x1", "t,x2"]
    assert list(data) == ["charts", "segre", "expected_nodes", "even_set", "passed", "lambda", "attempts"]
    code2, out2, _ = run(capsys, "verify", "appendix.surface", "--json", "--jobs", "2")
    assert code2 == 0 and out2 == out


def fake_report(nodal_ok=True, even=True, degree=32):
    charts = [ChartReport(c, nodal_ok if i == 0 else True, 21) for i, c in
              enumerate(["s,x0", "s,x1", "s,x2", "t,x0", "t,x1", "t,x2"])]
    return VerificationReport(charts, HilbertProfile(5, degree), 32, even, (1, 1, 1, 1), 6)


@pytest.mark.parametrize("report,code", [
    (fake_report(), 0),
    (fake_report(nodal_ok=False), 1),
    (fake_report(even=False), 1),
    (fake_report(degree=31), 1),
])
def test_verify_exit_codes(capsys, monkeypatch, report, code):
    monkeypatch.setattr(cli, "verify", lambda *a, **k: report)
    got, out, _ = run(capsys, "verify", "appendix.surface")
    assert got == code
    assert out.strip().endswith(f"passed         : {'true' if report.passed else 'false'}")


def test_unexpected_errors_map_to_failure(capsys, monkeypatch):
    def boom(*a, **k):
        raise RuntimeError("worker died")
    monkeypatch.setattr(cli, "verify", boom)
    code, _, err = run(capsys, "verify", "appendix.surface")
    assert code == 1 and "internal error" in err


def test_invariants_commands(capsys):
    code, out, _ = run(capsys, "invariants", "--node-count", "--pg", "4", "--q", "0")
    assert code == 0 and out.strip() == "20"
    code, out, _ = run(capsys, "invariants", "--castelnuovo", "0", "1", "1", "--json")
    rec = json.loads(out)[0]
    assert code == 0 and (rec["p_g"], rec["K2"], rec["abc"]) == (5, 8, [0, 1, 1])
    code, out, _ = run(capsys, "invariants", "--double-cover", "--pg", "6", "--q", "0",
                       "--k2", "11", "--nu", "32", "--json")
    assert json.loads(out) == {"chi": 6, "K2": 22}
    code, out, _ = run(capsys, "invariants", "--c2", "--g", "26", "--pg", "81")
    assert code == 0 and out.strip() == "748 >= 748 : true"
    assert run(capsys, "invariants", "--c2", "--g", "27", "--pg", "84")[0] == 1
    code, out, _ = run(capsys, "invariants", "--chow", "1,0", "1,0", "4,0", "--abc", "1,1,1")
    assert code == 0 and out.strip() == "12"
    assert run(capsys, "invariants", "--node-count", "--pg", "4")[0] == 2
    assert run(capsys, "invariants", "--castelnuovo", "1", "0", "0")[0] == 2
    assert run(capsys, "invariants", "--double-cover", "--pg", "6", "--q", "0", "--k2", "11", "--nu", "31")[0] == 2
    assert run(capsys, "invariants", "--chow", "1,0", "1", "4,0", "--abc", "1,1,1")[0] == 2
    assert run(capsys, "invariants", "--node-count", "--c2")[0] == 2


def test_enumerate_type2(capsys):
    code, out, _ = run(capsys, "enumerate-type2", "--gmax", "30")
    rows = out.strip().split("\n")
    assert code == 0 and rows[0].split()[:7] == ["family", "g", "p_g", "q", "K2", "nu", "abc"]
    assert len(rows) - 1 == 58
    code, out, _ = run(capsys, "enumerate-type2", "--gmax", "30", "--json")
    data = json.loads(out)
    assert len(data) == 58 and max(r["g"] for r in data) == 26
    assert all(4 * (1 + r["p_g"] + r["q"]) == 16 * r["g"] + 16 for r in data)
    assert run(capsys, "enumerate-type2", "--gmax", "30", "--json")[1] == out
    assert run(capsys, "enumerate-type2", "--gmax", "0")[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "castelnuovo", "invariants", "--node-count",
                          "--pg", "6", "--q", "1"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "32"
