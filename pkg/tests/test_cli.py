import json
import subprocess
import sys

import pytest

from catgsb import __version__
from catgsb.cli import main
from conftest import FREE_ASSOC


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_nf_examples(capsys):
    assert run(capsys, "nf", "builtin:simplicial", "--max-dim", "3", "H(0,0).E(1,0)")[:2] == (0, "id([0])")
    assert run(capsys, "nf", "builtin:cyclic-sc", "--max-dim", "3", "T(1).E(1,0)")[:2] == (0, "E(1,1)")
    assert run(capsys, "nf", "builtin:simplicial", "--max-dim", "3", "E(2,2).E(1,0)")[1] == "E(2,2).E(1,0)"


def test_nf_trace_json(capsys):
    code, out, _ = run(capsys, "nf", "--presentation", "builtin:simplicial", "--max-dim", "3",
                       "--trace", "--format", "json", "E(2,0).E(1,1)")
    data = json.loads(out)
    assert code == 0 and data["normal_form"] == "E(2,2).E(1,0)"
    assert data["trace"]["steps"][0]["s"].startswith("f[")


@pytest.mark.parametrize("src,a,b,n", [
    ("builtin:simplicial", "1", "1", 3),
    ("builtin:cyclic-sc", "1", "1", 6),
    ("builtin:simplicial", "0", "0", 1),
    ("builtin:cyclic-sc", "0", "0", 1),
    ("builtin:simplicial", "2", "1", 4),
])
def test_count(capsys, src, a, b, n):
    assert run(capsys, "count", src, "--max-dim", "4", "--from", a, "--to", b)[:2] == (0, str(n))


def test_irr_listing(capsys):
    code, out, _ = run(capsys, "irr", "builtin:simplicial", "--max-dim", "3", "--from", "[1]", "--to", "[1]")
    assert code == 0 and out.splitlines() == ["id([1])", "E(1,0).H(0,0)", "E(1,1).H(0,0)"]


def test_irr_out_of_range(capsys):
    code, _, err = run(capsys, "irr", "builtin:simplicial", "--max-dim", "2", "--from", "5", "--to", "1")
    assert code == 2 and "error" in err


def test_check_exit_codes(capsys):
    assert run(capsys, "check", "--presentation", "builtin:simplicial", "--max-dim", "5")[0] == 0
    code, out, _ = run(capsys, "check", "--presentation", "builtin:cyclic", "--max-dim", "4",
                       "--format", "json")
    data = json.loads(out)
    assert code == 1 and not data["ok"]
    fams = {(f["f"].split("[")[0], f["g"].split("[")[0]) for f in data["failures"]}
    assert {("rho3", "rho1"), ("rho3", "rho2")} <= fams
    assert data["version"] == __version__ and data["config"]["max_dim"] == 4


def test_check_syntax_error(capsys, tmp_path):
    bad = tmp_path / "bad.pres"
    bad.write_text("vertex v\nedge x v -> v\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and "line 2" in err


def test_check_file(capsys, tmp_path):
    f = tmp_path / "free.pres"
    f.write_text(FREE_ASSOC)
    assert run(capsys, "check", str(f))[0] == 0
    code, out, _ = run(capsys, "complete", str(f), "--format", "json")
    assert code == 0 and json.loads(out)["adjoined"] == 0


def test_order_override(capsys, tmp_path):
    f = tmp_path / "free.pres"
    f.write_text(FREE_ASSOC)
    # the file ranks y first; the override ranks by declaration, x first
    assert run(capsys, "nf", str(f), "y.x")[1] == "x.y"
    assert run(capsys, "nf", str(f), "y.x", "--order", "deglex")[1] == "y.x"


def test_complete_cyclic(capsys):
    code, out, _ = run(capsys, "complete", "builtin:cyclic", "--max-dim", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["converged"] and data["adjoined"] > 0
    assert any("T(1).E(1,0) - E(1,1)" in line for line in data["basis"])


def test_complete_step_limit(capsys):
    assert run(capsys, "complete", "builtin:cyclic", "--max-dim", "3", "--max-steps", "1")[0] == 1


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "simplicial", "--max-dim", "3")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "verify", "cyclic", "--max-dim", "3", "--format", "json")
    assert code == 0 and json.loads(out)["ok"]
    assert run(capsys, "verify", "simplicial", "--max-dim", "0")[0] == 2


def test_parse(capsys):
    code, out, _ = run(capsys, "parse", "builtin:simplicial", "--max-dim", "1")
    assert code == 0 and "rel H(0,0).E(1,0) = id([0])" in out
    code, out, _ = run(capsys, "parse", "builtin:cyclic-sc", "--max-dim", "1", "--format", "json")
    assert json.loads(out)["order"] == "cyclic"


@pytest.mark.parametrize("argv", [
    ["check"],
    ["check", "builtin:simplicial"],
    ["check", "builtin:bogus", "--max-dim", "2"],
    ["check", "/nonexistent/file"],
    ["nf", "builtin:simplicial", "--max-dim", "2", "Q(1)"],
    ["nf", "builtin:simplicial", "--max-dim", "2", "H(0,0).H(0,0)"],
    ["nf", "builtin:simplicial", "--max-dim", "2"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:") and out == ""


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "catgsb.cli", "count", "builtin:simplicial",
                          "--max-dim", "2", "--from", "1", "--to", "1"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.strip() == "3"
