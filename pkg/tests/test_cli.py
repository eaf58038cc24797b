import json
import subprocess
import sys

from mindtree.cli import main
from mindtree.formulas import c_max, delta, sigma


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_theta_csv(capsys):
    code, out, _ = run(capsys, "count", "theta", "--n-max", "6")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,s=1,s=2,s=3,s=4,s=5,alpha"
    assert lines[-1] == "6,1,2,2,1,0,6"


def test_theta_d_view_and_isomorphism(capsys):
    code, out, _ = run(capsys, "count", "theta", "--n-max", "8", "--view", "d")
    assert out.splitlines()[-1] == "8,1,0,3,6,7,6,1,24"
    code, out, _ = run(capsys, "count", "alpha", "--n", "8", "--convention", "isomorphism")
    assert out.splitlines()[-1] == "8,23"


def test_count_other_tables(capsys):
    assert run(capsys, "count", "products", "--n", "4")[1].splitlines()[-1] == "4,15"
    assert run(capsys, "count", "products", "--n", "4", "--s", "1")[1].splitlines()[-1] == "4,1,12"
    out = run(capsys, "count", "dac-products", "--n-max", "4", "--method", "david")[1]
    assert out.splitlines()[-1] == "4,3"
    out = run(capsys, "count", "bounds", "--n", "27", "--format", "json")[1]
    assert json.loads(out) == [
        {"n": 27, "s_min": 1, "s_max": 23, "d_min": 3, "pow2_in_factorial": 23}
    ]


def test_formulas(capsys):
    code, out, _ = run(capsys, "formulas", "delta", "--n", "11", "--method", "midpoint")
    assert code == 0 and out.splitlines()[-1] == "11,5"
    out = run(capsys, "formulas", "normalized", "--n", "7")[1]
    assert out.splitlines()[-1] == "7,7,5/13"
    out = run(capsys, "formulas", "casc", "--n", "27", "--method", "closed")[1]
    assert out.splitlines()[-1] == "27,55"


def test_domain_errors_exit_1(capsys):
    code, _, err = run(capsys, "formulas", "delta", "--n", "64", "--method", "midpoint")
    assert code == 1 and err
    assert run(capsys, "formulas", "normalized", "--n", "3")[0] == 1
    assert run(capsys, "construct", "ladder", "--n", "0")[0] == 1
    assert run(capsys, "construct", "perfect", "--n", "6")[0] == 1
    assert run(capsys, "enumerate", "--n", "255")[0] == 1


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "construct", "star", "--n", "3")[0] == 2
    assert run(capsys, "--threads", "0", "sweep", "--n-max", "3")[0] == 2
    assert run(capsys, "sum")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_construct_formats(capsys):
    assert run(capsys, "construct", "ladder", "--n", "3")[1] == "((,),);\n"
    out = run(capsys, "construct", "cfb", "--n", "6", "--format", "text")[1]
    assert out.startswith("leaves=6 s=4 d=1 colless=2")
    out = run(capsys, "construct", "mind", "--n", "27", "--order", "asc", "--format", "text")[1]
    assert "colless=55" in out
    assert "digraph" in run(capsys, "construct", "perfect", "--k", "2", "--format", "dot")[1]
    doc = json.loads(run(capsys, "construct", "dac", "--n", "5", "--format", "json")[1])
    assert doc["leaves"] == 5


def test_sweep_invariants(capsys):
    code, out, _ = run(capsys, "sweep", "--n-max", "64")
    rows = [line.split(",") for line in out.splitlines()]
    assert rows[0] == ["n", "sigma", "delta", "delta_cfb", "c_desc", "c_asc", "c_max", "normalized_c_asc"]
    assert len(rows) == 65
    for row in rows[1:]:
        n, s, d, _, lo, hi, top = (int(x) for x in row[:7])
        assert s == sigma(n) and d == delta(n) and s + d == n - 1
        assert d <= lo <= hi <= top == c_max(n)
        assert (row[7] == "") == (n < 4)


def test_takagi_rows(capsys):
    out = run(capsys, "takagi", "--k", "3", "--method", "weighted")[1]
    lines = out.splitlines()
    assert len(lines) == 2**3 + 2
    assert lines[4] == "3,3/8,5/8"
    assert lines[-1] == "8,1,0"


def test_enumerate(capsys):
    out = run(capsys, "enumerate", "--n", "27", "--format", "csv")[1]
    assert len(out.splitlines()) == 16
    doc = json.loads(run(capsys, "enumerate", "--n", "7", "--format", "json")[1])
    assert len(doc) == 3


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "all", "--n-max", "8")
    doc = json.loads(out)
    assert code == 0 and doc["pass"] and len(doc["reports"]) == 32
    code, out, _ = run(capsys, "verify", "theta", "--n", "9", "--format", "text")
    assert code == 0 and out.strip().endswith("pass")
    assert run(capsys, "verify", "mind", "--n", "40")[0] == 1


def test_sum_commands(tmp_path, capsys):
    path = tmp_path / "values.txt"
    path.write_text("0x1p53\n" + "1.0\n" * 8)
    code, out, _ = run(capsys, "sum", "eval", "--input", str(path), "--format", "text")
    assert code == 0 and out.startswith("0x1.0000000000004p+53")
    doc = json.loads(run(capsys, "sum", "report", "--input", str(path), "--plan", "ladder", "--format", "json")[1])
    assert doc["abs_error"] == "8" and doc["ulp_distance"] == 4
    out = run(capsys, "sum", "plan", "--input", str(path), "--format", "newick")[1]
    assert out.count("v") == 9 and out.endswith(";\n")
    path.write_text("1\nnan\n")
    assert run(capsys, "sum", "eval", "--input", str(path))[0] == 1
    assert run(capsys, "sum", "eval", "--input", str(tmp_path / "missing"))[0] == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mindtree", "--threads", "2", "formulas", "sigma", "--n", "16"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "16,15"
