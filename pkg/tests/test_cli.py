import json
import subprocess
import sys

import pytest

from helpers import DATA
from sl2casson import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_seifert_json(capsys):
    code, out, _ = run(capsys, "seifert", "--m", "3", "--n", "7")
    assert code == 0
    r = json.loads(out)
    assert r["rep_count"] == 1 and r["lambda"] == -1 and r["grading"] == "cs24"
    assert sum(t["coeff"] for t in r["graded"]) == -1


def test_seifert_rep_count_and_torsion_grading(capsys):
    code, out, _ = run(capsys, "seifert", "--m", "5", "--n", "11", "--grading", "torsion")
    r = json.loads(out)
    assert code == 0 and r["rep_count"] == 4 and r["lambda"] == -4


def test_seifert_rejects_even_parameter(capsys):
    code, out, err = run(capsys, "seifert", "--m", "4", "--n", "7")
    assert code == 1 and out == "" and "error" in err


def test_seifert_dump_manifold(capsys, tmp_path):
    path = tmp_path / "m.json"
    run(capsys, "seifert", "--m", "3", "--n", "7", "--grading", "none", "--dump-manifold", str(path))
    assert json.loads(path.read_text())["generators"] == 2


def test_brieskorn_count(capsys):
    code, out, _ = run(capsys, "brieskorn", "--m", "3", "--p", "4", "--q", "5")
    r = json.loads(out)
    assert code == 0 and r["count"] == 2 and r["generators"] == 3 and "rep" not in r


def test_brieskorn_invalid_spec(capsys):
    code, _, err = run(capsys, "brieskorn", "--m", "3", "--p", "6", "--q", "7")
    assert code == 1 and "error" in err


def test_brieskorn_with_rep(capsys):
    code, out, _ = run(capsys, "brieskorn", "--m", "3", "--p", "4", "--q", "5",
                       "--rep", str(DATA / "sigma_3_4_5_rep.json"))
    rep = json.loads(out)["rep"]
    assert code == 0 and rep["transversal"] and rep["zariski_dense"]
    assert rep["sign"] in (-1, 1) and rep["epsilon"] == -rep["sign"]
    assert 0 <= rep["cs24"] < 1


def test_brieskorn_bad_rep_names_relator(capsys, tmp_path):
    gens = json.loads((DATA / "sigma_3_4_5_rep.json").read_text())["gens"]
    gens[1] = [[1.0, 1.0], [0.0, 1.0]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"gens": gens}))
    code, out, err = run(capsys, "brieskorn", "--m", "3", "--p", "4", "--q", "5", "--rep", str(path))
    assert code == 1 and out == "" and "relator r" in err


def test_brieskorn_missing_rep_file(capsys, tmp_path):
    code, _, err = run(capsys, "brieskorn", "--m", "3", "--p", "4", "--q", "5", "--rep", str(tmp_path / "no"))
    assert code == 1 and "cannot read" in err


@pytest.mark.parametrize("complex_,want", [
    ({"dims": [1, 1], "coboundaries": [[[2]]]}, 2),
    ({"dims": [2, 2], "coboundaries": [[[1, 0], [0, 1]]]}, 1),
    ({"dims": [1, 1], "coboundaries": [[["1/3"]]]}, "1/3"),
])
def test_torsion_exact(capsys, tmp_path, complex_, want):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(complex_))
    code, out, _ = run(capsys, "torsion", "--complex", str(path))
    r = json.loads(out)
    assert code == 0 and r["torsion"] == want and r["backend"] == "exact"


def test_torsion_float_and_non_acyclic(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"dims": [1, 1], "coboundaries": [[[0.5]]]}))
    code, out, _ = run(capsys, "torsion", "--complex", str(path))
    assert code == 0 and json.loads(out)["torsion"] == pytest.approx(0.5)
    path.write_text(json.dumps({"dims": [1, 1], "coboundaries": [[[0]]]}))
    code, _, err = run(capsys, "torsion", "--complex", str(path))
    assert code == 1 and "not acyclic" in err


def test_check_cocycle(capsys):
    code, out, _ = run(capsys, "check", "--suite", "cocycle", "--seed", "1")
    r = json.loads(out)
    assert code == 0 and r["passed"] == r["total"] == 1000


def test_check_is_deterministic(capsys):
    outs = [run(capsys, "check", "--suite", "milnor", "--seed", "3", "--trials", "20")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_table_format(capsys):
    code, out, _ = run(capsys, "seifert", "--m", "3", "--n", "7", "--format", "table")
    assert code == 0 and "lambda: -1" in out and "per_rep:" in out


def test_output_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "check", "--suite", "fox", "--seed", "0", "-o", str(path))
    assert code == 0 and out == "" and json.loads(path.read_text())["ok"]


def test_eps_environment_variable(monkeypatch):
    monkeypatch.setenv(cli.EPS_ENV, "1e-5")
    args = cli.build_parser().parse_args(["check", "--suite", "fox"])
    assert args.eps == 1e-5


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sl2casson.cli", "check", "--suite", "fox", "--trials", "5"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and json.loads(proc.stdout)["ok"]
