import json

import pytest

from pcx.cli import main
from pcx.scenarios import builtin_names


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


I4 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
FREE_S = [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]


def test_scenario_run_single(capsys):
    code, out, _ = run(capsys, "scenario", "run", "harmonic_oscillator_2d")
    assert code == 0
    assert out == {"passed": True, "scenarios": [{"name": "harmonic_oscillator_2d", "passed": True}]}


def test_scenario_run_all_and_list(capsys):
    code, out, _ = run(capsys, "scenario", "run", "--all", "--jobs", "2")
    assert code == 0 and out["passed"]
    assert [s["name"] for s in out["scenarios"]] == builtin_names()
    code, out, _ = run(capsys, "scenario", "list")
    assert code == 0 and out["scenarios"] == builtin_names()


def test_scenario_run_failure_exits_one(capsys, tmp_path):
    from pcx.scenarios import builtin_path
    d = json.loads(builtin_path("free_particle").read_text())
    d["expected"]["canonoid_A"]["is_canonical"] = True
    code, out, _ = run(capsys, "scenario", "run", write(tmp_path, "fp.json", d))
    assert code == 1 and not out["passed"]
    assert out["scenarios"][0]["diffs"][0]["key"] == "is_canonical"


def test_canonoid_identity(capsys, tmp_path):
    S = write(tmp_path, "S.json", I4)
    A = write(tmp_path, "A.json", I4)
    code, out, _ = run(capsys, "canonoid", "--S", S, "--A", A)
    assert code == 0
    assert out["is_canonoid"] and out["is_canonical"]
    assert out["omega2"] == [["0", "0", "1", "0"], ["0", "0", "0", "1"], ["-1", "0", "0", "0"], ["0", "-1", "0", "0"]]
    assert out["K"] == "1/2*Q1^2 + 1/2*Q2^2 + 1/2*P1^2 + 1/2*P2^2"


def test_canonoid_failure_exits_one(capsys, tmp_path):
    S = write(tmp_path, "S.json", FREE_S)
    A = write(tmp_path, "A.json", [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    code, out, _ = run(capsys, "canonoid", "--S", S, "--A", A)
    assert code == 1 and out["is_canonoid"] is False and out["K"] is None


def test_canonoid_singular_matrix_is_usage_error(capsys, tmp_path):
    S = write(tmp_path, "S.json", I4)
    A = write(tmp_path, "A.json", [[0] * 4] * 4)
    code, out, err = run(capsys, "canonoid", "--S", S, "--A", A)
    assert code == 2 and out is None and err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "canonoid", "--S", str(tmp_path / "none.json"), "--A", "x")
    assert code == 2 and "no such file" in err


def test_gamma_space(capsys, tmp_path):
    code, out, _ = run(capsys, "gamma-space", "--S", write(tmp_path, "S.json", I4))
    assert code == 0 and out["dimension"] == len(out["basis"]) > 0


def test_casimir_euler(capsys):
    code, out, _ = run(capsys, "casimir", "--scenario", "euler_so3.json", "--degree", "2")
    assert code == 0
    assert len(out["basis"]) == 1


def test_schouten_of_scenario_structure(capsys):
    code, out, _ = run(capsys, "schouten", "--scenario", "clebsch_kirchhoff")
    assert code == 0 and out["zero"]


def test_hamiltonize_default_field(capsys):
    code, out, _ = run(capsys, "hamiltonize", "--scenario", "euler_so3", "--degree", "2")
    assert code == 0 and out["status"] == "unique_up_to_kernel"
    assert out["kernel_basis"] == ["m1^2 + m2^2 + m3^2"]


def test_poissonoid_check(capsys):
    code, out, _ = run(capsys, "poissonoid", "check", "--scenario", "euler_so3", "--transform", "rescaling")
    assert code == 0 and out["poissonoid"] and out["bihamiltonian"]
    code, _, err = run(capsys, "poissonoid", "check", "--scenario", "euler_so3", "--transform", "nope")
    assert code == 2 and "nope" in err


def test_kirchhoff(capsys):
    code, out, _ = run(capsys, "kirchhoff", "--omega", "6,2,1", "--eps", "1", "--a", "1")
    assert code == 0 and out["passed"]
    code, _, err = run(capsys, "kirchhoff", "--omega", "5,2,1", "--eps", "1", "--a", "1")
    assert code == 2 and err


def test_whittaker(capsys, tmp_path):
    theta = write(tmp_path, "theta.json", ["-1*p1 + q2", "q2", "q1 + p2", "p2"])
    code, out, _ = run(capsys, "whittaker", "--scenario", "harmonic_oscillator_2d", "--theta", theta)
    assert code == 0 and out["absolute"]


def test_symmetry(capsys, tmp_path):
    xi = write(tmp_path, "xi.json", ["q1", "0", "0", "0"])
    code, out, _ = run(capsys, "symmetry", "--scenario", "free_particle", "--xi", xi)
    assert code == 0 and out["degree"] == 1


def test_master_gen(capsys):
    code, out, _ = run(capsys, "master-gen", "--scenario", "free_particle", "--T", "q1")
    assert code == 0
    assert out == {"constants_degree": 1, "hamiltonian_degree": 1, "iterates": ["q1", "p1", "0"]}


def test_integrate(capsys, tmp_path):
    csv = tmp_path / "traj.csv"
    code, out, _ = run(capsys, "integrate", "--scenario", "euler_so3", "--x0", "1,1/10,1/10",
                       "--t-end", "1", "--step", "0.01", "--tolerance", "1e-9", "--csv", str(csv))
    assert code == 0 and out["steps"] == 100
    assert csv.read_text().startswith("t,m1,m2,m3")


def test_integrate_usage_errors(capsys):
    code, _, _ = run(capsys, "integrate", "--scenario", "euler_so3", "--x0", "1,0,0", "--t-end", "1", "--step", "0")
    assert code == 2
    code, _, _ = run(capsys, "integrate", "--scenario", "euler_so3", "--x0", "1,0", "--t-end", "1", "--step", "0.1")
    assert code == 2


@pytest.mark.parametrize("argv", [[], ["bogus"], ["casimir"], ["casimir", "--scenario", "euler_so3", "--degree", "0"]])
def test_usage_errors(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 2 and out is None
