import copy
import json

import pytest

from pcx.canonoid import check_canonoid
from pcx.poissonoid import check_poissonoid_linear, constant_of_motion_check, hamiltonize, relabel
from pcx.scenarios import (
    CHECK_KINDS,
    ScenarioError,
    builtin_names,
    builtin_path,
    load_scenario,
    parse_scenario,
    run_scenario,
)
from pcx.scenarios.builders import BUILDERS
from pcx.tensorcalc import Chart, ham_vf, lie_bivector, pullback_function

NAMES = builtin_names()


def raw(name):
    return json.loads(builtin_path(name).read_text())


def test_builtins_present():
    assert set(NAMES) == set(BUILDERS)
    assert len(NAMES) == 8


@pytest.mark.parametrize("name", NAMES)
def test_data_files_match_builders(name):
    assert raw(name) == json.loads(json.dumps(BUILDERS[name]()))


@pytest.mark.parametrize("name", NAMES)
def test_builtin_scenario_passes(name):
    rep = run_scenario(load_scenario(name))
    assert rep.passed, rep.diffs


def test_every_check_kind_is_exercised():
    kinds = {c["kind"] for n in NAMES for c in raw(n)["checks"]}
    assert kinds == set(CHECK_KINDS)


def test_oscillator_scenario_contents():
    s = load_scenario("harmonic_oscillator_2d")
    assert s.chart.names == ("q1", "q2", "p1", "p2")
    assert s.S == s.S.identity(4)
    assert set(s.integrals) == {"W1", "W2", "W3", "W4"}


def test_load_by_file_name_and_path():
    a = load_scenario("euler_so3.json")
    b = load_scenario(str(builtin_path("euler_so3")))
    assert a == b
    assert a.params == {"I1": 1, "I2": 4, "I3": 9}


def test_missing_scenario():
    with pytest.raises(ScenarioError):
        load_scenario("no_such_system")


def test_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ScenarioError):
        load_scenario(str(p))


@pytest.mark.parametrize("mutate,item", [
    (lambda d: d.pop("hamiltonian"), "<root>"),
    (lambda d: d.update(schema=2), "schema"),
    (lambda d: d["structure"].update(kind="metric"), "structure/kind"),
    (lambda d: d.update(extra=1), "<root>"),
])
def test_schema_violations(mutate, item):
    d = raw("euler_so3")
    mutate(d)
    with pytest.raises(ScenarioError) as info:
        parse_scenario(d)
    assert info.value.item == item


def test_non_poisson_structure_named():
    d = raw("euler_so3")
    d["structure"]["data"][0][1] = "m1"
    d["structure"]["data"][1][0] = "-1*m1"
    with pytest.raises(ScenarioError) as info:
        parse_scenario(d)
    assert info.value.item == "structure"


def test_fake_integral_named():
    d = raw("harmonic_oscillator_2d")
    d["integrals"].append({"name": "Q", "poly": "q1^2"})
    with pytest.raises(ScenarioError) as info:
        parse_scenario(d)
    assert info.value.item == "integrals/Q"


def test_singular_transform_named():
    d = raw("free_particle")
    d["transforms"][0]["matrix"] = [["0"] * 4] * 4
    with pytest.raises(ScenarioError) as info:
        parse_scenario(d)
    assert info.value.item == "transforms/A"


def test_unknown_variable_named():
    d = raw("free_particle")
    d["hamiltonian"] = "x^2"
    with pytest.raises(ScenarioError) as info:
        parse_scenario(d)
    assert info.value.item == "hamiltonian"


def test_orphan_expected_entry():
    d = raw("free_particle")
    d["expected"]["ghost"] = {"x": 1}
    with pytest.raises(ScenarioError):
        parse_scenario(d)


def test_degenerate_symplectic_matrix():
    d = raw("free_particle")
    d["structure"]["data"] = [["0"] * 4] * 4
    with pytest.raises(ScenarioError):
        parse_scenario(d)


def _flip_first(blob):
    """Negate the first nonzero rational string found in a nested expected value."""
    if isinstance(blob, list):
        for i, v in enumerate(blob):
            if isinstance(v, int) and not isinstance(v, bool) and v != 0:
                blob[i] = -v
                return True
            if isinstance(v, str) and v not in ("0",) and all(ch in "-0123456789/" for ch in v):
                blob[i] = v[1:] if v.startswith("-") else "-" + v
                return True
            if isinstance(v, list) and _flip_first(v):
                return True
    return False


@pytest.mark.parametrize("name,check,key", [
    ("free_particle", "canonoid_A", "C"),
    ("harmonic_oscillator_2d", "canonoid_a", "C"),
    ("harmonic_oscillator_2d", "whittaker_theta", "dTheta"),
    ("clebsch_kirchhoff", "kirchhoff", "matrix"),
])
def test_flipped_sign_fails_with_named_diff(name, check, key):
    d = raw(name)
    assert _flip_first(d["expected"][check][key])
    rep = run_scenario(parse_scenario(d))
    assert not rep.passed
    assert {(x["check"], x["key"]) for x in rep.diffs} == {(check, key)}


def test_flipped_polynomial_sign_fails():
    d = raw("free_particle")
    d["expected"]["canonoid_A"]["H2"] = d["expected"]["canonoid_A"]["H2"].replace(" - ", " + ")
    rep = run_scenario(parse_scenario(d))
    assert [(x["check"], x["key"]) for x in rep.diffs] == [("canonoid_A", "H2")]


def test_flipped_hamiltonian_sign_changes_many_checks():
    d = copy.deepcopy(raw("euler_so3"))
    d["hamiltonian"] = "-1*(" + d["hamiltonian"] + ")"
    rep = run_scenario(parse_scenario(d))
    assert not rep.passed
    assert "field" in {x["check"] for x in rep.diffs}


def test_report_json_is_serialisable():
    rep = run_scenario(load_scenario("free_particle"))
    text = json.dumps(rep.to_json())
    assert '"passed": true' in text


# properties over every scenario

SCENARIOS = {n: load_scenario(n) for n in NAMES}
INTEGRALS = [(n, k) for n, s in SCENARIOS.items() for k in s.integrals]
TRANSFORMS = [(n, k) for n, s in SCENARIOS.items() for k in s.transforms]


@pytest.mark.parametrize("name,integral", INTEGRALS, ids=[f"{a}-{b}" for a, b in INTEGRALS])
def test_noether_round_trip(name, integral):
    s = SCENARIOS[name]
    F = s.integrals[integral]
    XF = ham_vf(s.structure, F)
    assert lie_bivector(XF, s.structure).is_zero()
    assert XF.apply(s.hamiltonian).is_zero()
    assert hamiltonize(s.structure, XF, max(F.degree(), 1)).contains(F)


def _target(n):
    return Chart([f"y{i + 1}" for i in range(n)])


@pytest.mark.parametrize("name,transform", TRANSFORMS, ids=[f"{a}-{b}" for a, b in TRANSFORMS])
def test_preservation_of_constants_of_motion(name, transform):
    s = SCENARIOS[name]
    A = s.transforms[transform]
    target = _target(s.chart.dim)
    r = check_poissonoid_linear(s.structure, A, s.hamiltonian, 2, target)
    if not r.poissonoid:
        pytest.skip("transform is not Poissonoid for this Hamiltonian")
    K = r.hamiltonize.K
    pi_t = relabel(s.structure, target)
    probes = list(s.integrals.values()) + [s.chart.poly(v) for v in s.chart.names]
    for F in probes:
        Ft = F.rename(target.names)
        assert constant_of_motion_check(pi_t, K, Ft) == constant_of_motion_check(
            s.structure, s.hamiltonian, pullback_function(A, Ft, s.chart.names))


@pytest.mark.parametrize("name,transform", TRANSFORMS, ids=[f"{a}-{b}" for a, b in TRANSFORMS])
def test_canonoid_transforms_are_poissonoid(name, transform):
    s = SCENARIOS[name]
    if s.structure_kind != "symplectic_matrix":
        pytest.skip("canonoid test needs the standard structure")
    A = s.transforms[transform]
    canon = check_canonoid(A, s.S).is_canonoid
    r = check_poissonoid_linear(s.structure, A, s.hamiltonian, 2, _target(s.chart.dim))
    assert canon == r.poissonoid
