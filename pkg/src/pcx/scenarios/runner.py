"""Execute a scenario's declared checks and diff the results against its `expected` block."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..canonoid import (
    check_canonoid,
    gamma_nullspace,
    gamma_of,
    in_span,
    omega2,
    rescaling_check,
    transformed_hamiltonian,
)
from ..dynamics import drift_report, integrate
from ..matrix import RationalMatrix
from ..poissonoid import (
    casimirs,
    check_poissonoid_linear,
    compatible,
    constant_of_motion_check,
    hamiltonize,
    is_poisson,
    kirchhoff_certificate,
    poisson_vf_check,
    relabel,
    same_span,
)
from ..polyalg import Polynomial, format_rational, to_rational
from ..systems import block_params_matrix
from ..symmetry import (
    beta_sharp_master_check,
    infinitesimal_poissonoid_solve,
    master_generator_check,
    master_symmetry_degree,
)
from ..tensorcalc import (
    Bivector,
    Chart,
    KForm,
    VectorField,
    d,
    ham_vf,
    interior,
    lie_bivector,
    lie_bracket,
    pullback_function,
)
from ..whittaker import generator_check, integrability_probe
from .loader import Scenario


class Predicate:
    """A result that is compared by testing the expected value, not by equality."""

    def __init__(self, fn: Callable, shown):
        self.fn = fn
        self.shown = shown

    def __call__(self, expected) -> bool:
        return bool(self.fn(expected))


def jsonable(v):
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, Polynomial):
        return str(v)
    if isinstance(v, RationalMatrix):
        return v.to_json()
    if isinstance(v, (Bivector, VectorField, KForm)):
        return v.to_json()
    if isinstance(v, Predicate):
        return jsonable(v.shown)
    if isinstance(v, dict):
        return {k: jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _same(actual, expected) -> bool:
    if isinstance(actual, Predicate):
        return actual(expected)
    if isinstance(actual, bool) or actual is None:
        return type(expected) is type(actual) and actual == expected
    if isinstance(actual, int):
        return type(expected) is int and actual == expected
    if isinstance(actual, float):
        return isinstance(expected, (int, float)) and actual == expected
    if isinstance(actual, Fraction):
        try:
            return to_rational(expected) == actual
        except (ValueError, TypeError):
            return False
    if isinstance(actual, Polynomial):
        try:
            return isinstance(expected, str) and Polynomial.parse(expected, actual.chart) == actual
        except ValueError:
            return False
    if isinstance(actual, RationalMatrix):
        try:
            return RationalMatrix.from_json(expected) == actual
        except (ValueError, TypeError):
            return False
    if isinstance(actual, Bivector):
        try:
            return Bivector.from_json(actual.chart, expected) == actual
        except (ValueError, TypeError):
            return False
    if isinstance(actual, VectorField):
        try:
            return VectorField.from_json(actual.chart, expected) == actual
        except (ValueError, TypeError):
            return False
    if isinstance(actual, dict):
        return isinstance(expected, dict) and expected.keys() <= actual.keys() and all(
            _same(actual[k], expected[k]) for k in expected
        )
    if isinstance(actual, (list, tuple)):
        return isinstance(expected, list) and len(expected) == len(actual) and all(
            _same(a, e) for a, e in zip(actual, expected)
        )
    return actual == expected


# helpers over scenario data

def _matrix_arg(s: Scenario, ref):
    if isinstance(ref, str):
        return s.transforms[ref]
    return RationalMatrix.from_json(ref)


def _chart_arg(args, key, default: Chart) -> Chart:
    return Chart(args[key]) if key in args else default


def _field(s: Scenario) -> VectorField:
    return ham_vf(s.structure, s.hamiltonian)


def _polys(chart: Chart, texts) -> list:
    return [chart.poly(t) for t in texts]


def _contains(result, chart: Chart, shown):
    return Predicate(lambda exp: all(result.contains(chart.poly(p)) for p in exp), shown)


# check implementations: (scenario, args) -> dict of results

def _canonoid(s: Scenario, args) -> dict:
    A = _matrix_arg(s, args["transform"])
    S = RationalMatrix.from_json(args["S"]) if "S" in args else s.S
    v = check_canonoid(A, S)
    out = {
        "is_canonoid": v.is_canonoid,
        "is_canonical": v.is_canonical,
        "gamma": v.gamma,
        "C": v.C,
        "scale_a": v.scale_a,
        "omega2": omega2(A, s.chart.names).constant_matrix(),
    }
    if v.is_canonoid:
        target = args.get("target_chart")
        t = transformed_hamiltonian(A, S, s.chart.names, target)
        X = _field(s)
        out.update(
            K=t.K,
            H2=t.H2,
            conserved=constant_of_motion_check(s.structure, s.hamiltonian, t.H2),
            bihamiltonian=interior(X, omega2(A, s.chart.names)) == d(t.H2),
        )
    return out


def _gamma_space(s: Scenario, args) -> dict:
    S = RationalMatrix.from_json(args["S"]) if "S" in args else s.S
    basis = gamma_nullspace(S)
    members = [gamma_of(_matrix_arg(s, m)) if isinstance(m, str) else RationalMatrix.from_json(m)
               for m in args.get("members", [])]
    canonoid_flags = [check_canonoid(s.transforms[m], S).is_canonoid
                      for m in args.get("members", []) if isinstance(m, str)]
    member_flags = [in_span(M, basis) for M in members]
    named = [f for m, f in zip(args.get("members", []), member_flags) if isinstance(m, str)]
    return {
        "dimension": len(basis),
        "basis": basis,
        "members_in_span": member_flags,
        "criterion_agrees": canonoid_flags == named,
    }


def _rescaling(s: Scenario, args) -> dict:
    S = RationalMatrix.from_json(args["S"]) if "S" in args else s.S
    return {"canonoid": rescaling_check(args["a"], args["b"], S)}


def _identity(s: Scenario, args) -> dict:
    names = list(s.invariants())
    expr = Polynomial.parse(args["expr"], names)
    value = expr.substitute([s.invariants()[n] for n in names])
    return {"value": value}


def _form_certificate(s: Scenario, args) -> dict:
    form = KForm.from_matrix(s.chart, RationalMatrix.from_json(args["matrix"]))
    W = s.invariants()[args["integral"]]
    return {"holds": interior(_field(s), form) == d(W)}


def _noether(s: Scenario, args) -> dict:
    deg = args.get("degree")
    out = {}
    for name, F in s.integrals.items():
        XF = ham_vf(s.structure, F)
        preserves = lie_bivector(XF, s.structure).is_zero()
        conserved = XF.apply(s.hamiltonian).is_zero()
        res = hamiltonize(s.structure, XF, deg if deg is not None else max(F.degree(), 1))
        out[name] = preserves and conserved and res.contains(F)
    return out


def _poissonoid(s: Scenario, args) -> dict:
    A = _matrix_arg(s, args["transform"])
    target = _chart_arg(args, "target_chart", s.chart)
    deg = args.get("degree")
    r = check_poissonoid_linear(s.structure, A, s.hamiltonian, deg, target)
    pulled_solutions = hamiltonize(r.pulled_bivector, _field(s), deg)
    return {
        "poissonoid": r.poissonoid,
        "weakly_poissonoid": r.weakly_poissonoid,
        "compatible": r.compatible,
        "bihamiltonian": r.bihamiltonian,
        "certificate": r.certificate,
        "pushed_field": r.pushed_field,
        "pulled_bivector": r.pulled_bivector,
        "pulled_K": r.pulled_K,
        "solution_contains": _contains(pulled_solutions, s.chart, r.pulled_K),
        "target_solution_contains": _contains(r.hamiltonize, target, r.hamiltonize.K),
    }


def _preservation(s: Scenario, args) -> dict:
    """F conserved by (pi, K) in the target chart iff F o f conserved by (pi, H)."""
    A = _matrix_arg(s, args["transform"])
    target = _chart_arg(args, "target_chart", s.chart)
    r = check_poissonoid_linear(s.structure, A, s.hamiltonian, args.get("degree"), target)
    if not r.poissonoid:
        return {"poissonoid": False}
    pi_t = relabel(s.structure, target)
    K = r.hamiltonize.K
    pairs = {}
    for name, F in s.integrals.items():
        Ft = F.rename(target.names)
        pairs[name] = [
            constant_of_motion_check(pi_t, K, Ft),
            constant_of_motion_check(s.structure, s.hamiltonian, pullback_function(A, Ft, s.chart.names)),
        ]
    return {"poissonoid": True, "pairs": pairs, "agree": all(a == b for a, b in pairs.values())}


def _field_check(s: Scenario, args) -> dict:
    return {"field": _field(s)}


def _casimirs(s: Scenario, args) -> dict:
    basis = casimirs(s.structure, args.get("degree")).basis
    return {
        "size": len(basis),
        "basis": list(basis),
        "span": Predicate(lambda exp: same_span(basis, _polys(s.chart, exp)), list(basis)),
    }


def _compat(s: Scenario, args) -> dict:
    other = Bivector.from_json(s.chart, args["other"])
    ok = is_poisson(other)
    return {"other_is_poisson": ok, "compatible": compatible(s.structure, other) if ok else False}


def _hamiltonize(s: Scenario, args) -> dict:
    pi = Bivector.from_json(s.chart, args["bivector"]) if "bivector" in args else s.structure
    X = VectorField.from_json(s.chart, args["field"]) if "field" in args else _field(s)
    r = hamiltonize(pi, X, args.get("degree"))
    return {
        "feasible": r.feasible,
        "K": r.K,
        "kernel_dimension": len(r.kernel_basis),
        "contains": _contains(r, s.chart, r.K),
    }


def _kirchhoff(s: Scenario, args) -> dict:
    r = kirchhoff_certificate(args["omega"], args["eps"], args["a"])
    return {
        "passed": r.passed,
        "determinant": r.determinant,
        "matrix": r.matrix,
        "eta_is_poisson": r.eta_is_poisson,
        "compatible": r.compatible,
        "eta_hamiltonian": r.eta_hamiltonian,
        "pullback_matches": r.pullback_matches,
        "C1_in_F_matches": r.C1_in_F_matches,
        "constants": dict(r.constants),
    }


def _whittaker(s: Scenario, args) -> dict:
    theta = KForm.one_form(s.chart, _polys(s.chart, args["theta"]))
    X = _field(s)
    r = generator_check(X, theta)
    return {
        "absolute": r.absolute,
        "relative": r.relative,
        "K": r.K,
        "dTheta": r.dTheta.matrix(),
        "nondegenerate": r.nondegenerate,
        "is_identity_shift": r.is_identity_shift,
        "certificate": r.certificate,
        "residuals": integrability_probe(X, theta),
        "first_integral": constant_of_motion_check(s.structure, s.hamiltonian, r.K),
    }


def _master_symmetry(s: Scenario, args) -> dict:
    xi = VectorField.from_json(s.chart, args["xi"])
    v = master_symmetry_degree(_field(s), xi, args.get("max_m", 6))
    return {"degree": v.degree, "iterates": list(v.iterates)}


def _master_generator(s: Scenario, args) -> dict:
    v = master_generator_check(s.structure, _field(s), s.chart.poly(args["T"]), args.get("m", 6))
    return {"constants_degree": v.constants_degree, "hamiltonian_degree": v.hamiltonian_degree}


def _beta_sharp(s: Scenario, args) -> dict:
    beta = KForm.one_form(s.chart, _polys(s.chart, args["beta"]))
    v = beta_sharp_master_check(s.structure, _field(s), beta, args.get("m", 6))
    return {
        "symmetry_degree": v.symmetry.degree,
        "generator_degree": v.generator.hamiltonian_degree,
        "equivalent": v.equivalent,
        "degrees_match": v.degrees_match,
        "x_preserves_pi": v.x_preserves_pi,
    }


def _infinitesimal(s: Scenario, args) -> dict:
    xi = VectorField.from_json(s.chart, args["xi"])
    r = infinitesimal_poissonoid_solve(s.structure, _field(s), xi, args.get("degree"))
    return {"feasible": r.feasible, "F": r.K, "contains": _contains(r, s.chart, r.K)}


def _poisson_field(s: Scenario, args) -> dict:
    xi = VectorField.from_json(s.chart, args["xi"])
    return {"poisson": poisson_vf_check(s.structure, xi)}


def _symmetry_implication(s: Scenario, args) -> dict:
    xi = VectorField.from_json(s.chart, args["xi"])
    preserves_pi = lie_bivector(xi, s.structure).is_zero()
    preserves_H = xi.apply(s.hamiltonian).is_zero()
    commutes = lie_bracket(xi, _field(s)).is_zero()
    return {
        "preserves_pi": preserves_pi,
        "preserves_H": preserves_H,
        "commutes": commutes,
        "implication_holds": commutes or not (preserves_pi and preserves_H),
    }


def _constraints(s: Scenario, args) -> dict:
    names = list(args["chart"])
    values = [Polynomial.parse(r, names).eval(s.params) for r in args["residuals"]]
    out = {"values": values, "all_zero": not any(values)}
    if "matrix_from_params" in args:
        A = s.transforms[args["matrix_from_params"]]
        out["matrix_matches"] = block_params_matrix(s.params) == A
        out["determinant"] = A.det()
    return out


def _dynamics(s: Scenario, args) -> dict:
    x0 = [float(to_rational(v)) for v in args["x0"]]
    t_end, h = (float(to_rational(args[k])) for k in ("t_end", "h"))
    traj = integrate(s.structure, s.hamiltonian, x0, t_end, h)
    wanted = args.get("invariants", "all")
    inv = s.invariants() if wanted == "all" else {k: s.invariants()[k] for k in wanted}
    rep = drift_report(traj, inv)
    tol = float(args["tolerance"])
    return {
        "max_drift": rep.max(),
        "drifts": {dr.name: dr.max_drift for dr in rep.drifts},
        "within_tolerance": rep.max() < tol,
        "steps": len(traj.times) - 1,
    }


CHECKS: dict[str, Callable[[Scenario, dict], dict]] = {
    "beta_sharp": _beta_sharp,
    "canonoid": _canonoid,
    "casimirs": _casimirs,
    "compat": _compat,
    "constraints": _constraints,
    "dynamics": _dynamics,
    "field": _field_check,
    "form_certificate": _form_certificate,
    "gamma_space": _gamma_space,
    "hamiltonize": _hamiltonize,
    "identity": _identity,
    "infinitesimal_poissonoid": _infinitesimal,
    "kirchhoff": _kirchhoff,
    "master_generator": _master_generator,
    "master_symmetry": _master_symmetry,
    "noether": _noether,
    "poisson_field": _poisson_field,
    "poissonoid": _poissonoid,
    "preservation": _preservation,
    "rescaling": _rescaling,
    "symmetry_implication": _symmetry_implication,
    "whittaker": _whittaker,
}


@dataclass(frozen=True)
class ScenarioReport:
    name: str
    results: dict
    diffs: tuple

    @property
    def passed(self) -> bool:
        return not self.diffs

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "diffs": list(self.diffs),
            "results": {k: jsonable(v) for k, v in self.results.items()},
        }


def run_check(s: Scenario, check: dict) -> dict:
    args = {k: v for k, v in check.items() if k not in ("id", "kind")}
    return CHECKS[check["kind"]](s, args)


def run_scenario(s: Scenario) -> ScenarioReport:
    results, diffs = {}, []
    for check in s.checks:
        cid = check["id"]
        try:
            actual = run_check(s, check)
        except Exception as exc:  # a failing computation is a mathematical failure of this check
            diffs.append({"check": cid, "key": None, "error": f"{type(exc).__name__}: {exc}"})
            results[cid] = {"error": str(exc)}
            continue
        results[cid] = actual
        expected = s.expected.get(cid)
        if expected is None:
            diffs.append({"check": cid, "key": None, "error": "no expected entry"})
            continue
        for key, exp in expected.items():
            if key not in actual:
                diffs.append({"check": cid, "key": key, "expected": exp, "actual": None, "error": "missing result"})
            elif not _same(actual[key], exp):
                diffs.append({"check": cid, "key": key, "expected": exp, "actual": jsonable(actual[key])})
    return ScenarioReport(s.name, results, tuple(diffs))
