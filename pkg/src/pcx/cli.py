"""Command-line entry point. JSON on stdout, logs on stderr.

Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 bad input or usage.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .canonoid import check_canonoid, gamma_nullspace, omega2, transformed_hamiltonian
from .dynamics import IntegrationError, drift_report, integrate
from .matrix import MatrixError, RationalMatrix
from .poissonoid import (
    PoissonError,
    casimirs,
    check_poissonoid_linear,
    default_degree,
    hamiltonize,
    is_poisson,
    kirchhoff_certificate,
)
from .polyalg import PolyError, to_rational
from .scenarios import ScenarioError, builtin_names, load_scenario, run_scenario
from .scenarios.runner import jsonable
from .symmetry import SymmetryError, master_generator_check, master_symmetry_degree
from .systems import ParameterError
from .tensorcalc import Bivector, Chart, KForm, TensorError, VectorField, ham_vf, schouten
from .whittaker import generator_check

log = logging.getLogger("pcx")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
INPUT_ERRORS = (
    ScenarioError,
    PolyError,
    MatrixError,
    TensorError,
    PoissonError,
    SymmetryError,
    ParameterError,
    OSError,
    json.JSONDecodeError,
    KeyError,
    ValueError,
)


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    action: Optional[str] = None
    paths: dict = field(default_factory=dict)
    degree: Optional[int] = None
    numbers: dict = field(default_factory=dict)
    names: list = field(default_factory=list)
    output: str = "json"

    def validate(self):
        if self.degree is not None and self.degree < 1:
            raise UsageError("--degree must be at least 1")
        for key, p in self.paths.items():
            if p is not None and not Path(p).exists() and key != "scenario" and key != "csv":
                raise UsageError(f"--{key}: no such file {p}")
        if self.output not in ("json", "pretty"):
            raise UsageError("--output must be json or pretty")
        return self


def _read_json(path):
    return json.loads(Path(path).read_text())


def _chart_list(text: Optional[str]):
    return [t.strip() for t in text.split(",")] if text else None


def _emit(obj, cfg: CliConfig):
    indent = 2 if cfg.output == "pretty" else None
    print(json.dumps(jsonable(obj), indent=indent, sort_keys=False))


def _degree(cfg: CliConfig) -> int:
    return cfg.degree if cfg.degree is not None else default_degree()


# subcommands: each returns (payload, passed)

def cmd_canonoid(cfg, ns):
    A = RationalMatrix.from_json(_read_json(ns.A))
    S = RationalMatrix.from_json(_read_json(ns.S))
    v = check_canonoid(A, S)
    out = v.to_json()
    out["omega2"] = omega2(A).constant_matrix()
    if v.is_canonoid:
        t = transformed_hamiltonian(A, S)
        out["K"], out["H2"] = t.K, t.H2
    else:
        out["K"] = out["H2"] = None
    return out, v.is_canonoid


def cmd_gamma_space(cfg, ns):
    S = RationalMatrix.from_json(_read_json(ns.S))
    basis = gamma_nullspace(S)
    return {"dimension": len(basis), "basis": basis}, True


def _other_bivector(chart, path):
    return Bivector.from_json(chart, _read_json(path))


def cmd_schouten(cfg, ns):
    s = load_scenario(ns.scenario)
    other = _other_bivector(s.chart, ns.other) if ns.other else s.structure
    tri = schouten(s.structure, other)
    return {"zero": tri.is_zero(), "bracket": tri.to_json()}, tri.is_zero()


def cmd_compat(cfg, ns):
    s = load_scenario(ns.scenario)
    other = _other_bivector(s.chart, ns.other)
    if not is_poisson(other):
        raise PoissonError("--other does not satisfy the Jacobi identity")
    ok = schouten(s.structure, other).is_zero()
    return {"compatible": ok}, ok


def cmd_casimir(cfg, ns):
    s = load_scenario(ns.scenario)
    return casimirs(s.structure, _degree(cfg)).to_json(), True


def cmd_hamiltonize(cfg, ns):
    s = load_scenario(ns.scenario)
    pi = _other_bivector(s.chart, ns.bivector) if ns.bivector else s.structure
    X = VectorField.from_json(s.chart, _read_json(ns.field)) if ns.field else ham_vf(s.structure, s.hamiltonian)
    r = hamiltonize(pi, X, _degree(cfg))
    return r.to_json(), r.feasible


def cmd_poissonoid(cfg, ns):
    s = load_scenario(ns.scenario)
    if ns.transform not in s.transforms:
        raise UsageError(f"scenario has no transform {ns.transform!r}; known: {sorted(s.transforms)}")
    target = Chart(_chart_list(ns.target_chart)) if ns.target_chart else None
    r = check_poissonoid_linear(s.structure, s.transforms[ns.transform], s.hamiltonian, _degree(cfg), target)
    return r.to_json(), r.poissonoid


def cmd_kirchhoff(cfg, ns):
    omega = [to_rational(x) for x in ns.omega.split(",")]
    if len(omega) != 3:
        raise UsageError("--omega needs three comma-separated values")
    r = kirchhoff_certificate(omega, to_rational(ns.eps), to_rational(ns.a))
    return r.to_json(), r.passed


def _one_form(chart, data):
    if isinstance(data, list):
        return KForm.one_form(chart, [chart.poly(t) for t in data])
    form = KForm.from_json(chart, data)
    if form.degree != 1:
        raise TensorError("theta must be a 1-form")
    return form


def cmd_whittaker(cfg, ns):
    s = load_scenario(ns.scenario)
    theta = _one_form(s.chart, _read_json(ns.theta))
    r = generator_check(ham_vf(s.structure, s.hamiltonian), theta)
    return r.to_json(), (r.absolute or r.relative) and r.certificate is not False


def cmd_symmetry(cfg, ns):
    s = load_scenario(ns.scenario)
    xi = VectorField.from_json(s.chart, _read_json(ns.xi))
    v = master_symmetry_degree(ham_vf(s.structure, s.hamiltonian), xi, ns.max_degree)
    return v.to_json(), v.degree is not None


def cmd_master_gen(cfg, ns):
    s = load_scenario(ns.scenario)
    v = master_generator_check(s.structure, ham_vf(s.structure, s.hamiltonian), s.chart.poly(ns.T), ns.m)
    return v.to_json(), v.hamiltonian_degree is not None


def cmd_integrate(cfg, ns):
    s = load_scenario(ns.scenario)
    x0 = [float(to_rational(t.strip())) for t in ns.x0.split(",")]
    traj = integrate(s.structure, s.hamiltonian, x0, ns.t_end, ns.step)
    if ns.invariants == "all":
        inv = s.invariants()
    else:
        names = _chart_list(ns.invariants)
        unknown = [n for n in names if n not in s.invariants()]
        if unknown:
            raise UsageError(f"unknown invariants {unknown}; known: {list(s.invariants())}")
        inv = {n: s.invariants()[n] for n in names}
    if ns.csv:
        Path(ns.csv).write_text(traj.to_csv())
        log.info("wrote %d rows to %s", len(traj.times), ns.csv)
    rep = drift_report(traj, inv)
    out = {"steps": len(traj.times) - 1, "final": list(traj.final), "drift": rep.to_json()}
    if ns.tolerance is None:
        return out, True
    out["tolerance"] = ns.tolerance
    return out, rep.max() < ns.tolerance


def cmd_scenario(cfg, ns):
    if ns.action == "list":
        return {"scenarios": builtin_names()}, True
    names = builtin_names() if ns.all else ns.names
    if not names:
        raise UsageError("scenario run needs names or --all")
    loaded = [load_scenario(n) for n in names]
    with ThreadPoolExecutor(max_workers=max(1, ns.jobs)) as pool:
        reports = list(pool.map(run_scenario, loaded))
    for r in reports:
        log.info("%s: %s", r.name, "pass" if r.passed else "FAIL")
    payload = {
        "passed": all(r.passed for r in reports),
        "scenarios": [r.to_json() if (ns.verbose or not r.passed) else {"name": r.name, "passed": True}
                      for r in reports],
    }
    return payload, payload["passed"]


COMMANDS = {
    "canonoid": cmd_canonoid,
    "gamma-space": cmd_gamma_space,
    "schouten": cmd_schouten,
    "compat": cmd_compat,
    "casimir": cmd_casimir,
    "hamiltonize": cmd_hamiltonize,
    "poissonoid": cmd_poissonoid,
    "kirchhoff": cmd_kirchhoff,
    "whittaker": cmd_whittaker,
    "symmetry": cmd_symmetry,
    "master-gen": cmd_master_gen,
    "integrate": cmd_integrate,
    "scenario": cmd_scenario,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pcx", description="Exact canonoid and Poissonoid checks.")
    p.add_argument("--output", choices=["json", "pretty"], default="json")
    p.add_argument("-v", "--verbose", action="store_true", help="log to stderr")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("canonoid", help="test a linear map X = A x for a quadratic H")
    c.add_argument("--S", required=True)
    c.add_argument("--A", required=True)

    c = sub.add_parser("gamma-space", help="basis of admissible Gamma for S")
    c.add_argument("--S", required=True)

    c = sub.add_parser("schouten", help="[pi, pi] or [pi, other]")
    c.add_argument("--scenario", required=True)
    c.add_argument("--other")

    c = sub.add_parser("compat", help="compatibility of two Poisson structures")
    c.add_argument("--scenario", required=True)
    c.add_argument("--other", required=True)

    c = sub.add_parser("casimir", help="Casimir basis up to a degree")
    c.add_argument("--scenario", required=True)
    c.add_argument("--degree", type=int)

    c = sub.add_parser("hamiltonize", help="solve pi# dK = X")
    c.add_argument("--scenario", required=True)
    c.add_argument("--field")
    c.add_argument("--bivector")
    c.add_argument("--degree", type=int)

    c = sub.add_parser("poissonoid", help="Poissonoid checks of a scenario transform")
    c.add_argument("action", choices=["check"])
    c.add_argument("--scenario", required=True)
    c.add_argument("--transform", required=True)
    c.add_argument("--target-chart")
    c.add_argument("--degree", type=int)

    c = sub.add_parser("kirchhoff", help="Clebsch/Kirchhoff certificate")
    c.add_argument("--omega", required=True)
    c.add_argument("--eps", required=True)
    c.add_argument("--a", required=True)

    c = sub.add_parser("whittaker", help="absolute/relative generator check")
    c.add_argument("--scenario", required=True)
    c.add_argument("--theta", required=True)

    c = sub.add_parser("symmetry", help="master symmetry degree of xi")
    c.add_argument("--scenario", required=True)
    c.add_argument("--xi", required=True)
    c.add_argument("--max-degree", type=int, default=6)

    c = sub.add_parser("master-gen", help="generator degrees of a function T")
    c.add_argument("--scenario", required=True)
    c.add_argument("--T", required=True)
    c.add_argument("--m", type=int, default=6)

    c = sub.add_parser("integrate", help="RK4 trajectory and drift report")
    c.add_argument("--scenario", required=True)
    c.add_argument("--x0", required=True)
    c.add_argument("--t-end", type=float, required=True)
    c.add_argument("--step", type=float, required=True)
    c.add_argument("--invariants", default="all")
    c.add_argument("--tolerance", type=float)
    c.add_argument("--csv", help="write the trajectory as CSV to this path")

    c = sub.add_parser("scenario", help="list or run builtin scenarios")
    c.add_argument("action", choices=["list", "run"])
    c.add_argument("names", nargs="*")
    c.add_argument("--all", action="store_true")
    c.add_argument("--jobs", type=int, default=4)
    return p


def _config(ns) -> CliConfig:
    paths = {k: getattr(ns, k) for k in ("S", "A", "other", "field", "bivector", "theta", "xi", "scenario")
             if getattr(ns, k, None) is not None}
    numbers = {k: getattr(ns, k) for k in ("t_end", "step", "max_degree", "m", "jobs", "tolerance")
               if getattr(ns, k, None) is not None}
    return CliConfig(
        command=ns.command,
        action=getattr(ns, "action", None),
        paths=paths,
        degree=getattr(ns, "degree", None),
        numbers=numbers,
        names=list(getattr(ns, "names", []) or []),
        output=ns.output,
    ).validate()


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        ns = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, stream=sys.stderr,
                            format="%(levelname)s %(message)s")
        if ns.command is None:
            raise UsageError("missing subcommand")
        for k in ("t_end", "step"):
            if getattr(ns, k, 1.0) <= 0:
                raise UsageError(f"--{k.replace('_', '-')} must be positive")
        cfg = _config(ns)
        payload, passed = COMMANDS[ns.command](cfg, ns)
    except UsageError as exc:
        print(f"pcx: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrationError as exc:
        print(json.dumps({"error": str(exc), "last_time": exc.last_time}))
        return EXIT_FAIL
    except INPUT_ERRORS as exc:
        print(f"pcx: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(payload, cfg)
    return EXIT_OK if passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
