"""Scenario files: JSON schema, parsing into exact objects, invariant checks at load."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import jsonschema

from ..canonoid import hessian_matrix
from ..matrix import MatrixError, RationalMatrix
from ..polyalg import Polynomial, PolyError, to_rational
from ..poissonoid import constant_of_motion_check, is_poisson
from ..tensorcalc import Bivector, Chart, TensorError

SCHEMA_VERSION = 1
DATA_DIR = Path(__file__).parent / "data"

CHECK_KINDS = (
    "beta_sharp",
    "canonoid",
    "casimirs",
    "compat",
    "constraints",
    "dynamics",
    "field",
    "form_certificate",
    "gamma_space",
    "hamiltonize",
    "identity",
    "infinitesimal_poissonoid",
    "kirchhoff",
    "master_generator",
    "master_symmetry",
    "noether",
    "poisson_field",
    "poissonoid",
    "preservation",
    "rescaling",
    "symmetry_implication",
    "whittaker",
)

_rational = {"type": ["string", "integer"]}
_matrix = {"type": "array", "items": {"type": "array", "items": _rational}}

SCHEMA = {
    "type": "object",
    "required": ["schema", "name", "chart", "structure", "hamiltonian"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "name": {"type": "string", "minLength": 1},
        "description": {"type": "string"},
        "chart": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "structure": {
            "type": "object",
            "required": ["kind", "data"],
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["bivector", "symplectic_matrix"]},
                "data": {"type": "array", "items": {"type": "array", "items": _rational}},
            },
        },
        "hamiltonian": {"type": "string"},
        "transforms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "matrix"],
                "additionalProperties": False,
                "properties": {"name": {"type": "string"}, "matrix": _matrix},
            },
        },
        "integrals": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "poly"],
                "additionalProperties": False,
                "properties": {"name": {"type": "string"}, "poly": {"type": "string"}},
            },
        },
        "params": {"type": "object", "additionalProperties": _rational},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "kind"],
                "properties": {"id": {"type": "string"}, "kind": {"enum": list(CHECK_KINDS)}},
            },
        },
        "expected": {"type": "object", "additionalProperties": {"type": "object"}},
    },
}


class ScenarioError(ValueError):
    """Schema violation or failed load-time invariant; `item` names the offender."""

    def __init__(self, msg: str, item: Optional[str] = None):
        super().__init__(f"{item}: {msg}" if item else msg)
        self.item = item


@dataclass(frozen=True)
class Scenario:
    name: str
    chart: Chart
    structure: Bivector
    structure_kind: str
    symplectic: Optional[RationalMatrix]
    hamiltonian: Polynomial
    transforms: dict
    integrals: dict
    params: dict
    checks: tuple
    expected: dict
    description: str = ""
    source: Optional[str] = field(default=None, compare=False)

    @property
    def S(self) -> RationalMatrix:
        return hessian_matrix(self.hamiltonian)

    def invariants(self) -> dict:
        """Integrals plus the Hamiltonian, keyed by name."""
        out = {"H": self.hamiltonian}
        out.update(self.integrals)
        return out


def builtin_names() -> list[str]:
    return sorted(p.stem for p in DATA_DIR.glob("*.json"))


def builtin_path(name: str) -> Path:
    return DATA_DIR / f"{name}.json"


def _resolve(ref) -> Path:
    p = Path(ref)
    if p.exists():
        return p
    if builtin_path(str(ref)).exists():
        return builtin_path(str(ref))
    stem = Path(ref).stem
    if builtin_path(stem).exists() and not p.parent.parts:
        return builtin_path(stem)
    raise ScenarioError(f"no such scenario file or builtin: {ref}")


def load_scenario(ref) -> Scenario:
    """Load from a path or a builtin name ('euler_so3' or 'euler_so3.json')."""
    path = _resolve(ref)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON: {exc}", str(path)) from exc
    return parse_scenario(data, str(path))


def _symplectic_to_bivector(chart: Chart, W: RationalMatrix) -> Bivector:
    # omega(X_H, .) = dH with omega matrix W gives pi = -W^-1
    if not W.is_antisymmetric():
        raise ScenarioError("symplectic matrix is not antisymmetric", "structure")
    if not W.det():
        raise ScenarioError("symplectic matrix is degenerate", "structure")
    return Bivector.from_matrix(chart, -W.inverse())


def parse_scenario(data, source: Optional[str] = None) -> Scenario:
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ScenarioError(f"schema violation: {exc.message}", where) from exc

    try:
        chart = Chart(data["chart"])
    except (TensorError, PolyError) as exc:
        raise ScenarioError(str(exc), "chart") from exc

    def poly(text, item):
        try:
            return chart.poly(text)
        except PolyError as exc:
            raise ScenarioError(str(exc), item) from exc

    st = data["structure"]
    W = None
    try:
        if st["kind"] == "symplectic_matrix":
            W = RationalMatrix.from_json(st["data"])
            if W.shape != (chart.dim, chart.dim):
                raise ScenarioError(f"matrix shape {W.shape} does not fit the chart", "structure")
            pi = _symplectic_to_bivector(chart, W)
        else:
            pi = Bivector.from_json(chart, st["data"])
    except (MatrixError, TensorError, PolyError) as exc:
        raise ScenarioError(str(exc), "structure") from exc
    if not is_poisson(pi):
        raise ScenarioError("structure fails the Jacobi identity", "structure")

    H = poly(data["hamiltonian"], "hamiltonian")

    transforms = {}
    for t in data.get("transforms", []):
        item = f"transforms/{t['name']}"
        if t["name"] in transforms:
            raise ScenarioError("duplicate transform name", item)
        try:
            A = RationalMatrix.from_json(t["matrix"])
        except (MatrixError, PolyError, ValueError) as exc:
            raise ScenarioError(str(exc), item) from exc
        if A.shape != (chart.dim, chart.dim):
            raise ScenarioError(f"shape {A.shape} does not fit the chart", item)
        if not A.det():
            raise ScenarioError("matrix is singular", item)
        transforms[t["name"]] = A

    integrals = {}
    for it in data.get("integrals", []):
        item = f"integrals/{it['name']}"
        if it["name"] in integrals or it["name"] == "H":
            raise ScenarioError("duplicate integral name", item)
        F = poly(it["poly"], item)
        if not constant_of_motion_check(pi, H, F):
            raise ScenarioError("not a constant of motion of the scenario Hamiltonian", item)
        integrals[it["name"]] = F

    try:
        params = {k: to_rational(v) for k, v in data.get("params", {}).items()}
    except (PolyError, ValueError) as exc:
        raise ScenarioError(str(exc), "params") from exc

    checks = tuple(data.get("checks", []))
    ids = [c["id"] for c in checks]
    dup = {i for i in ids if ids.count(i) > 1}
    if dup:
        raise ScenarioError("duplicate check id", f"checks/{sorted(dup)[0]}")
    expected = data.get("expected", {})
    for k in expected:
        if k not in ids:
            raise ScenarioError("expected entry without a matching check", f"expected/{k}")

    return Scenario(
        name=data["name"],
        chart=chart,
        structure=pi,
        structure_kind=st["kind"],
        symplectic=W,
        hamiltonian=H,
        transforms=transforms,
        integrals=integrals,
        params=params,
        checks=checks,
        expected=expected,
        description=data.get("description", ""),
        source=source,
    )

