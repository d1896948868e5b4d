"""Poissonoid checks: Jacobi and compatibility, bounded-degree Hamiltonian and Casimir solves."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from .matrix import RationalMatrix, rref, solve_affine
from .polyalg import Polynomial
from .systems import (
    E3,
    E3_F,
    clebsch_field,
    clebsch_hamiltonian,
    e3_bivector,
    e3_casimirs,
    eta_tilde,
    kirchhoff_C1_in_F,
    kirchhoff_constants,
    kirchhoff_determinant,
    kirchhoff_matrix,
)
from .tensorcalc import (
    Bivector,
    Chart,
    VectorField,
    d,
    ham_vf,
    lie_bivector,
    poisson_bracket,
    pullback_bivector,
    pullback_function,
    pushforward_vf,
    schouten,
    sharp,
)

DEFAULT_DEGREE = 2


def default_degree() -> int:
    raw = os.environ.get("PCX_MAX_DEGREE")
    if raw is None:
        return DEFAULT_DEGREE
    try:
        deg = int(raw)
    except ValueError as exc:
        raise ValueError(f"PCX_MAX_DEGREE must be an integer, got {raw!r}") from exc
    if deg < 1:
        raise ValueError("PCX_MAX_DEGREE must be at least 1")
    return deg


class PoissonError(ValueError):
    pass


def is_poisson(pi: Bivector) -> bool:
    return schouten(pi, pi).is_zero()


def compatible(p1: Bivector, p2: Bivector) -> bool:
    for name, p in (("first", p1), ("second", p2)):
        if not is_poisson(p):
            raise PoissonError(f"{name} bivector does not satisfy the Jacobi identity")
    return schouten(p1, p2).is_zero()


def monomial_basis(dim: int, deg: int) -> list[tuple]:
    """Exponent tuples of total degree 1..deg: degree ascending, lex descending within a degree."""
    out = []
    for k in range(1, deg + 1):
        layer = set()
        for combo in combinations_with_replacement(range(dim), k):
            e = [0] * dim
            for i in combo:
                e[i] += 1
            layer.add(tuple(e))
        out.extend(sorted(layer, reverse=True))
    return out


@dataclass(frozen=True)
class HamiltonizeResult:
    status: str
    K: Optional[Polynomial]
    kernel_basis: tuple
    degree: int
    monomials: tuple = field(repr=False, default=())

    @property
    def feasible(self) -> bool:
        return self.status == "unique_up_to_kernel"

    def contains(self, P: Polynomial) -> bool:
        """P is a solution: P - K (constant dropped) lies in span(kernel_basis)."""
        if not self.feasible:
            return False
        diff = P - self.K
        diff = diff - diff.constant_term()
        index = {e: i for i, e in enumerate(self.monomials)}
        target = [Fraction(0)] * len(self.monomials)
        for e, c in diff.items():
            if e not in index:
                return False
            target[index[e]] = c
        if not self.kernel_basis:
            return not any(target)
        cols = []
        for k in self.kernel_basis:
            v = [Fraction(0)] * len(self.monomials)
            for e, c in k.items():
                v[index[e]] = c
            cols.append(v)
        aug = [list(r) + [t] for r, t in zip(zip(*cols), target)]
        _, piv = rref(aug)
        return len(cols) not in piv

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "degree": self.degree,
            "K": str(self.K) if self.K is not None else None,
            "kernel_basis": [str(k) for k in self.kernel_basis],
        }


def hamiltonize(pi: Bivector, X: VectorField, deg: int | None = None) -> HamiltonizeResult:
    """Solve pi# dK = X for K among polynomials of total degree 1..deg, exactly."""
    deg = default_degree() if deg is None else deg
    if deg < 1:
        raise PoissonError("degree bound must be at least 1")
    if pi.chart != X.chart:
        raise PoissonError("bivector and vector field live on different charts")
    chart = pi.chart
    monos = monomial_basis(chart.dim, deg)
    rows_index: dict[tuple, int] = {}
    columns = []
    for e in monos:
        field_e = ham_vf(pi, Polynomial(chart.names, {e: 1}))
        col = {}
        for i, comp in enumerate(field_e.components):
            for me, c in comp.items():
                key = (i, me)
                if key not in rows_index:
                    rows_index[key] = len(rows_index)
                col[rows_index[key]] = c
        columns.append(col)
    rhs_map = {}
    for i, comp in enumerate(X.components):
        for me, c in comp.items():
            key = (i, me)
            if key not in rows_index:
                rows_index[key] = len(rows_index)
            rhs_map[rows_index[key]] = c
    nrows = len(rows_index)
    matrix = [[Fraction(0)] * len(monos) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for r, c in col.items():
            matrix[r][j] = c
    rhs = [rhs_map.get(r, Fraction(0)) for r in range(nrows)]
    if nrows == 0:
        particular, kernel = [Fraction(0)] * len(monos), [
            [Fraction(int(i == j)) for i in range(len(monos))] for j in range(len(monos))
        ]
    else:
        particular, kernel = solve_affine(matrix, rhs)
    to_poly = lambda v: Polynomial(chart.names, {e: c for e, c in zip(monos, v) if c})
    kernel_polys = tuple(to_poly(v) for v in kernel)
    if particular is None:
        return HamiltonizeResult("infeasible", None, kernel_polys, deg, tuple(monos))
    K = to_poly(particular)
    if sharp(pi, d(K)) != X:
        raise PoissonError("internal inconsistency: solved K does not reproduce the field")
    return HamiltonizeResult("unique_up_to_kernel", K, kernel_polys, deg, tuple(monos))


@dataclass(frozen=True)
class CasimirBasis:
    degree_bound: int
    basis: tuple

    def to_json(self) -> dict:
        return {"degree_bound": self.degree_bound, "basis": [str(b) for b in self.basis]}


def casimirs(pi: Bivector, deg: int | None = None) -> CasimirBasis:
    deg = default_degree() if deg is None else deg
    res = hamiltonize(pi, VectorField.zero(pi.chart), deg)
    return CasimirBasis(deg, res.kernel_basis)


def same_span(a: Sequence[Polynomial], b: Sequence[Polynomial]) -> bool:
    """Exact equality of the linear spans of two polynomial lists."""
    monos = sorted({e for p in list(a) + list(b) for e, _ in p.items()})
    vec = lambda p: [p.coefficient(e) for e in monos]

    def rank(ps):
        if not ps:
            return 0
        return len(rref([vec(p) for p in ps])[1])

    ra, rb = rank(list(a)), rank(list(b))
    return ra == rb == rank(list(a) + list(b))


def constant_of_motion_check(pi: Bivector, H: Polynomial, F: Polynomial) -> bool:
    return poisson_bracket(pi, F, H).is_zero()


def poisson_vf_check(pi: Bivector, X: VectorField) -> bool:
    return lie_bivector(X, pi).is_zero()


def relabel(pi: Bivector, chart: Chart) -> Bivector:
    """Same tensor written on a chart with different variable names."""
    return Bivector(chart, [[p.rename(chart.names) for p in r] for r in pi.entries])


@dataclass(frozen=True)
class PoissonoidReport:
    pushed_field: VectorField
    pulled_bivector: Bivector
    hamiltonize: HamiltonizeResult
    pulled_K: Optional[Polynomial]
    certificate: bool
    poissonoid: bool
    weakly_poissonoid: bool
    compatible: bool
    bihamiltonian: bool

    def to_json(self) -> dict:
        return {
            "poissonoid": self.poissonoid,
            "weakly_poissonoid": self.weakly_poissonoid,
            "compatible": self.compatible,
            "bihamiltonian": self.bihamiltonian,
            "certificate": self.certificate,
            "pushed_field": self.pushed_field.to_json(),
            "pulled_bivector": self.pulled_bivector.to_json(),
            "pulled_K": str(self.pulled_K) if self.pulled_K is not None else None,
            "hamiltonize": self.hamiltonize.to_json(),
        }


def check_poissonoid_linear(
    pi: Bivector,
    A: RationalMatrix,
    H: Polynomial,
    deg: int | None = None,
    target_chart: Chart | None = None,
) -> PoissonoidReport:
    """Push X = pi# dH forward by f(x) = A x, hamiltonize in the target chart, pull back.

    The target structure is pi itself written in the target chart.
    """
    if not is_poisson(pi):
        raise PoissonError("structure does not satisfy the Jacobi identity")
    A.inverse()
    target = target_chart or pi.chart
    pi_target = relabel(pi, target)
    X = ham_vf(pi, H)
    fX = pushforward_vf(A, X, target)
    res = hamiltonize(pi_target, fX, deg)
    pulled = pullback_bivector(A, pi_target, pi.chart)
    weak = lie_bivector(X, pulled).is_zero()
    fK = None
    cert = False
    if res.feasible:
        fK = pullback_function(A, res.K, pi.chart.names)
        cert = sharp(pulled, d(fK)) == X
    compat = is_poisson(pulled) and schouten(pi, pulled).is_zero()
    poissonoid = res.feasible and cert
    return PoissonoidReport(fX, pulled, res, fK, cert, poissonoid, weak, compat, poissonoid and compat)


@dataclass(frozen=True)
class KirchhoffReport:
    constants: dict
    matrix: RationalMatrix
    determinant: Fraction
    expected_determinant: Fraction
    eta_is_poisson: bool
    compatible: bool
    eta_hamiltonian: bool
    pullback_matches: bool
    field_matches: bool
    C1_in_F_matches: bool

    @property
    def passed(self) -> bool:
        return all([
            self.determinant == self.expected_determinant,
            self.eta_is_poisson,
            self.compatible,
            self.eta_hamiltonian,
            self.pullback_matches,
            self.field_matches,
            self.C1_in_F_matches,
        ])

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "constants": {k: str(v) for k, v in self.constants.items()},
            "matrix": self.matrix.to_json(),
            "determinant": str(self.determinant),
            "expected_determinant": str(self.expected_determinant),
            "eta_is_poisson": self.eta_is_poisson,
            "compatible": self.compatible,
            "eta_hamiltonian": self.eta_hamiltonian,
            "pullback_matches": self.pullback_matches,
            "field_matches": self.field_matches,
            "C1_in_F_matches": self.C1_in_F_matches,
        }


def kirchhoff_certificate(omega: Sequence, eps, a) -> KirchhoffReport:
    consts = kirchhoff_constants(omega, eps, a)
    Phi = kirchhoff_matrix(omega, eps, a)
    pi = e3_bivector(E3)
    eta = eta_tilde(omega, E3)
    X = clebsch_field(omega, E3)
    C1, _ = e3_casimirs(E3)
    piF = relabel(pi, E3_F)
    # f = Phi^-1 maps x to F
    pulled = pullback_bivector(Phi.inverse(), piF, E3)
    C1_F = C1.compose_linear(Phi, E3_F.names)
    C1_back = pullback_function(Phi.inverse(), C1_F, E3.names)
    return KirchhoffReport(
        constants=consts,
        matrix=Phi,
        determinant=Phi.det(),
        expected_determinant=kirchhoff_determinant(omega, eps, a),
        eta_is_poisson=is_poisson(eta),
        compatible=schouten(pi, eta).is_zero(),
        eta_hamiltonian=sharp(eta, d(C1.scale(Fraction(-1, 2)))) == X,
        pullback_matches=pulled == eta.scale(Fraction(-1, 2)),
        field_matches=sharp(pulled, d(C1_back)) == X and ham_vf(pi, clebsch_hamiltonian(omega, E3)) == X,
        C1_in_F_matches=C1_F == kirchhoff_C1_in_F(omega, eps, a, E3_F),
    )

