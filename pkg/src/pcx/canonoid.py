"""Linear canonoid transformations X = A x of quadratic Hamiltonians H = x^t S x / 2."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .matrix import RationalMatrix, SingularMatrixError, nullspace, rref
from .polyalg import Polynomial, to_rational
from .tensorcalc import Chart, KForm


class CanonoidError(ValueError):
    pass


def standard_J(n: int) -> RationalMatrix:
    if n < 1:
        raise CanonoidError("n must be at least 1")
    zero = RationalMatrix.zeros(n)
    one = RationalMatrix.identity(n)
    return RationalMatrix.blocks([[zero, one], [-one, zero]])


def _half_dim(M: RationalMatrix) -> int:
    if not M.is_square() or M.nrows % 2:
        raise CanonoidError(f"expected an even square matrix, got {M.shape}")
    return M.nrows // 2


def _check_symmetric(S: RationalMatrix):
    _half_dim(S)
    if not S.is_symmetric():
        raise CanonoidError("S must be symmetric")


@dataclass(frozen=True)
class CanonoidVerdict:
    is_canonoid: bool
    is_canonical: bool
    gamma: RationalMatrix
    C: Optional[RationalMatrix] = None
    scale_a: Optional[Fraction] = None

    def to_json(self) -> dict:
        return {
            "is_canonoid": self.is_canonoid,
            "is_canonical": self.is_canonical,
            "gamma": self.gamma.to_json(),
            "C": self.C.to_json() if self.C is not None else None,
            "scale_a": str(self.scale_a) if self.scale_a is not None else None,
        }


def gamma_of(A: RationalMatrix) -> RationalMatrix:
    J = standard_J(_half_dim(A))
    return A.T @ J @ A


def condition_residual(gamma: RationalMatrix, S: RationalMatrix) -> RationalMatrix:
    """Gamma^t J S + S J Gamma; zero exactly when the map is canonoid."""
    J = standard_J(_half_dim(S))
    return gamma.T @ J @ S + S @ J @ gamma


def j_multiple(gamma: RationalMatrix) -> Optional[Fraction]:
    """Return a if gamma == a J with a != 0, else None."""
    n = _half_dim(gamma)
    a = gamma[0, n]
    if not a:
        return None
    return a if gamma == standard_J(n).scale(a) else None


def check_canonoid(A: RationalMatrix, S: RationalMatrix) -> CanonoidVerdict:
    _check_symmetric(S)
    if A.shape != S.shape:
        raise CanonoidError(f"A has shape {A.shape}, S has shape {S.shape}")
    try:
        Ainv = A.inverse()
    except SingularMatrixError as exc:
        raise CanonoidError("A is singular") from exc
    J = standard_J(_half_dim(A))
    gamma = A.T @ J @ A
    scale = j_multiple(gamma)
    if not condition_residual(gamma, S).is_zero():
        return CanonoidVerdict(False, False, gamma, None, scale)
    C = -(J @ A @ J @ S @ Ainv)
    if not C.is_symmetric():
        raise CanonoidError("internal inconsistency: C is not symmetric although the condition holds")
    if A @ J @ S @ Ainv != J @ C:
        raise CanonoidError("internal inconsistency: A J S A^-1 != J C")
    return CanonoidVerdict(True, scale is not None, gamma, C, scale)


def antisymmetric_basis(dim: int) -> list[tuple[int, int]]:
    """Unknown order for antisymmetric matrices: (i, j) with i < j, lexicographic."""
    return list(combinations(range(dim), 2))


def antisymmetric_from_coords(dim: int, coords: Sequence) -> RationalMatrix:
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for (i, j), v in zip(antisymmetric_basis(dim), coords):
        rows[i][j] = to_rational(v)
        rows[j][i] = -rows[i][j]
    return RationalMatrix(rows)


def antisymmetric_coords(M: RationalMatrix) -> list[Fraction]:
    return [M[i, j] for i, j in antisymmetric_basis(M.nrows)]


def gamma_nullspace(S: RationalMatrix) -> list[RationalMatrix]:
    """Basis of antisymmetric Gamma with Gamma^t J S + S J Gamma = 0, canonical RREF order."""
    _check_symmetric(S)
    dim = S.nrows
    unknowns = antisymmetric_basis(dim)
    columns = []
    for u in range(len(unknowns)):
        e = antisymmetric_from_coords(dim, [int(k == u) for k in range(len(unknowns))])
        columns.append([x for r in condition_residual(e, S).rows for x in r])
    system = [list(r) for r in zip(*columns)]
    return [antisymmetric_from_coords(dim, v) for v in nullspace(system, len(unknowns))]


def in_span(M: RationalMatrix, basis: Sequence[RationalMatrix]) -> bool:
    """Exact membership of an antisymmetric M in the span of basis."""
    target = antisymmetric_coords(M)
    if not basis:
        return not any(target)
    cols = [antisymmetric_coords(B) for B in basis]
    aug = [list(r) + [t] for r, t in zip(zip(*cols), target)]
    _, piv = rref(aug)
    return len(cols) not in piv


def quadratic_poly(M: RationalMatrix, chart: Sequence[str]) -> Polynomial:
    """x^t M x / 2 on the given chart."""
    chart = tuple(chart)
    if M.shape != (len(chart), len(chart)):
        raise CanonoidError("matrix does not fit the chart")
    terms = {}
    n = len(chart)
    for i in range(n):
        for j in range(n):
            c = M[i, j] / 2
            if c:
                e = [0] * n
                e[i] += 1
                e[j] += 1
                e = tuple(e)
                terms[e] = terms.get(e, 0) + c
    return Polynomial(chart, terms)


def hessian_matrix(H: Polynomial) -> RationalMatrix:
    """S with H = x^t S x / 2 for a homogeneous quadratic H."""
    if any(sum(e) != 2 for e, _ in H.items()):
        raise CanonoidError("Hamiltonian is not a homogeneous quadratic")
    n = len(H.chart)
    return RationalMatrix(
        [[H.diff_index(i).diff_index(j).constant_term() for j in range(n)] for i in range(n)]
    )


@dataclass(frozen=True)
class TransformedHamiltonian:
    C: RationalMatrix
    K: Polynomial
    H2: Polynomial
    verdict: CanonoidVerdict


def default_charts(n: int) -> tuple[tuple, tuple]:
    x = tuple(f"q{i + 1}" for i in range(n)) + tuple(f"p{i + 1}" for i in range(n))
    X = tuple(f"Q{i + 1}" for i in range(n)) + tuple(f"P{i + 1}" for i in range(n))
    return x, X


def transformed_hamiltonian(A: RationalMatrix, S: RationalMatrix, x_chart=None, X_chart=None) -> TransformedHamiltonian:
    verdict = check_canonoid(A, S)
    if not verdict.is_canonoid:
        raise CanonoidError("transformation is not canonoid for this S")
    dx, dX = default_charts(_half_dim(A))
    x_chart = tuple(x_chart) if x_chart is not None else dx
    X_chart = tuple(X_chart) if X_chart is not None else dX
    C = verdict.C
    K = quadratic_poly(C, X_chart)
    H2 = quadratic_poly(A.T @ C @ A, x_chart)
    return TransformedHamiltonian(C, K, H2, verdict)


def omega2(A: RationalMatrix, chart=None) -> KForm:
    """The pulled-back symplectic form with matrix A^t J A."""
    n = _half_dim(A)
    if not A.det():
        raise CanonoidError("A is singular")
    chart = Chart(chart if chart is not None else default_charts(n)[0])
    return KForm.from_matrix(chart, gamma_of(A))


def rescaling_matrix(a: Sequence, b: Sequence) -> RationalMatrix:
    a = [to_rational(x) for x in a]
    b = [to_rational(x) for x in b]
    if len(a) != len(b):
        raise CanonoidError("a and b need the same length")
    if any(not x for x in a + b):
        raise CanonoidError("scale factors must be nonzero")
    return RationalMatrix.diag(a + b)


def rescaling_check(a: Sequence, b: Sequence, S: RationalMatrix) -> bool:
    """Canonoid test for Q_i = a_i q_i, P_i = b_i p_i via B S == S B, B = Gamma J."""
    A = rescaling_matrix(a, b)
    _check_symmetric(S)
    if S.shape != A.shape:
        raise CanonoidError("S does not match the number of scale factors")
    n = len(a)
    diag = [-A[i, i] * A[n + i, n + i] for i in range(n)]
    B = RationalMatrix.diag(diag + diag)
    return B @ S == S @ B
