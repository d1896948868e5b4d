"""Infinitesimal Poissonoid transformations, twisted operators and master symmetries."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .poissonoid import HamiltonizeResult, hamiltonize, is_poisson
from .polyalg import Polynomial
from .tensorcalc import (
    Bivector,
    KForm,
    TensorError,
    VectorField,
    d,
    ham_vf,
    interior,
    lie_bivector,
    lie_bracket,
    sharp,
)

DEFAULT_MAX_M = 6


class SymmetryError(ValueError):
    pass


def _as_form(f) -> KForm:
    return KForm.function(f) if isinstance(f, Polynomial) else f


def twisted_d(X: VectorField, f) -> KForm:
    """d_X = d . i_X . d."""
    f = _as_form(f)
    if f.degree > 1:
        raise SymmetryError("twisted_d supports functions and 1-forms")
    return d(interior(X, d(f)))


def twisted_boundary(X: VectorField, f: KForm):
    """del_X = i_X . d . i_X; a Polynomial when the result has degree 0."""
    if isinstance(f, Polynomial) or f.degree < 1:
        raise SymmetryError("twisted_boundary needs a form of degree >= 1")
    out = interior(X, d(interior(X, f)))
    return out.scalar() if out.degree == 0 else out


@dataclass(frozen=True)
class MasterSymmetryVerdict:
    degree: Optional[int]
    iterates: tuple

    def to_json(self) -> dict:
        return {"degree": self.degree, "iterates": [v.to_json() for v in self.iterates]}


def master_symmetry_degree(X: VectorField, xi: VectorField, max_m: int = DEFAULT_MAX_M) -> MasterSymmetryVerdict:
    """Smallest m <= max_m with L_X^{m+1} xi = 0; iterates end at the vanishing one."""
    if max_m < 0:
        raise SymmetryError("max_m must be non-negative")
    iterates = [xi]
    for m in range(max_m + 1):
        nxt = lie_bracket(X, iterates[-1])
        iterates.append(nxt)
        if nxt.is_zero():
            return MasterSymmetryVerdict(m, tuple(iterates))
    return MasterSymmetryVerdict(None, tuple(iterates))


def infinitesimal_poissonoid_check(pi: Bivector, X: VectorField, xi: VectorField, deg: int | None = None) -> Optional[Polynomial]:
    """F with [xi, X] = pi# dF, or None when no such F exists up to the degree bound."""
    return infinitesimal_poissonoid_solve(pi, X, xi, deg).K


def infinitesimal_poissonoid_solve(pi: Bivector, X: VectorField, xi: VectorField, deg: int | None = None) -> HamiltonizeResult:
    if not is_poisson(pi):
        raise SymmetryError("structure does not satisfy the Jacobi identity")
    return hamiltonize(pi, lie_bracket(xi, X), deg)


@dataclass(frozen=True)
class GeneratorVerdict:
    constants_degree: Optional[int]
    hamiltonian_degree: Optional[int]
    iterates: tuple

    def to_json(self) -> dict:
        return {
            "constants_degree": self.constants_degree,
            "hamiltonian_degree": self.hamiltonian_degree,
            "iterates": [str(t) for t in self.iterates],
        }


def master_generator_check(pi: Bivector, X: VectorField, T: Polynomial, m: int) -> GeneratorVerdict:
    """Degrees of T as a generator of constants of motion and of a Hamiltonian master symmetry.

    constants_degree: first k <= m with L_X^{k+1} T = 0.
    hamiltonian_degree: first k <= m with pi# d(L_X^{k+1} T) = 0.
    """
    if m < 0:
        raise SymmetryError("m must be non-negative")
    iterates = [T]
    cdeg = hdeg = None
    for k in range(m + 1):
        nxt = X.apply(iterates[-1])
        iterates.append(nxt)
        if cdeg is None and nxt.is_zero():
            cdeg = k
        if hdeg is None and ham_vf(pi, nxt).is_zero():
            hdeg = k
        if cdeg is not None and hdeg is not None:
            break
    if cdeg is not None and (hdeg is None or hdeg > cdeg):
        raise SymmetryError("internal inconsistency: constants generator without Hamiltonian degree")
    return GeneratorVerdict(cdeg, hdeg, tuple(iterates))


@dataclass(frozen=True)
class BetaSharpVerdict:
    symmetry: MasterSymmetryVerdict
    generator: GeneratorVerdict
    x_preserves_pi: bool
    # levelwise: L_X^{k+1} beta# = 0 iff pi# d(L_X^k T) = 0, for k = 1..m
    equivalent: bool
    # exact degrees: symmetry degree k matches generator degree k - 1
    degrees_match: bool
    levels: tuple = ()

    @property
    def degrees(self) -> tuple:
        return (self.symmetry.degree, self.generator.hamiltonian_degree)

    def to_json(self) -> dict:
        return {
            "symmetry_degree": self.symmetry.degree,
            "generator_degree": self.generator.hamiltonian_degree,
            "x_preserves_pi": self.x_preserves_pi,
            "equivalent": self.equivalent,
            "degrees_match": self.degrees_match,
            "levels": [list(x) for x in self.levels],
        }


def beta_sharp_master_check(pi: Bivector, X: VectorField, beta: KForm, m: int = DEFAULT_MAX_M) -> BetaSharpVerdict:
    """Compare pi# beta as a master symmetry with T = i_X beta as a generator.

    Under d_X beta = 0 and L_X pi = 0, L_X^{k+1} beta# = pi# d(L_X^k T) for
    every k >= 1; `levels` holds both sides of that vanishing test for
    k = 1..m. The exact-degree comparison is reported separately: for
    symmetry degree k >= 1 it asks for generator degree k - 1, and symmetry
    degree 0 is read as pi# dT = 0 with generator degree 0. At k = 1 the
    exact form can fail because L_X beta = dT + i_X d beta.
    """
    if beta.degree != 1:
        raise TensorError("beta must be a 1-form")
    if not twisted_d(X, beta).is_zero():
        raise SymmetryError("hypothesis d_X beta = 0 fails")
    sym = master_symmetry_degree(X, sharp(pi, beta), m)
    T = interior(X, beta).scalar()
    gen = master_generator_check(pi, X, T, max(m - 1, 0))

    field_iter = list(sym.iterates)
    while len(field_iter) < m + 2:
        field_iter.append(lie_bracket(X, field_iter[-1]))
    levels = []
    Tk = T
    for k in range(1, m + 1):
        Tk = X.apply(Tk)
        levels.append((field_iter[k + 1].is_zero(), ham_vf(pi, Tk).is_zero()))
    equivalent = all(a == b for a, b in levels)

    t_sharp_zero = ham_vf(pi, T).is_zero()
    if sym.degree is None:
        # with m == 0 the generator side was probed one step further than the symmetry side
        match = gen.hamiltonian_degree is None if m > 0 else not t_sharp_zero
    elif sym.degree == 0:
        match = t_sharp_zero and gen.hamiltonian_degree == 0
    else:
        match = (not t_sharp_zero) and gen.hamiltonian_degree == sym.degree - 1
    return BetaSharpVerdict(sym, gen, lie_bivector(X, pi).is_zero(), equivalent, match, tuple(levels))
