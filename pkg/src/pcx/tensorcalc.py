"""Polynomial-coefficient tensor calculus on a single global chart.

Conventions (all fixed by checks in the test suite):

* ``sharp``: (pi# a)^i = sum_j pi^{ij} a_j, so with the standard bivector
  [[0, I], [-I, 0]] the Hamiltonian field is (dH/dp, -dH/dq).
* A 2-form with coefficient c on (i, j), i < j, has matrix entries
  R[i][j] = c and R[j][i] = -c. sum dq^i ^ dp_i then has matrix J.
* (d a)_{ij} = d_i a_j - d_j a_i for 1-forms, which makes d(sum p dq) = -omega.
* i_X (c dx^{i1} ^ ... ^ dx^{ik}) = sum_s (-1)^s X^{i_s} c dx^(I without i_s).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .matrix import RationalMatrix
from .polyalg import ChartMismatchError, Polynomial, PolyError, parse_poly, to_rational

MAX_FORM_DEGREE = 3


class TensorError(ValueError):
    pass


@dataclass(frozen=True)
class Chart:
    names: tuple

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if not names:
            raise TensorError("a chart needs at least one variable")
        if len(set(names)) != len(names):
            raise TensorError(f"duplicate chart variables in {names}")
        for n in names:
            if not n or not (n[0].isalpha() or n[0] == "_") or not all(ch.isalnum() or ch == "_" for ch in n):
                raise TensorError(f"bad variable name {n!r}")
        object.__setattr__(self, "names", names)

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.names)

    def const(self, c) -> Polynomial:
        return Polynomial.constant(self.names, c)

    def var(self, name: str) -> Polynomial:
        return Polynomial.var(self.names, name)

    def coords(self) -> list[Polynomial]:
        return [self.var(n) for n in self.names]

    def poly(self, text: str) -> Polynomial:
        return parse_poly(text, self.names)

    def __iter__(self):
        return iter(self.names)

    def __len__(self):
        return len(self.names)


def _as_chart(chart) -> Chart:
    return chart if isinstance(chart, Chart) else Chart(chart)


def _check_poly(p: Polynomial, chart: Chart) -> Polynomial:
    if not isinstance(p, Polynomial):
        raise TypeError(f"expected a Polynomial, got {type(p).__name__}")
    if p.chart != chart.names:
        raise ChartMismatchError(f"polynomial chart {p.chart} does not match {chart.names}")
    return p


def _same_chart(*objs):
    charts = {o.chart for o in objs}
    if len(charts) != 1:
        raise ChartMismatchError("operands live on different charts")


@dataclass(frozen=True)
class VectorField:
    chart: Chart
    components: tuple

    def __init__(self, chart, components: Sequence[Polynomial]):
        chart = _as_chart(chart)
        comps = tuple(_check_poly(c, chart) for c in components)
        if len(comps) != chart.dim:
            raise TensorError(f"vector field needs {chart.dim} components, got {len(comps)}")
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "components", comps)

    @classmethod
    def zero(cls, chart) -> "VectorField":
        chart = _as_chart(chart)
        return cls(chart, [chart.zero()] * chart.dim)

    @classmethod
    def parse(cls, chart, texts: Sequence[str]) -> "VectorField":
        chart = _as_chart(chart)
        return cls(chart, [chart.poly(t) for t in texts])

    def __getitem__(self, i):
        return self.components[i]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: "VectorField") -> "VectorField":
        _same_chart(self, other)
        return VectorField(self.chart, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "VectorField") -> "VectorField":
        _same_chart(self, other)
        return VectorField(self.chart, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> "VectorField":
        return VectorField(self.chart, [-a for a in self.components])

    def scale(self, c) -> "VectorField":
        if isinstance(c, Polynomial):
            return VectorField(self.chart, [a * c for a in self.components])
        return VectorField(self.chart, [a.scale(c) for a in self.components])

    def apply(self, f: Polynomial) -> Polynomial:
        """Directional derivative X[f]."""
        _check_poly(f, self.chart)
        out = self.chart.zero()
        for i, xi in enumerate(self.components):
            if xi:
                out = out + xi * f.diff_index(i)
        return out

    def to_json(self) -> list:
        return [str(c) for c in self.components]

    @classmethod
    def from_json(cls, chart, data) -> "VectorField":
        if not isinstance(data, list):
            raise TensorError("vector field JSON must be a list of polynomial strings")
        return cls.parse(chart, data)


@dataclass(frozen=True)
class KForm:
    chart: Chart
    degree: int
    coeffs: Mapping

    def __init__(self, chart, degree: int, coeffs: Mapping[tuple, Polynomial] | None = None):
        chart = _as_chart(chart)
        if not 0 <= degree <= MAX_FORM_DEGREE:
            raise TensorError(f"form degree {degree} outside 0..{MAX_FORM_DEGREE}")
        clean = {}
        for idx, p in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise TensorError(f"index {idx} does not have length {degree}")
            if any(not 0 <= i < chart.dim for i in idx):
                raise TensorError(f"index {idx} out of range")
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise TensorError(f"index {idx} is not strictly increasing")
            _check_poly(p, chart)
            if p:
                clean[idx] = p
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)

    def __hash__(self):
        return hash((self.chart, self.degree, frozenset(self.coeffs.items())))

    @classmethod
    def function(cls, f: Polynomial, chart=None) -> "KForm":
        chart = _as_chart(chart if chart is not None else f.chart)
        return cls(chart, 0, {(): f})

    @classmethod
    def from_alternating(cls, chart, degree: int, entries: Mapping[tuple, Polynomial]) -> "KForm":
        """Build from arbitrary index tuples, antisymmetrising by permutation sign."""
        chart = _as_chart(chart)
        acc: dict[tuple, Polynomial] = {}
        for idx, p in entries.items():
            key, sign = _sort_sign(tuple(idx))
            if sign == 0:
                continue
            acc[key] = acc.get(key, chart.zero()) + (p if sign > 0 else -p)
        return cls(chart, degree, acc)

    @classmethod
    def one_form(cls, chart, components: Sequence[Polynomial]) -> "KForm":
        chart = _as_chart(chart)
        if len(components) != chart.dim:
            raise TensorError("one-form needs one component per chart variable")
        return cls(chart, 1, {(i,): c for i, c in enumerate(components)})

    @classmethod
    def from_matrix(cls, chart, m) -> "KForm":
        """2-form from an antisymmetric matrix (constant or polynomial entries)."""
        chart = _as_chart(chart)
        rows = m.rows if isinstance(m, RationalMatrix) else m
        d = chart.dim
        if len(rows) != d or any(len(r) != d for r in rows):
            raise TensorError("matrix shape does not match the chart")
        entries = {}
        for i in range(d):
            for j in range(i + 1, d):
                a, b = _to_poly(rows[i][j], chart), _to_poly(rows[j][i], chart)
                if a != -b:
                    raise TensorError(f"matrix is not antisymmetric at ({i},{j})")
                if a:
                    entries[(i, j)] = a
        for i in range(d):
            if _to_poly(rows[i][i], chart):
                raise TensorError("matrix has a nonzero diagonal")
        return cls(chart, 2, entries)

    def component(self, idx: Sequence[int]) -> Polynomial:
        """Coefficient for any index tuple, with the permutation sign applied."""
        key, sign = _sort_sign(tuple(idx))
        if sign == 0:
            return self.chart.zero()
        p = self.coeffs.get(key, self.chart.zero())
        return p if sign > 0 else -p

    def one_form_components(self) -> list[Polynomial]:
        if self.degree != 1:
            raise TensorError("not a 1-form")
        return [self.component((i,)) for i in range(self.chart.dim)]

    def scalar(self) -> Polynomial:
        if self.degree != 0:
            raise TensorError("not a 0-form")
        return self.coeffs.get((), self.chart.zero())

    def matrix(self) -> list[list[Polynomial]]:
        if self.degree != 2:
            raise TensorError("matrix() needs a 2-form")
        d = self.chart.dim
        return [[self.component((i, j)) for j in range(d)] for i in range(d)]

    def constant_matrix(self) -> RationalMatrix:
        rows = []
        for r in self.matrix():
            row = []
            for p in r:
                if not p.is_constant():
                    raise TensorError("2-form has non-constant coefficients")
                row.append(p.constant_term())
            rows.append(row)
        return RationalMatrix(rows)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "KForm") -> "KForm":
        self._compatible(other)
        acc = dict(self.coeffs)
        for k, p in other.coeffs.items():
            acc[k] = acc.get(k, self.chart.zero()) + p
        return KForm(self.chart, self.degree, acc)

    def __neg__(self) -> "KForm":
        return KForm(self.chart, self.degree, {k: -p for k, p in self.coeffs.items()})

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def scale(self, c) -> "KForm":
        if isinstance(c, Polynomial):
            return KForm(self.chart, self.degree, {k: p * c for k, p in self.coeffs.items()})
        return KForm(self.chart, self.degree, {k: p.scale(c) for k, p in self.coeffs.items()})

    def _compatible(self, other: "KForm"):
        if self.chart != other.chart:
            raise ChartMismatchError("forms live on different charts")
        if self.degree != other.degree:
            raise TensorError(f"degree mismatch {self.degree} vs {other.degree}")

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "entries": [{"indices": list(k), "poly": str(p)} for k, p in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_json(cls, chart, data) -> "KForm":
        chart = _as_chart(chart)
        if not isinstance(data, dict) or "degree" not in data or "entries" not in data:
            raise TensorError("form JSON needs 'degree' and 'entries'")
        entries = {}
        for e in data["entries"]:
            idx = e["indices"]
            idx = tuple(chart.index(i) if isinstance(i, str) else int(i) for i in idx)
            entries[idx] = chart.poly(e["poly"])
        return cls.from_alternating(chart, int(data["degree"]), entries)


def _sort_sign(idx: tuple) -> tuple[tuple, int]:
    if len(set(idx)) != len(idx):
        return idx, 0
    arr = list(idx)
    sign = 1
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                sign = -sign
    return tuple(arr), sign


def _to_poly(x, chart: Chart) -> Polynomial:
    if isinstance(x, Polynomial):
        return _check_poly(x, chart)
    if isinstance(x, str):
        return chart.poly(x)
    return chart.const(x)


@dataclass(frozen=True)
class Bivector:
    chart: Chart
    entries: tuple

    def __init__(self, chart, entries: Sequence[Sequence]):
        chart = _as_chart(chart)
        d = chart.dim
        if len(entries) != d or any(len(r) != d for r in entries):
            raise TensorError(f"bivector needs a {d}x{d} matrix")
        rows = tuple(tuple(_to_poly(x, chart) for x in r) for r in entries)
        for i in range(d):
            if rows[i][i]:
                raise TensorError(f"bivector diagonal entry ({i},{i}) is nonzero")
            for j in range(i + 1, d):
                if rows[i][j] != -rows[j][i]:
                    raise TensorError(f"bivector is not antisymmetric at ({i},{j})")
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_upper(cls, chart, entries: Sequence[Sequence]) -> "Bivector":
        """Build from a full matrix, trusting only the strict upper triangle."""
        chart = _as_chart(chart)
        d = chart.dim
        up = [[chart.zero()] * d for _ in range(d)]
        for i in range(d):
            for j in range(i + 1, d):
                p = _to_poly(entries[i][j], chart)
                up[i][j] = p
                up[j][i] = -p
        return cls(chart, up)

    @classmethod
    def zero(cls, chart) -> "Bivector":
        chart = _as_chart(chart)
        return cls(chart, [[chart.zero()] * chart.dim for _ in range(chart.dim)])

    @classmethod
    def from_matrix(cls, chart, m: RationalMatrix) -> "Bivector":
        return cls(chart, [[x for x in r] for r in m.rows])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_zero(self) -> bool:
        return all(not p for r in self.entries for p in r)

    def __add__(self, other: "Bivector") -> "Bivector":
        _same_chart(self, other)
        return Bivector(self.chart, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: "Bivector") -> "Bivector":
        return self + (-other)

    def __neg__(self) -> "Bivector":
        return Bivector(self.chart, [[-a for a in r] for r in self.entries])

    def scale(self, c) -> "Bivector":
        return Bivector(self.chart, [[a.scale(c) for a in r] for r in self.entries])

    def is_constant(self) -> bool:
        return all(p.is_constant() for r in self.entries for p in r)

    def constant_matrix(self) -> RationalMatrix:
        if not self.is_constant():
            raise TensorError("bivector has non-constant entries")
        return RationalMatrix([[p.constant_term() for p in r] for r in self.entries])

    def to_json(self) -> list:
        return [[str(p) for p in r] for r in self.entries]

    @classmethod
    def from_json(cls, chart, data) -> "Bivector":
        """Upper triangle is authoritative; the lower triangle must agree."""
        chart = _as_chart(chart)
        if not isinstance(data, list) or len(data) != chart.dim:
            raise TensorError(f"bivector JSON must be a {chart.dim}x{chart.dim} array")
        polys = [[chart.poly(x) for x in r] for r in data]
        biv = cls.from_upper(chart, polys)
        for i in range(chart.dim):
            for j in range(chart.dim):
                if polys[i][j] != biv.entries[i][j]:
                    raise TensorError(f"bivector JSON not antisymmetric at ({i},{j})")
        return biv


@dataclass(frozen=True)
class Trivector:
    chart: Chart
    coeffs: Mapping

    def __init__(self, chart, coeffs: Mapping[tuple, Polynomial]):
        chart = _as_chart(chart)
        clean = {}
        for idx, p in coeffs.items():
            idx = tuple(idx)
            if len(idx) != 3 or not (idx[0] < idx[1] < idx[2]):
                raise TensorError(f"trivector index {idx} is not a strictly increasing triple")
            _check_poly(p, chart)
            if p:
                clean[idx] = p
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "coeffs", clean)

    def __hash__(self):
        return hash((self.chart, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_json(self) -> list:
        return [{"indices": list(k), "poly": str(p)} for k, p in sorted(self.coeffs.items())]


# exterior calculus

def d(f) -> KForm:
    """Exterior derivative of a Polynomial or a form of degree <= 2."""
    if isinstance(f, Polynomial):
        f = KForm.function(f)
    if f.degree >= MAX_FORM_DEGREE:
        raise TensorError("exterior derivative is only defined up to degree-2 input")
    chart = f.chart
    acc: dict[tuple, Polynomial] = {}
    for idx, c in f.coeffs.items():
        for l in range(chart.dim):
            if l in idx:
                continue
            dc = c.diff_index(l)
            if not dc:
                continue
            key, sign = _sort_sign((l,) + idx)
            acc[key] = acc.get(key, chart.zero()) + (dc if sign > 0 else -dc)
    return KForm(chart, f.degree + 1, acc)


def interior(X: VectorField, f: KForm) -> KForm:
    if X.chart != f.chart:
        raise ChartMismatchError("vector field and form live on different charts")
    if f.degree < 1:
        raise TensorError("interior product needs a form of degree >= 1")
    acc: dict[tuple, Polynomial] = {}
    for idx, c in f.coeffs.items():
        for s, i in enumerate(idx):
            xi = X.components[i]
            if not xi:
                continue
            rest = idx[:s] + idx[s + 1:]
            t = xi * c
            acc[rest] = acc.get(rest, f.chart.zero()) + (t if s % 2 == 0 else -t)
    return KForm(f.chart, f.degree - 1, acc)


def lie_form(X: VectorField, f) -> KForm:
    """Lie derivative of a form along X."""
    if isinstance(f, Polynomial):
        f = KForm.function(f)
    if X.chart != f.chart:
        raise ChartMismatchError("vector field and form live on different charts")
    if f.degree == 0:
        return KForm.function(X.apply(f.scalar()), X.chart)
    if f.degree < MAX_FORM_DEGREE:
        return interior(X, d(f)) + d(interior(X, f))
    return lie_form_componentwise(X, f)


def lie_form_componentwise(X: VectorField, f: KForm) -> KForm:
    """(L_X f)_I = X[f_I] + sum_s sum_l f_{I with i_s -> l} d_{i_s} X^l.

    Independent of Cartan's formula; also covers the top supported degree.
    """
    chart = f.chart
    dim = chart.dim
    acc: dict[tuple, Polynomial] = {}
    for idx in combinations(range(dim), f.degree):
        total = X.apply(f.component(idx))
        for s, i in enumerate(idx):
            for l in range(dim):
                dx = X.components[l].diff_index(i)
                if not dx:
                    continue
                swapped = idx[:s] + (l,) + idx[s + 1:]
                c = f.component(swapped)
                if c:
                    total = total + c * dx
        if total:
            acc[idx] = total
    return KForm(chart, f.degree, acc)


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    _same_chart(X, Y)
    comps = []
    for i in range(X.chart.dim):
        comps.append(X.apply(Y.components[i]) - Y.apply(X.components[i]))
    return VectorField(X.chart, comps)


def lie_vf(X: VectorField, Y: VectorField) -> VectorField:
    """L_X Y = [X, Y]."""
    return lie_bracket(X, Y)


# Poisson calculus

def sharp(pi: Bivector, alpha: KForm) -> VectorField:
    if pi.chart != alpha.chart:
        raise ChartMismatchError("bivector and form live on different charts")
    if alpha.degree != 1:
        raise TensorError("sharp needs a 1-form")
    a = alpha.one_form_components()
    comps = []
    for i in range(pi.chart.dim):
        s = pi.chart.zero()
        for j, aj in enumerate(a):
            if aj and pi.entries[i][j]:
                s = s + pi.entries[i][j] * aj
        comps.append(s)
    return VectorField(pi.chart, comps)


def ham_vf(pi: Bivector, H: Polynomial) -> VectorField:
    return sharp(pi, d(_check_poly(H, pi.chart)))


def poisson_bracket(pi: Bivector, F: Polynomial, G: Polynomial) -> Polynomial:
    _check_poly(F, pi.chart)
    _check_poly(G, pi.chart)
    dim = pi.chart.dim
    dF = [F.diff_index(i) for i in range(dim)]
    dG = [G.diff_index(j) for j in range(dim)]
    out = pi.chart.zero()
    for i in range(dim):
        if not dF[i]:
            continue
        for j in range(dim):
            if dG[j] and pi.entries[i][j]:
                out = out + dF[i] * pi.entries[i][j] * dG[j]
    return out


def jacobiator(pi: Bivector, F: Polynomial, G: Polynomial, H: Polynomial) -> Polynomial:
    pb = lambda a, b: poisson_bracket(pi, a, b)
    return pb(pb(F, G), H) + pb(pb(G, H), F) + pb(pb(H, F), G)


def schouten(p1: Bivector, p2: Bivector) -> Trivector:
    """[p1, p2]^{ijk} = sum_l cyc_{ijk}(p1^{li} d_l p2^{jk} + p2^{li} d_l p1^{jk}).

    With this normalisation [pi, pi]^{ijk} = 2 * jacobiator(pi, x^i, x^j, x^k).
    """
    _same_chart(p1, p2)
    chart = p1.chart
    dim = chart.dim
    # cache derivatives
    d1 = [[[p1.entries[j][k].diff_index(l) for l in range(dim)] for k in range(dim)] for j in range(dim)]
    d2 = d1 if p2 is p1 else [[[p2.entries[j][k].diff_index(l) for l in range(dim)] for k in range(dim)] for j in range(dim)]
    out = {}
    for i, j, k in combinations(range(dim), 3):
        total = chart.zero()
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for l in range(dim):
                u = p1.entries[l][a]
                if u and d2[b][c][l]:
                    total = total + u * d2[b][c][l]
                v = p2.entries[l][a]
                if v and d1[b][c][l]:
                    total = total + v * d1[b][c][l]
        if total:
            out[(i, j, k)] = total
    return Trivector(chart, out)


def lie_bivector(X: VectorField, pi: Bivector) -> Bivector:
    _same_chart(X, pi)
    dim = pi.chart.dim
    dX = [[X.components[i].diff_index(l) for l in range(dim)] for i in range(dim)]
    rows = [[pi.chart.zero()] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            t = X.apply(pi.entries[i][j])
            for l in range(dim):
                if pi.entries[l][j] and dX[i][l]:
                    t = t - pi.entries[l][j] * dX[i][l]
                if pi.entries[i][l] and dX[j][l]:
                    t = t - pi.entries[i][l] * dX[j][l]
            rows[i][j] = t
            rows[j][i] = -t
    return Bivector(pi.chart, rows)


# linear maps

def _square(A: RationalMatrix, dim: int):
    if not isinstance(A, RationalMatrix):
        A = RationalMatrix(A)
    if A.shape != (dim, dim):
        raise TensorError(f"matrix shape {A.shape} does not match chart dimension {dim}")
    return A


def pullback_function(A: RationalMatrix, f: Polynomial, chart=None) -> Polynomial:
    """(f* K)(x) = K(A x), returned on ``chart`` (default: K's own chart)."""
    A = _square(A, len(f.chart))
    return f.compose_linear(A, chart)


def pullback_bivector(A: RationalMatrix, pi: Bivector, chart=None) -> Bivector:
    """(f* pi)^{jk}(x) = sum_{rs} (A^-1)_{jr} (A^-1)_{ks} pi^{rs}(A x) for f(x) = A x."""
    A = _square(A, pi.chart.dim)
    Ainv = A.inverse()
    target = _as_chart(chart) if chart is not None else pi.chart
    dim = pi.chart.dim
    moved = [[p.compose_linear(A, target.names) for p in r] for r in pi.entries]
    rows = [[target.zero()] * dim for _ in range(dim)]
    for j in range(dim):
        for k in range(j + 1, dim):
            t = target.zero()
            for r in range(dim):
                a = Ainv[j, r]
                if not a:
                    continue
                for s in range(dim):
                    b = Ainv[k, s]
                    if b and moved[r][s]:
                        t = t + moved[r][s].scale(a * b)
            rows[j][k] = t
            rows[k][j] = -t
    return Bivector(target, rows)


def pullback_form(A: RationalMatrix, rho: KForm, chart=None) -> KForm:
    """(f* rho)_{jk} = sum_{rs} rho_{rs}(A x) A_{rj} A_{sk}; constant R gives A^t R A."""
    dim = rho.chart.dim
    A = _square(A, dim)
    target = _as_chart(chart) if chart is not None else rho.chart
    if rho.degree == 0:
        return KForm.function(rho.scalar().compose_linear(A, target.names), target)
    moved = {idx: p.compose_linear(A, target.names) for idx, p in rho.coeffs.items()}
    if rho.degree == 1:
        comps = []
        for j in range(dim):
            t = target.zero()
            for (r,), p in moved.items():
                if A[r, j]:
                    t = t + p.scale(A[r, j])
            comps.append(t)
        return KForm.one_form(target, comps)
    if rho.degree == 2:
        acc = {}
        for j in range(dim):
            for k in range(j + 1, dim):
                t = target.zero()
                for (r, s), p in moved.items():
                    c = A[r, j] * A[s, k] - A[s, j] * A[r, k]
                    if c:
                        t = t + p.scale(c)
                if t:
                    acc[(j, k)] = t
        return KForm(target, 2, acc)
    raise TensorError("pullback_form supports degrees 0..2")


def pushforward_vf(A: RationalMatrix, X: VectorField, chart=None) -> VectorField:
    """(f_* X)(Y) = A X(A^-1 Y) for f(x) = A x."""
    A = _square(A, X.chart.dim)
    Ainv = A.inverse()
    target = _as_chart(chart) if chart is not None else X.chart
    moved = [c.compose_linear(Ainv, target.names) for c in X.components]
    comps = []
    for j in range(X.chart.dim):
        t = target.zero()
        for k, c in enumerate(moved):
            if A[j, k] and c:
                t = t + c.scale(A[j, k])
        comps.append(t)
    return VectorField(target, comps)


def standard_bivector(chart) -> Bivector:
    """[[0, I], [-I, 0]] on a chart ordered (q1..qn, p1..pn)."""
    chart = _as_chart(chart)
    if chart.dim % 2:
        raise TensorError("standard bivector needs an even-dimensional chart")
    n = chart.dim // 2
    rows = [[0] * chart.dim for _ in range(chart.dim)]
    for i in range(n):
        rows[i][n + i] = 1
        rows[n + i][i] = -1
    return Bivector(chart, rows)


def liouville_form(chart) -> KForm:
    """theta = sum p_i dq^i on (q1..qn, p1..pn)."""
    chart = _as_chart(chart)
    n = chart.dim // 2
    return KForm(chart, 1, {(i,): chart.var(chart.names[n + i]) for i in range(n)})


def determinant_poly(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant of a square polynomial matrix by cofactor expansion (small d only)."""
    n = len(rows)
    if n == 0:
        raise TensorError("empty matrix")
    chart = rows[0][0].chart
    if n == 1:
        return rows[0][0]

    def rec(cols: tuple, r: int) -> Polynomial:
        if r == n:
            return Polynomial.constant(chart, 1)
        total = Polynomial.zero(chart)
        for pos, c in enumerate(cols):
            e = rows[r][c]
            if not e:
                continue
            minor = rec(cols[:pos] + cols[pos + 1:], r + 1)
            total = total + (e * minor if pos % 2 == 0 else -(e * minor))
        return total

    return rec(tuple(range(n)), 0)
