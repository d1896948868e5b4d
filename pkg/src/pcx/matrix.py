"""Dense exact matrices over the rationals, with row reduction."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .polyalg import format_rational, to_rational


class MatrixError(ValueError):
    pass


class SingularMatrixError(MatrixError):
    pass


class RationalMatrix:
    """Immutable rows x cols matrix of Fractions."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(to_rational(x) for x in r) for r in rows)
        if data and len({len(r) for r in data}) != 1:
            raise MatrixError("ragged matrix")
        self._rows = data

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int | None = None) -> "RationalMatrix":
        c = r if c is None else c
        return cls([[0] * c for _ in range(r)])

    @classmethod
    def diag(cls, values: Sequence) -> "RationalMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def blocks(cls, grid: Sequence[Sequence["RationalMatrix"]]) -> "RationalMatrix":
        rows = []
        for brow in grid:
            h = brow[0].nrows
            for i in range(h):
                rows.append([x for b in brow for x in b.rows[i]])
        return cls(rows)

    @classmethod
    def blockdiag(cls, *mats: "RationalMatrix") -> "RationalMatrix":
        n = sum(m.nrows for m in mats)
        out = [[Fraction(0)] * n for _ in range(n)]
        off = 0
        for m in mats:
            for i in range(m.nrows):
                for j in range(m.ncols):
                    out[off + i][off + j] = m[i, j]
            off += m.nrows
        return cls(out)

    @classmethod
    def from_json(cls, data) -> "RationalMatrix":
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise MatrixError("matrix JSON must be a list of rows")
        return cls(data)

    def to_json(self) -> list:
        return [[format_rational(x) for x in r] for r in self._rows]

    @property
    def rows(self) -> tuple:
        return self._rows

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return len(self._rows[0]) if self._rows else 0

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"RationalMatrix({self.to_json()})"

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self._rows)) if self._rows else self

    @property
    def T(self) -> "RationalMatrix":
        return self.transpose()

    def _check_same(self, other):
        if self.shape != other.shape:
            raise MatrixError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same(other)
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same(other)
        return RationalMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix([[-a for a in r] for r in self._rows])

    def scale(self, c) -> "RationalMatrix":
        c = to_rational(c)
        return RationalMatrix([[a * c for a in r] for r in self._rows])

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise MatrixError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._rows))
        return RationalMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self._rows])

    def apply(self, v: Sequence) -> list:
        return [sum((a * x for a, x in zip(r, v)), 0) for r in self._rows]

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.transpose()

    def is_antisymmetric(self) -> bool:
        return self.is_square() and self == -self.transpose()

    def is_zero(self) -> bool:
        return all(not x for r in self._rows for x in r)

    def det(self) -> Fraction:
        if not self.is_square():
            raise MatrixError("determinant of a non-square matrix")
        m = [list(r) for r in self._rows]
        n = len(m)
        det = Fraction(1)
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det *= m[c][c]
            for r in range(c + 1, n):
                f = m[r][c] / m[c][c]
                if f:
                    for k in range(c, n):
                        m[r][k] -= f * m[c][k]
        return det

    def inverse(self) -> "RationalMatrix":
        if not self.is_square():
            raise MatrixError("inverse of a non-square matrix")
        n = self.nrows
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._rows)]
        red, pivots = rref(aug)
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise SingularMatrixError("matrix is singular")
        return RationalMatrix([r[n:] for r in red[:n]])

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "RationalMatrix":
        return RationalMatrix([r[c0:c1] for r in self._rows[r0:r1]])

    def pretty(self) -> str:
        cells = [[format_rational(x) for x in r] for r in self._rows]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form and pivot columns, exact."""
    m = [[to_rational(x) for x in r] for r in rows]
    if not m:
        return m, []
    nr, nc = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : M v = 0}, one vector per free column, in column order.

    Each basis vector has a 1 in its free column and zeros in the other free
    columns, so the basis is canonical for the given column order.
    """
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    red, pivots = rref(rows)
    n = len(red[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][f]
        basis.append(v)
    return basis


def solve_affine(rows: Sequence[Sequence], rhs: Sequence) -> tuple[list[Fraction] | None, list[list[Fraction]]]:
    """Solve M v = b exactly.

    Returns (particular, kernel). The particular solution has zeros on the
    free columns; it is None when the system is inconsistent.
    """
    if not rows:
        return [], []
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if n in pivots:
        return None, nullspace(rows)
    sol = [Fraction(0)] * n
    for i, pc in enumerate(pivots):
        sol[pc] = red[i][n]
    return sol, nullspace(rows)
