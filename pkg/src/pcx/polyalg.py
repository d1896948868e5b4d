"""Exact rational numbers and sparse multivariate polynomials.

A polynomial lives on a chart, an ordered tuple of variable names. Terms are
stored as a map from dense exponent tuples (one slot per chart variable) to
nonzero ``Fraction`` coefficients, so equality of two polynomials is plain
dict equality.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "Polynomial",
    "PolyError",
    "ParseError",
    "UnknownVariableError",
    "ChartMismatchError",
    "to_rational",
    "format_rational",
    "parse_poly",
    "poly_arith",
    "diff",
    "evaluate",
    "grlex_key",
]


class PolyError(ValueError):
    pass


class ParseError(PolyError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


class UnknownVariableError(PolyError):
    def __init__(self, name: str, chart: Sequence[str]):
        super().__init__(f"unknown variable {name!r} (chart is {list(chart)})")
        self.name = name


class ChartMismatchError(PolyError):
    pass


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and strings like "-3/2" to an exact Fraction.

    Floats are refused: symbolic paths never see them.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise PolyError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(r: Fraction) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def grlex_key(exps: tuple) -> tuple:
    # larger key = earlier in printed order
    return (sum(exps), exps)


class Polynomial:
    """Immutable polynomial with Fraction coefficients over a fixed chart."""

    __slots__ = ("_chart", "_terms", "_hash")

    def __init__(self, chart: Sequence[str], terms: Mapping[tuple, object] | None = None):
        chart = tuple(chart)
        n = len(chart)
        clean: dict[tuple, Fraction] = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != n or any(e < 0 for e in exps):
                    raise PolyError(f"bad exponent tuple {exps} for chart of size {n}")
                c = to_rational(c)
                if c:
                    clean[exps] = clean.get(exps, Fraction(0)) + c
                    if not clean[exps]:
                        del clean[exps]
        self._chart = chart
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, chart: tuple, terms: dict) -> "Polynomial":
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p._chart = chart
        p._terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, chart: Sequence[str]) -> "Polynomial":
        return cls._raw(tuple(chart), {})

    @classmethod
    def constant(cls, chart: Sequence[str], c) -> "Polynomial":
        chart = tuple(chart)
        c = to_rational(c)
        return cls._raw(chart, {(0,) * len(chart): c} if c else {})

    @classmethod
    def var(cls, chart: Sequence[str], name: str) -> "Polynomial":
        chart = tuple(chart)
        if name not in chart:
            raise UnknownVariableError(name, chart)
        exps = tuple(1 if v == name else 0 for v in chart)
        return cls._raw(chart, {exps: Fraction(1)})

    @classmethod
    def parse(cls, text: str, chart: Sequence[str]) -> "Polynomial":
        return parse_poly(text, chart)

    # accessors
    @property
    def chart(self) -> tuple:
        return self._chart

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self) -> list[dict]:
        """Terms as (sparse exponent mapping, coefficient), in printed order."""
        out = []
        for exps in sorted(self._terms, key=grlex_key, reverse=True):
            mono = {v: e for v, e in zip(self._chart, exps) if e}
            out.append((mono, self._terms[exps]))
        return out

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * len(self._chart), Fraction(0))

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def coefficient(self, exps: tuple) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    # comparisons
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._chart == other._chart and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == Polynomial.constant(self._chart, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._chart, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other._chart != self._chart:
                raise ChartMismatchError(f"chart {other._chart} does not match {self._chart}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self._chart, other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial._raw(self._chart, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self._chart, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = to_rational(c)
        if not c:
            return Polynomial.zero(self._chart)
        return Polynomial._raw(self._chart, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms: dict[tuple, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Polynomial._raw(self._chart, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolyError("only non-negative integer powers are supported")
        result = Polynomial.constant(self._chart, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # calculus and evaluation
    def diff(self, var: str) -> "Polynomial":
        if var not in self._chart:
            raise UnknownVariableError(var, self._chart)
        i = self._chart.index(var)
        terms = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                terms[ne] = c * k
        return Polynomial._raw(self._chart, terms)

    def diff_index(self, i: int) -> "Polynomial":
        return self.diff(self._chart[i])

    def eval(self, point):
        """Evaluate at a point given as a mapping or a sequence in chart order.

        All-rational input gives an exact Fraction; any float gives a float.
        """
        values = self._point_values(point)
        use_float = any(isinstance(v, float) for v in values)
        if not use_float:
            values = [to_rational(v) for v in values]
        total = 0.0 if use_float else Fraction(0)
        for e, c in self._terms.items():
            t = float(c) if use_float else c
            for v, k in zip(values, e):
                if k:
                    t = t * v ** k
            total += t
        return total

    def _point_values(self, point) -> list:
        if isinstance(point, Mapping):
            missing = [v for v in self._chart if v not in point]
            if missing:
                raise PolyError(f"point is missing values for {missing}")
            return [point[v] for v in self._chart]
        values = list(point)
        if len(values) != len(self._chart):
            raise PolyError(f"point has {len(values)} values, chart has {len(self._chart)}")
        return values

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Compose: replace chart variable i by images[i] (all on one target chart)."""
        if len(images) != len(self._chart):
            raise PolyError("need one image per chart variable")
        if not images:
            return Polynomial.constant((), self.constant_term())
        target = images[0].chart
        for img in images:
            if img.chart != target:
                raise ChartMismatchError("substitution images must share a chart")
        powers: list[dict[int, Polynomial]] = [{0: Polynomial.constant(target, 1)} for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        out = Polynomial.zero(target)
        for e, c in self._terms.items():
            t = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            out = out + t
        return out

    def compose_linear(self, matrix, chart: Sequence[str] | None = None) -> "Polynomial":
        """Return x -> p(M x), with the result on ``chart`` (default: same chart)."""
        chart = tuple(chart) if chart is not None else self._chart
        rows = matrix.rows if hasattr(matrix, "rows") else matrix
        if len(rows) != len(self._chart) or any(len(r) != len(chart) for r in rows):
            raise PolyError("matrix shape does not fit the charts")
        images = []
        for r in rows:
            terms = {}
            for j, a in enumerate(r):
                a = to_rational(a)
                if a:
                    terms[tuple(1 if k == j else 0 for k in range(len(chart)))] = a
            images.append(Polynomial._raw(chart, terms))
        return self.substitute(images)

    def with_chart(self, chart: Sequence[str]) -> "Polynomial":
        """Rename/reorder onto another chart. Every used variable must exist there."""
        chart = tuple(chart)
        idx = []
        for v in self._chart:
            idx.append(chart.index(v) if v in chart else None)
        terms = {}
        for e, c in self._terms.items():
            ne = [0] * len(chart)
            for i, k in enumerate(e):
                if k:
                    if idx[i] is None:
                        raise UnknownVariableError(self._chart[i], chart)
                    ne[idx[i]] = k
            terms[tuple(ne)] = c
        return Polynomial._raw(chart, terms)

    def rename(self, chart: Sequence[str]) -> "Polynomial":
        """Same exponent tuples, new variable names (positional relabel)."""
        chart = tuple(chart)
        if len(chart) != len(self._chart):
            raise ChartMismatchError("rename needs a chart of the same size")
        return Polynomial._raw(chart, dict(self._terms))

    # printing
    def to_str(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for n, exps in enumerate(sorted(self._terms, key=grlex_key, reverse=True)):
            c = self._terms[exps]
            factors = []
            for v, k in zip(self._chart, exps):
                if k == 1:
                    factors.append(v)
                elif k > 1:
                    factors.append(f"{v}^{k}")
            mag = abs(c)
            if not factors:
                body = format_rational(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = format_rational(mag) + "*" + "*".join(factors)
            if n == 0:
                if c < 0:
                    # the grammar has no unary minus on identifiers
                    body = "-" + (body if not factors or mag != 1 else "1*" + body)
                parts.append(body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r}, chart={list(self._chart)})"


# parser

class _Parser:
    def __init__(self, text: str, chart: tuple):
        self.text = text
        self.chart = chart
        self.pos = 0
        # byte offsets for error reports
        self._byte = [0]
        for ch in text:
            self._byte.append(self._byte[-1] + len(ch.encode("utf-8")))

    def error(self, msg: str):
        raise ParseError(msg, self._byte[min(self.pos, len(self.text))])

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def uint(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isascii() and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an unsigned integer")
        return int(self.text[start:self.pos])

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.peek():
            self.error(f"unexpected character {self.text[self.pos]!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek() == "*":
            self.pos += 1
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        b = self.base()
        if self.peek() == "^":
            self.pos += 1
            b = b ** self.uint()
        return b

    def base(self) -> Polynomial:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            p = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return p
        if ch == "-" or (ch.isascii() and ch.isdigit()):
            return Polynomial.constant(self.chart, self.rational())
        if ch and (ch.isascii() and (ch.isalpha() or ch == "_")):
            start = self.pos
            self.pos += 1
            while self.pos < len(self.text) and self.text[self.pos].isascii() and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"
            ):
                self.pos += 1
            name = self.text[start:self.pos]
            if name not in self.chart:
                raise UnknownVariableError(name, self.chart)
            return Polynomial.var(self.chart, name)
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected character {ch!r}")

    def rational(self) -> Fraction:
        neg = False
        if self.peek() == "-":
            neg = True
            self.pos += 1
        num = self.uint()
        den = 1
        if self.peek() == "/":
            self.pos += 1
            self.skip()
            at = self.pos
            den = self.uint()
            if den == 0:
                self.pos = at
                self.error("zero denominator")
        r = Fraction(num, den)
        return -r if neg else r


def parse_poly(text: str, chart: Sequence[str]) -> Polynomial:
    if not isinstance(text, str):
        raise TypeError("polynomial text must be a string")
    return _Parser(text, tuple(chart)).parse()


def poly_arith(op: str, a: Polynomial, b=None) -> Polynomial:
    if op == "add":
        return a + a._coerce(b)
    if op == "sub":
        return a - a._coerce(b)
    if op == "mul":
        return a * a._coerce(b)
    if op == "neg":
        return -a
    if op == "scale":
        return a.scale(b)
    raise PolyError(f"unknown operation {op!r}")


def diff(p: Polynomial, var: str) -> Polynomial:
    return p.diff(var)


def evaluate(p: Polynomial, point):
    return p.eval(point)


def polys(texts: Iterable[str], chart: Sequence[str]) -> list[Polynomial]:
    return [parse_poly(t, chart) for t in texts]
