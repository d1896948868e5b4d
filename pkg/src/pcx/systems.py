"""Constructors for the concrete mechanical systems used throughout the package.

Everything takes exact rational parameters and returns polynomial objects on
fixed charts. Irrational constants are never formed here; callers pick
parameters whose radicands are rational squares.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Sequence

from .matrix import RationalMatrix
from .polyalg import Polynomial, to_rational
from .tensorcalc import Bivector, Chart, VectorField

SO3 = Chart(["m1", "m2", "m3"])
SO3_N = Chart(["n1", "n2", "n3"])
SO4 = Chart(["m12", "m13", "m14", "m23", "m24", "m34"])
SO4_N = Chart(["n12", "n13", "n14", "n23", "n24", "n34"])
E3 = Chart(["p1", "p2", "p3", "m1", "m2", "m3"])
E3_F = Chart(["F1", "F2", "F3", "F4", "F5", "F6"])
PAIRS = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


class ParameterError(ValueError):
    pass


def rational_sqrt(x) -> Fraction:
    """Exact square root of a non-negative rational square, else ParameterError."""
    x = to_rational(x)
    if x < 0:
        raise ParameterError(f"negative radicand {x}")
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n != x.numerator or d * d != x.denominator:
        raise ParameterError(f"{x} is not the square of a rational")
    return Fraction(n, d)


def phase_chart(n: int, q: str = "q", p: str = "p") -> Chart:
    return Chart([f"{q}{i + 1}" for i in range(n)] + [f"{p}{i + 1}" for i in range(n)])


def _lin(chart: Chart, coeffs: dict) -> Polynomial:
    out = chart.zero()
    for name, c in coeffs.items():
        out = out + chart.var(name).scale(c)
    return out


# so*(3)

def so3_bivector(chart: Chart = SO3, weights: Sequence = (1, 1, 1)) -> Bivector:
    """Lie-Poisson tensor [[0,-m3,m2],[m3,0,-m1],[-m2,m1,0]], entry k scaled by weights[k]."""
    m1, m2, m3 = chart.coords()
    w1, w2, w3 = (to_rational(w) for w in weights)
    z = chart.zero()
    return Bivector(chart, [
        [z, -m3.scale(w3), m2.scale(w2)],
        [m3.scale(w3), z, -m1.scale(w1)],
        [-m2.scale(w2), m1.scale(w1), z],
    ])


def euler_hamiltonian(I: Sequence, chart: Chart = SO3) -> Polynomial:
    I = [to_rational(x) for x in I]
    return sum(((v * v).scale(1 / (2 * i)) for v, i in zip(chart.coords(), I)), chart.zero())


def euler_field(I: Sequence, chart: Chart = SO3) -> VectorField:
    """Euler's rigid body field written from its closed form."""
    I1, I2, I3 = (to_rational(x) for x in I)
    m1, m2, m3 = chart.coords()
    return VectorField(chart, [
        (m2 * m3).scale((I2 - I3) / (I2 * I3)),
        (m3 * m1).scale((I3 - I1) / (I3 * I1)),
        (m1 * m2).scale((I1 - I2) / (I1 * I2)),
    ])


def euler_rescaling(I: Sequence) -> RationalMatrix:
    """diag(sqrt(I2 I3), sqrt(I1 I3), sqrt(I1 I2))."""
    I1, I2, I3 = (to_rational(x) for x in I)
    return RationalMatrix.diag([rational_sqrt(I2 * I3), rational_sqrt(I1 * I3), rational_sqrt(I1 * I2)])


def euler_pushed_field(I: Sequence, chart: Chart = SO3_N) -> VectorField:
    """Closed form of the rescaled Euler field in the n chart."""
    I1, I2, I3 = (to_rational(x) for x in I)
    n1, n2, n3 = chart.coords()
    P = I1 * I2 * I3
    return VectorField(chart, [
        (n2 * n3).scale((I2 - I3) / P),
        (n3 * n1).scale((I3 - I1) / P),
        (n1 * n2).scale((I1 - I2) / P),
    ])


def euler_transformed_K(I: Sequence, chart: Chart = SO3_N) -> Polynomial:
    I1, I2, I3 = (to_rational(x) for x in I)
    n1, n2, n3 = chart.coords()
    total = (n1 * n1).scale(1 / (I2 * I3)) + (n2 * n2).scale(1 / (I1 * I3)) + (n3 * n3).scale(1 / (I1 * I2))
    return total.scale(Fraction(-1, 2))


def euler_pulled_bivector(I: Sequence, chart: Chart = SO3) -> Bivector:
    I1, I2, I3 = (to_rational(x) for x in I)
    return so3_bivector(chart, (1 / I1, 1 / I2, 1 / I3))


# so*(4)

def so4_bivector(chart: Chart = SO4, J: Sequence | None = None) -> Bivector:
    """Lie-Poisson tensor of so*(4); with J given, the pulled-back tensor pattern instead."""
    m12, m13, m14, m23, m24, m34 = chart.coords()
    if J is None:
        w = [Fraction(1)] * 4
    else:
        w = [to_rational(j) ** 2 for j in J]
    J1, J2, J3, J4 = w
    z = chart.zero()
    up = [
        [z, -m23.scale(J1), -m24.scale(J1), m13.scale(J2), m14.scale(J2), z],
        [z, z, -m34.scale(J1), -m12.scale(J3), z, m14.scale(J3)],
        [z, z, z, z, -m12.scale(J4), -m13.scale(J4)],
        [z, z, z, z, -m34.scale(J2), m24.scale(J3)],
        [z, z, z, z, z, -m23.scale(J4)],
        [z] * 6,
    ]
    return Bivector.from_upper(chart, up)


def manakov_hamiltonian(J: Sequence, chart: Chart = SO4) -> Polynomial:
    """H = 1/2 sum a_ij m_ij^2 with a_ij = J_l^2 + J_k^2, {i,j,l,k} = {1,2,3,4}."""
    Jsq = [to_rational(j) ** 2 for j in J]
    H = chart.zero()
    for (i, j), v in zip(PAIRS, chart.coords()):
        l, k = [x for x in (1, 2, 3, 4) if x not in (i, j)]
        H = H + (v * v).scale((Jsq[l - 1] + Jsq[k - 1]) / 2)
    return H


def manakov_field(J: Sequence, chart: Chart = SO4) -> VectorField:
    """The Euler-Manakov field written component by component."""
    a1, a2, a3, a4 = (to_rational(j) ** 2 for j in J)
    m12, m13, m14, m23, m24, m34 = chart.coords()
    return VectorField(chart, [
        (m13 * m23 + m14 * m24).scale(a1 - a2),
        (m12 * m23 - m14 * m34).scale(a3) + (m14 * m34 - m12 * m23).scale(a1),
        (m12 * m24 + m13 * m34).scale(a4 - a1),
        (m12 * m13 + m24 * m34).scale(a2 - a3),
        (m23 * m34 - m12 * m14).scale(a4) + (m12 * m14 - m23 * m34).scale(a2),
        (m13 * m14 + m23 * m24).scale(a3 - a4),
    ])


def manakov_rescaling(J: Sequence) -> RationalMatrix:
    Js = [to_rational(j) for j in J]
    return RationalMatrix.diag([1 / (Js[i - 1] * Js[j - 1]) for i, j in PAIRS])


def manakov_transformed_K(J: Sequence, chart: Chart = SO4_N) -> Polynomial:
    Jsq = [to_rational(j) ** 2 for j in J]
    K = chart.zero()
    for (i, j), v in zip(PAIRS, chart.coords()):
        K = K + (v * v).scale(Jsq[i - 1] * Jsq[j - 1])
    return K.scale(Fraction(-1, 2))


def so4_casimirs(chart: Chart = SO4) -> tuple[Polynomial, Polynomial]:
    m12, m13, m14, m23, m24, m34 = chart.coords()
    C1 = sum((v * v for v in chart.coords()), chart.zero())
    C2 = m12 * m34 + m14 * m23 - m13 * m24
    return C1, C2


def manakov_integral(J: Sequence, chart: Chart = SO4) -> Polynomial:
    """I1 = sum over pairs (ij) of J_k^2 J_l^2 m_ij^2, {k,l} the complement."""
    Jsq = [to_rational(j) ** 2 for j in J]
    out = chart.zero()
    for (i, j), v in zip(PAIRS, chart.coords()):
        k, l = [x for x in (1, 2, 3, 4) if x not in (i, j)]
        out = out + (v * v).scale(Jsq[k - 1] * Jsq[l - 1])
    return out


# e*(3) and the Clebsch case

def e3_bivector(chart: Chart = E3) -> Bivector:
    p1, p2, p3, m1, m2, m3 = chart.coords()
    z = chart.zero()
    return Bivector(chart, [
        [z, z, z, z, -p3, p2],
        [z, z, z, p3, z, -p1],
        [z, z, z, -p2, p1, z],
        [z, -p3, p2, z, -m3, m2],
        [p3, z, -p1, m3, z, -m1],
        [-p2, p1, z, -m2, m1, z],
    ])


def e3_casimirs(chart: Chart = E3) -> tuple[Polynomial, Polynomial]:
    p1, p2, p3, m1, m2, m3 = chart.coords()
    return p1 * p1 + p2 * p2 + p3 * p3, m1 * p1 + m2 * p2 + m3 * p3


def clebsch_hamiltonian(omega: Sequence, chart: Chart = E3) -> Polynomial:
    w1, w2, w3 = (to_rational(w) for w in omega)
    p1, p2, p3, m1, m2, m3 = chart.coords()
    return (m1 * m1 + m2 * m2 + m3 * m3 + (p1 * p1).scale(w1) + (p2 * p2).scale(w2) + (p3 * p3).scale(w3)).scale(Fraction(1, 2))


def clebsch_integral(omega: Sequence, chart: Chart = E3) -> Polynomial:
    w1, w2, w3 = (to_rational(w) for w in omega)
    p1, p2, p3, m1, m2, m3 = chart.coords()
    return (
        (m1 * m1).scale(w1) + (m2 * m2).scale(w2) + (m3 * m3).scale(w3)
        - (p1 * p1).scale(w2 * w3) - (p2 * p2).scale(w3 * w1) - (p3 * p3).scale(w1 * w2)
    ).scale(Fraction(1, 2))


def clebsch_field(omega: Sequence, chart: Chart = E3) -> VectorField:
    w1, w2, w3 = (to_rational(w) for w in omega)
    p1, p2, p3, m1, m2, m3 = chart.coords()
    return VectorField(chart, [
        m3 * p2 - m2 * p3,
        m1 * p3 - m3 * p1,
        m2 * p1 - m1 * p2,
        (p2 * p3).scale(w3 - w2),
        (p1 * p3).scale(w1 - w3),
        (p1 * p2).scale(w2 - w1),
    ])


def eta_tilde(omega: Sequence, chart: Chart = E3) -> Bivector:
    """The second Poisson tensor of the Clebsch case, built from its upper triangle."""
    w1, w2, w3 = (to_rational(w) for w in omega)
    p1, p2, p3, m1, m2, m3 = chart.coords()
    z = chart.zero()
    up = [
        [z, -m3, m2, z, z, z],
        [z, z, -m1, p3.scale(w1 - w2), z, p1.scale(w2 - w1)],
        [z, z, z, p2.scale(w3 - w1), p1.scale(w1 - w3), z],
        [z, z, z, z, m3.scale(w3 - w1), m2.scale(w1 - w2)],
        [z] * 6,
        [z] * 6,
    ]
    return Bivector.from_upper(chart, up)


def kirchhoff_constants(omega: Sequence, eps, a) -> dict:
    """A = sqrt(w1 - w2), B = sqrt(w1 - w3 - 4 eps^2), C = w1 - w3, checked for rationality."""
    w1, w2, w3 = (to_rational(w) for w in omega)
    eps, a = to_rational(eps), to_rational(a)
    if not (w1 > w2 > w3 >= 0):
        raise ParameterError("need omega1 > omega2 > omega3 >= 0")
    if not eps or not a:
        raise ParameterError("eps and a must be nonzero")
    A = rational_sqrt(w1 - w2)
    B = rational_sqrt(w1 - w3 - 4 * eps * eps)
    C = w1 - w3
    return {"A": A, "B": B, "C": C, "eps": eps, "a": a}


def kirchhoff_matrix(omega: Sequence, eps, a) -> RationalMatrix:
    """x = Phi F, rows (p1, p2, p3, m1, m2, m3)."""
    k = kirchhoff_constants(omega, eps, a)
    A, B, C, e, a = k["A"], k["B"], k["C"], k["eps"], k["a"]
    h = Fraction(1, 2)
    return RationalMatrix([
        [a, 0, -a / (2 * e) * B, 0, 0, 0],
        [0, 0, 0, 0, h * A, 0],
        [0, 0, 0, h * B, 0, e],
        [0, 0, 0, -e * A, 0, h * A * B],
        [0, -a / (2 * e) * C, 0, 0, 0, 0],
        [-a / (2 * e) * A * B, 0, -a * A, 0, 0, 0],
    ])


def kirchhoff_determinant(omega: Sequence, eps, a) -> Fraction:
    k = kirchhoff_constants(omega, eps, a)
    return -((k["a"] / (4 * k["eps"])) * k["A"] * k["C"]) ** 3


def kirchhoff_C1_in_F(omega: Sequence, eps, a, chart: Chart = E3_F) -> Polynomial:
    """C1 written in the F coordinates, term by term."""
    k = kirchhoff_constants(omega, eps, a)
    A, B, e, a = k["A"], k["B"], k["eps"], k["a"]
    F1, F2, F3, F4, F5, F6 = chart.coords()
    return (
        (F1 * F1).scale(a * a)
        + (F3 * F3).scale((a / (2 * e) * B) ** 2)
        + (F4 * F4).scale(B * B / 4)
        + (F5 * F5).scale(A * A / 4)
        + (F6 * F6).scale(e * e)
        - (F1 * F3).scale(a * a / e * B)
        + (F4 * F6).scale(e * B)
    )


# two degree-of-freedom oscillators

def hopf_integrals(chart: Chart | None = None) -> dict:
    chart = chart or phase_chart(2)
    q1, q2, p1, p2 = chart.coords()
    h = Fraction(1, 2)
    return {
        "W1": q2 * p1 - q1 * p2,
        "W2": q1 * q2 + p1 * p2,
        "W3": (q1 * q1 + p1 * p1 - q2 * q2 - p2 * p2).scale(h),
        "W4": (p1 * p1 + p2 * p2 + q1 * q1 + q2 * q2).scale(h),
    }


def block_matrix(a, b, c, d) -> RationalMatrix:
    """[[a, b], [c, d]] from four n x n blocks given as nested lists."""
    return RationalMatrix.blocks([[RationalMatrix(a), RationalMatrix(b)], [RationalMatrix(c), RationalMatrix(d)]])


def block_params_matrix(p: dict) -> RationalMatrix:
    """4x4 A from named entries a11..d22."""
    g = lambda s: [[p[f"{s}11"], p[f"{s}12"]], [p[f"{s}21"], p[f"{s}22"]]]
    return block_matrix(g("a"), g("b"), g("c"), g("d"))
