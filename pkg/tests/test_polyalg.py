from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pcx.polyalg import (
    ChartMismatchError,
    ParseError,
    Polynomial,
    PolyError,
    UnknownVariableError,
    diff,
    evaluate,
    parse_poly,
    poly_arith,
    to_rational,
)
from pcx.systems import hopf_integrals

from conftest import PHASE, polynomials, small_rationals

XYZ = ("x", "y", "z")
C = PHASE.names


def P(text, chart=C):
    return parse_poly(text, chart)


# parser

def test_free_particle_hamiltonian_parses():
    H = P("1/2*p1^2 + 1/2*p2^2")
    assert H.terms == {(0, 0, 2, 0): Fraction(1, 2), (0, 0, 0, 2): Fraction(1, 2)}


def test_zero_has_empty_term_map():
    assert P("0").terms == {}
    assert P("0").is_zero()


def test_angular_integral_parses_to_two_terms():
    W1 = P("q2*p1 - q1*p2")
    assert W1 == hopf_integrals(PHASE)["W1"]
    assert W1.terms == {(0, 1, 1, 0): 1, (1, 0, 0, 1): -1}


@pytest.mark.parametrize("text,value", [
    ("2^3*q1", "8*q1"),
    ("(q1 + p1)*(q1 - p1)", "q1^2 - p1^2"),
    ("-3/6*q2", "-1/2*q2"),
    ("  q1*  q1 ", "q1^2"),
    ("(q1)^0", "1"),
])
def test_normalisation(text, value):
    assert str(P(text)) == value


@pytest.mark.parametrize("text,offset", [
    ("-p1", 1),
    ("q1 +", 4),
    ("q1**2", 3),
    ("2q1", 1),
    ("(q1", 3),
    ("1/0", 2),
])
def test_syntax_errors_report_offset(text, offset):
    with pytest.raises(ParseError) as info:
        P(text)
    assert info.value.offset == offset


def test_unknown_variable_is_named():
    with pytest.raises(UnknownVariableError, match="x1"):
        P("q1 + x1")


def test_printer_prefixes_leading_negative_coefficient():
    # the grammar only allows a sign on a number, so a negative leading term prints as -1*...
    s = str(P("q2*p1 - q1*p2"))
    assert s == "-1*q1*p2 + q2*p1"
    assert P(s) == P("q2*p1 - q1*p2")


# arithmetic

def test_hopf_identity_is_zero():
    W = hopf_integrals(PHASE)
    z = poly_arith("sub", W["W1"] ** 2 + W["W2"] ** 2 + W["W3"] ** 2, W["W4"] ** 2)
    assert z.is_zero()


def test_multiplicative_identity():
    p = P("p1")
    assert poly_arith("mul", p, Polynomial.constant(C, 1)) == p


def test_difference_of_squares():
    assert poly_arith("mul", P("q1 + p1"), P("q1 - p1")) == P("q1^2 - p1^2")


def test_scale_and_neg():
    p = P("q1 - 2*p2")
    assert poly_arith("scale", p, Fraction(-1, 2)) == P("-1/2*q1 + p2")
    assert poly_arith("neg", p) == P("-1*q1 + 2*p2")


def test_chart_mismatch():
    with pytest.raises(ChartMismatchError):
        P("q1") + parse_poly("x", XYZ)


def test_unknown_operation():
    with pytest.raises(PolyError):
        poly_arith("div", P("q1"), P("q1"))


# calculus and evaluation

def test_diff_examples():
    assert diff(P("1/2*p1^2"), "p1") == P("p1")
    assert diff(P("q2*p1 - q1*p2"), "q1") == P("-1*p2")
    assert diff(P("7/3"), "q2").is_zero()
    with pytest.raises(PolyError):
        diff(P("q1"), "w")


def test_eval_examples():
    chart = ("p1", "p2", "p3")
    C1 = parse_poly("p1^2 + p2^2 + p3^2", chart)
    assert evaluate(C1, {"p1": 1, "p2": 2, "p3": 2}) == 9
    W4 = hopf_integrals(PHASE)["W4"]
    assert evaluate(W4, {"q1": 1, "q2": 0, "p1": 0, "p2": 1}) == 1
    f = P("3*q1*p2 - 5/7")
    assert evaluate(f, dict.fromkeys(C, 0)) == Fraction(-5, 7)


def test_eval_float_point_gives_float():
    v = evaluate(P("q1^2 + 1/2"), {"q1": 0.5, "q2": 0.0, "p1": 0.0, "p2": 0.0})
    assert isinstance(v, float) and v == 0.75


def test_eval_missing_assignment():
    with pytest.raises(PolyError):
        evaluate(P("q1 + p1"), {"q1": 1})


def test_to_rational_accepts_strings_and_ints():
    assert to_rational("3/6") == Fraction(1, 2)
    assert to_rational(4) == 4
    with pytest.raises((PolyError, ValueError)):
        to_rational("abc")


# properties

poly3 = polynomials(XYZ)


@settings(max_examples=100, deadline=None)
@given(poly3)
def test_print_parse_round_trip(a):
    assert parse_poly(str(a), XYZ) == a


@settings(max_examples=60, deadline=None)
@given(poly3, poly3, poly3)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@settings(max_examples=60, deadline=None)
@given(poly3, poly3, st.sampled_from(XYZ))
def test_leibniz(a, b, v):
    assert diff(a * b, v) == diff(a, v) * b + a * diff(b, v)


@settings(max_examples=60, deadline=None)
@given(poly3, st.sampled_from(XYZ), st.sampled_from(XYZ))
def test_clairaut(p, u, v):
    assert diff(diff(p, u), v) == diff(diff(p, v), u)


@settings(max_examples=60, deadline=None)
@given(poly3, poly3, st.lists(small_rationals, min_size=3, max_size=3))
def test_eval_is_ring_homomorphism(a, b, pt):
    point = dict(zip(XYZ, pt))
    assert evaluate(a + b, point) == evaluate(a, point) + evaluate(b, point)
    assert evaluate(a * b, point) == evaluate(a, point) * evaluate(b, point)
