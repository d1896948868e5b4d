from fractions import Fraction

import pytest
from hypothesis import strategies as st

from pcx.polyalg import Polynomial
from pcx.systems import E3, SO3, SO4, e3_bivector, eta_tilde, phase_chart, so3_bivector, so4_bivector
from pcx.tensorcalc import Bivector, standard_bivector

PHASE = phase_chart(2)

small_rationals = st.builds(
    Fraction,
    st.integers(min_value=-5, max_value=5),
    st.integers(min_value=1, max_value=4),
)


@st.composite
def polynomials(draw, chart=("x", "y", "z"), max_deg=3, max_terms=5):
    chart = tuple(chart)
    n = draw(st.integers(min_value=0, max_value=max_terms))
    terms = {}
    for _ in range(n):
        exps = draw(st.lists(st.integers(0, max_deg), min_size=len(chart), max_size=len(chart)))
        if sum(exps) > max_deg:
            continue
        terms[tuple(exps)] = draw(small_rationals)
    return Polynomial(chart, terms)


@st.composite
def matrices(draw, n, nonsingular=False):
    from pcx.matrix import RationalMatrix
    ints = st.integers(min_value=-3, max_value=3)
    M = RationalMatrix(draw(st.lists(st.lists(ints, min_size=n, max_size=n), min_size=n, max_size=n)))
    if nonsingular:
        from hypothesis import assume
        assume(M.det() != 0)
    return M


def structures() -> dict:
    """Five Poisson structures over several charts, keyed by name."""
    return {
        "so3": so3_bivector(SO3),
        "so4": so4_bivector(SO4),
        "e3": e3_bivector(E3),
        "eta": eta_tilde((6, 2, 1), E3),
        "standard": standard_bivector(PHASE),
    }


def corrupt(pi: Bivector) -> Bivector:
    """Add x0 to the (0, 1) entry. Sign flips are not enough: every sign pattern of the so3 constants is a Lie algebra."""
    n = pi.chart.dim
    rows = [[pi[i, j] for j in range(n)] for i in range(n)]
    x0 = pi.chart.coords()[0]
    rows[0][1] = rows[0][1] + x0
    rows[1][0] = -rows[0][1]
    return Bivector(pi.chart, rows)


def flip_sign(pi: Bivector, i: int, j: int) -> Bivector:
    n = pi.chart.dim
    rows = [[pi[a, b] for b in range(n)] for a in range(n)]
    rows[i][j], rows[j][i] = -rows[i][j], -rows[j][i]
    return Bivector(pi.chart, rows)


def random_poly(rng, chart, max_terms=4, max_deg=3) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = [0] * chart.dim
        for _ in range(rng.randint(1, max_deg)):
            e[rng.randrange(chart.dim)] += 1
        terms[tuple(e)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Polynomial(chart.names, terms)


@pytest.fixture
def phase():
    return PHASE
