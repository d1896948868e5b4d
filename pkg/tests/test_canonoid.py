from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pcx.canonoid import (
    CanonoidError,
    check_canonoid,
    gamma_nullspace,
    gamma_of,
    in_span,
    omega2,
    quadratic_poly,
    rescaling_check,
    rescaling_matrix,
    standard_J,
    transformed_hamiltonian,
)
from pcx.matrix import RationalMatrix
from pcx.systems import block_matrix, hopf_integrals
from pcx.tensorcalc import d, ham_vf, interior, poisson_bracket, standard_bivector

from conftest import PHASE, matrices

J2 = [[0, 1], [-1, 0]]
Z2 = [[0, 0], [0, 0]]
I2 = [[1, 0], [0, 1]]
E2 = RationalMatrix([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])
E3 = RationalMatrix([[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]])
S_FREE = RationalMatrix.diag([0, 0, 1, 1])
S_OSC = RationalMatrix.identity(4)


def free_particle_map(m=2, l=1, n=3):
    det = Fraction(m * n - l * l)
    dblk = [[n / det, -l / det], [-l / det, m / det]]
    return block_matrix(I2, Z2, Z2, dblk)


def oscillator_map_a():
    one = [[1, 1], [1, -1]]
    return block_matrix(one, [[2, 0], [0, 1]], [[1, 0], [0, 2]], one)


def test_standard_J():
    assert standard_J(1) == RationalMatrix([[0, 1], [-1, 0]])
    J = standard_J(2)
    assert J == block_matrix(Z2, I2, [[-1, 0], [0, -1]], Z2)
    assert J @ J == RationalMatrix.identity(4).scale(-1)


def test_free_particle_is_strictly_canonoid():
    v = check_canonoid(free_particle_map(), S_FREE)
    assert v.is_canonoid and not v.is_canonical and v.scale_a is None
    assert v.C == RationalMatrix([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 2, 1], [0, 0, 1, 3]])
    t = transformed_hamiltonian(free_particle_map(), S_FREE)
    assert t.K == quadratic_poly(v.C, ("Q1", "Q2", "P1", "P2"))
    assert str(t.K) == "P1^2 + P1*P2 + 3/2*P2^2"
    assert t.H2 == PHASE.poly("3/10*p1^2 - 1/5*p1*p2 + 1/5*p2^2")


def test_oscillator_example_a():
    A = oscillator_map_a()
    v = check_canonoid(A, S_OSC)
    assert v.gamma == block_matrix(J2, Z2, Z2, J2)
    assert v.C == RationalMatrix([[-2, 3, 0, 3], [3, 4, -6, 0], [0, -6, 4, -3], [3, 0, -3, -2]])
    assert v.is_canonoid and not v.is_canonical
    assert transformed_hamiltonian(A, S_OSC).H2 == hopf_integrals(PHASE)["W1"]


def test_identity_map_keeps_hamiltonian():
    t = transformed_hamiltonian(RationalMatrix.identity(4), S_OSC)
    assert t.H2 == hopf_integrals(PHASE)["W4"]
    assert t.K == hopf_integrals(PHASE)["W4"].rename(["Q1", "Q2", "P1", "P2"])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=10, max_size=10))
def test_symplectic_maps_are_canonical(vals):
    # exp-free construction: A = [[I, B], [0, I]] with B symmetric is symplectic
    b = [[vals[0], vals[1]], [vals[1], vals[2]]]
    c = [[vals[3], vals[4]], [vals[4], vals[5]]]
    A = block_matrix(I2, b, Z2, I2) @ block_matrix(I2, Z2, c, I2)
    S = RationalMatrix([[vals[6], vals[7], 0, 0], [vals[7], vals[8], vals[9], 0],
                        [0, vals[9], 1, 0], [0, 0, 0, 2]])
    v = check_canonoid(A, S)
    assert v.is_canonoid and v.is_canonical and v.scale_a == 1


def test_errors():
    with pytest.raises(CanonoidError):
        check_canonoid(RationalMatrix.zeros(4), S_OSC)
    with pytest.raises(CanonoidError):
        check_canonoid(RationalMatrix.identity(4), RationalMatrix([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]))
    with pytest.raises(CanonoidError):
        transformed_hamiltonian(oscillator_map_a(), S_FREE)


# Gamma nullspace

def test_gamma_nullspace_one_dof():
    basis = gamma_nullspace(RationalMatrix.identity(2))
    assert basis == [standard_J(1)]


def test_gamma_nullspace_unconstrained():
    assert len(gamma_nullspace(RationalMatrix.zeros(4))) == 6
    assert len(gamma_nullspace(RationalMatrix.zeros(6))) == 15


def test_gamma_nullspace_isotropic_contains_known_matrices():
    basis = gamma_nullspace(S_OSC)
    for M in [block_matrix(J2, Z2, Z2, J2), E2, E3, standard_J(2)]:
        assert in_span(M, basis)
    assert not in_span(RationalMatrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]), basis)


@settings(max_examples=40, deadline=None)
@given(matrices(4, nonsingular=True))
def test_canonoid_iff_gamma_in_nullspace(A):
    for S in (S_OSC, S_FREE):
        assert check_canonoid(A, S).is_canonoid == in_span(gamma_of(A), gamma_nullspace(S))


# omega2 and the second Hamiltonian structure

def test_omega2_examples():
    A_b2 = block_matrix([[0, 1], [1, 0]], Z2, Z2, I2)
    A_b3 = block_matrix(I2, Z2, Z2, [[1, 0], [0, -1]])
    assert omega2(A_b2).constant_matrix() == E2
    assert omega2(A_b3).constant_matrix() == E3
    assert omega2(RationalMatrix.identity(4)).constant_matrix() == standard_J(2)
    with pytest.raises(CanonoidError):
        omega2(RationalMatrix.zeros(4))


@settings(max_examples=40, deadline=None)
@given(matrices(4, nonsingular=True))
def test_conservation_and_pullback_coherence(A):
    S = S_OSC
    if not check_canonoid(A, S).is_canonoid:
        return
    t = transformed_hamiltonian(A, S)
    pi = standard_bivector(PHASE)
    H = quadratic_poly(S, PHASE.names)
    assert poisson_bracket(pi, H, t.H2).is_zero()
    assert interior(ham_vf(pi, H), omega2(A, PHASE.names)) == d(t.H2)


def _elementary_symmetric(n):
    out = []
    for i in range(n):
        for j in range(i, n):
            rows = [[0] * n for _ in range(n)]
            rows[i][j] = rows[j][i] = 1
            out.append(RationalMatrix(rows))
    return out


@settings(max_examples=40, deadline=None)
@given(matrices(4, nonsingular=True))
def test_canonical_iff_canonoid_for_every_hamiltonian(A):
    J = standard_J(2)
    Ainv = A.inverse()
    every = True
    for S in _elementary_symmetric(4):
        C = -(J @ A @ J @ S @ Ainv)
        if not (C.is_symmetric() and A @ J @ S @ Ainv == J @ C):
            every = False
            break
    assert check_canonoid(A, S_OSC).is_canonical == every


# rescalings

def test_point_transformation_is_always_canonoid():
    S = RationalMatrix([[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert rescaling_check([2, 3], [Fraction(1, 2), Fraction(1, 3)], S)


def test_diagonal_hamiltonian_any_rescaling():
    assert rescaling_check([5, -2], [7, 3], RationalMatrix.diag([1, 2, 3, 4]))


def test_coupling_q1_p1_survives_rescaling():
    # S13 couples q1 with p1; both carry the factor -a1 b1, so B S = S B still holds
    S = RationalMatrix([[1, 0, 1, 0], [0, 1, 0, 0], [1, 0, 1, 0], [0, 0, 0, 1]])
    assert rescaling_check([1, 1], [2, 3], S)
    assert check_canonoid(rescaling_matrix([1, 1], [2, 3]), S).is_canonoid


def test_coupling_q1_q2_breaks_rescaling():
    S = RationalMatrix([[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert not rescaling_check([1, 1], [2, 3], S)
    assert not check_canonoid(rescaling_matrix([1, 1], [2, 3]), S).is_canonoid


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=4, max_size=4),
       st.lists(st.integers(-2, 2), min_size=10, max_size=10))
def test_rescaling_check_agrees_with_general_test(ab, s):
    S = RationalMatrix([[s[0], s[1], s[2], s[3]], [s[1], s[4], s[5], s[6]],
                        [s[2], s[5], s[7], s[8]], [s[3], s[6], s[8], s[9]]])
    a, b = ab[:2], ab[2:]
    assert rescaling_check(a, b, S) == check_canonoid(rescaling_matrix(a, b), S).is_canonoid


def test_zero_scale_rejected():
    with pytest.raises(CanonoidError):
        rescaling_check([0, 1], [1, 1], S_OSC)
