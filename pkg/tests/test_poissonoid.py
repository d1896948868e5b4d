from fractions import Fraction

import pytest

from pcx.matrix import RationalMatrix
from pcx.poissonoid import (
    PoissonError,
    casimirs,
    check_poissonoid_linear,
    compatible,
    constant_of_motion_check,
    hamiltonize,
    is_poisson,
    kirchhoff_certificate,
    poisson_vf_check,
    relabel,
    same_span,
)
from pcx.systems import (
    E3,
    SO3,
    SO3_N,
    SO4,
    SO4_N,
    ParameterError,
    clebsch_field,
    clebsch_hamiltonian,
    clebsch_integral,
    e3_bivector,
    e3_casimirs,
    eta_tilde,
    euler_field,
    euler_hamiltonian,
    euler_rescaling,
    euler_transformed_K,
    kirchhoff_C1_in_F,
    kirchhoff_constants,
    manakov_hamiltonian,
    manakov_integral,
    manakov_rescaling,
    manakov_transformed_K,
    so3_bivector,
    so4_bivector,
    so4_casimirs,
)
from pcx.tensorcalc import Bivector, VectorField, d, ham_vf, pullback_bivector, sharp, standard_bivector

from conftest import PHASE, corrupt

I = (1, 4, 9)
J = (1, 2, 3, 4)
OMEGA = (6, 2, 1)


def test_is_poisson_examples():
    assert is_poisson(e3_bivector(E3))
    assert is_poisson(Bivector.zero(SO3))
    assert not is_poisson(corrupt(so3_bivector(SO3)))


def test_compatible_examples():
    pulled = pullback_bivector(manakov_rescaling(J), relabel(so4_bivector(SO4), SO4_N), SO4)
    assert compatible(so4_bivector(SO4), pulled)
    assert compatible(e3_bivector(E3), e3_bivector(E3))
    assert compatible(e3_bivector(E3), eta_tilde(OMEGA, E3))
    with pytest.raises(PoissonError):
        compatible(so3_bivector(SO3), corrupt(so3_bivector(SO3)))


def test_hamiltonize_euler_under_pulled_structure():
    pulled = pullback_bivector(euler_rescaling(I), relabel(so3_bivector(SO3), SO3_N), SO3)
    res = hamiltonize(pulled, euler_field(I, SO3), 2)
    assert res.feasible
    m1, m2, m3 = SO3.coords()
    assert res.contains((m1 * m1 + m2 * m2 + m3 * m3).scale(Fraction(-1, 2)))
    assert sharp(pulled, d(res.K)) == euler_field(I, SO3)


def test_hamiltonize_zero_field_returns_casimirs():
    res = hamiltonize(so3_bivector(SO3), VectorField.zero(SO3), 2)
    assert res.feasible and res.K.is_zero()
    assert same_span(res.kernel_basis, casimirs(so3_bivector(SO3), 2).basis)


def test_hamiltonize_clebsch_under_second_structure():
    C1, _ = e3_casimirs(E3)
    res = hamiltonize(eta_tilde(OMEGA, E3), clebsch_field(OMEGA, E3), 2)
    assert res.feasible
    assert res.contains(C1.scale(Fraction(-1, 2)))


def test_hamiltonize_infeasible_reports_bound():
    # a dilation is not Hamiltonian for the standard structure
    X = VectorField.parse(PHASE, ["q1", "q2", "p1", "p2"])
    res = hamiltonize(standard_bivector(PHASE), X, 3)
    assert not res.feasible and res.K is None and res.degree == 3
    with pytest.raises(PoissonError):
        hamiltonize(standard_bivector(PHASE), X, 0)


def test_hamiltonize_kernel_elements_are_casimirs():
    pi = e3_bivector(E3)
    res = hamiltonize(pi, ham_vf(pi, clebsch_hamiltonian(OMEGA, E3)), 2)
    for k in res.kernel_basis:
        assert ham_vf(pi, k).is_zero()


def test_casimir_bases():
    m1, m2, m3 = SO3.coords()
    assert same_span(casimirs(so3_bivector(SO3), 2).basis, [m1 * m1 + m2 * m2 + m3 * m3])
    assert same_span(casimirs(e3_bivector(E3), 2).basis, list(e3_casimirs(E3)))
    assert same_span(casimirs(so4_bivector(SO4), 2).basis, list(so4_casimirs(SO4)))


def test_casimir_basis_is_deterministic():
    a = casimirs(e3_bivector(E3), 2).basis
    b = casimirs(e3_bivector(E3), 2).basis
    assert [str(p) for p in a] == [str(p) for p in b]


def test_euler_rescaling_is_bihamiltonian():
    r = check_poissonoid_linear(so3_bivector(SO3), euler_rescaling(I), euler_hamiltonian(I, SO3), 2, SO3_N)
    assert r.poissonoid and r.certificate and r.compatible and r.bihamiltonian
    assert r.hamiltonize.contains(euler_transformed_K(I, SO3_N))
    m1, m2, m3 = SO3.coords()
    pulled_res = hamiltonize(r.pulled_bivector, euler_field(I, SO3), 2)
    assert pulled_res.contains(r.pulled_K)
    assert pulled_res.contains((m1 * m1 + m2 * m2 + m3 * m3).scale(Fraction(-1, 2)))


def test_identity_is_trivially_poissonoid():
    H = euler_hamiltonian(I, SO3)
    r = check_poissonoid_linear(so3_bivector(SO3), RationalMatrix.identity(3), H, 2)
    assert r.poissonoid
    assert r.hamiltonize.contains(H)


def test_manakov_rescaling_is_bihamiltonian():
    r = check_poissonoid_linear(so4_bivector(SO4), manakov_rescaling(J), manakov_hamiltonian(J, SO4), 2, SO4_N)
    assert r.poissonoid and r.compatible and r.bihamiltonian
    assert r.hamiltonize.contains(manakov_transformed_K(J, SO4_N))
    assert r.pulled_bivector == so4_bivector(SO4, J)


def test_constants_of_motion():
    pi4 = so4_bivector(SO4)
    H4 = manakov_hamiltonian(J, SO4)
    assert constant_of_motion_check(pi4, H4, manakov_integral(J, SO4))
    assert constant_of_motion_check(pi4, H4, H4)
    assert constant_of_motion_check(e3_bivector(E3), clebsch_hamiltonian(OMEGA, E3), clebsch_integral(OMEGA, E3))
    assert not constant_of_motion_check(pi4, H4, SO4.poly("m12"))


def test_poisson_vector_fields():
    pi = standard_bivector(PHASE)
    assert poisson_vf_check(pi, ham_vf(pi, PHASE.poly("q1^2*p2 - 3*q2*p1^3")))
    const = VectorField.parse(PHASE, ["1", "0", "2", "0"])
    assert poisson_vf_check(Bivector.zero(PHASE), const)
    assert not poisson_vf_check(so3_bivector(SO3), VectorField.parse(SO3, ["m1", "0", "0"]))


@pytest.mark.parametrize("name,pi,H,target", [
    ("so3", so3_bivector(SO3), euler_hamiltonian(I, SO3), (euler_rescaling(I), SO3_N)),
    ("so4", so4_bivector(SO4), manakov_hamiltonian(J, SO4), (manakov_rescaling(J), SO4_N)),
    ("e3", e3_bivector(E3), clebsch_hamiltonian(OMEGA, E3), None),
])
def test_casimirs_of_pulled_structure_are_integrals(name, pi, H, target):
    if target is None:
        pulled = eta_tilde(OMEGA, E3)
    else:
        A, chart = target
        pulled = pullback_bivector(A, relabel(pi, chart), pi.chart)
    basis = casimirs(pulled, 2).basis
    assert basis
    for C in basis:
        assert constant_of_motion_check(pi, H, C)


# Kirchhoff / Clebsch certificate

def test_kirchhoff_instance():
    rep = kirchhoff_certificate(OMEGA, 1, 1)
    assert rep.constants["A"] == 2 and rep.constants["B"] == 1 and rep.constants["C"] == 5
    assert rep.determinant == Fraction(-125, 8)
    assert rep.passed


def test_kirchhoff_determinant_is_cubic_in_a():
    d1 = kirchhoff_certificate(OMEGA, 1, 1).determinant
    d2 = kirchhoff_certificate(OMEGA, 1, 2).determinant
    assert d2 == 8 * d1


def test_kirchhoff_C1_in_F_expansion():
    # a^2 F1^2 + ... + eps B F4 F6 at the instance
    C1F = kirchhoff_C1_in_F(OMEGA, 1, 1)
    assert C1F.coefficient((2, 0, 0, 0, 0, 0)) == 1
    assert C1F.coefficient((0, 0, 0, 1, 0, 1)) == 1
    assert kirchhoff_certificate(OMEGA, 1, 1).C1_in_F_matches


def test_kirchhoff_rejects_irrational_parameters():
    with pytest.raises(ParameterError):
        kirchhoff_constants((5, 2, 1), 1, 1)
    with pytest.raises(ParameterError):
        kirchhoff_constants((2, 6, 1), 1, 1)
