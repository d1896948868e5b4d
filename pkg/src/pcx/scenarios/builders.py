"""Builders for the builtin scenario files.

Expected values are written from closed forms and hand-derived data, never by
running the checks they are later compared against.
"""
from __future__ import annotations

from fractions import Fraction

from ..canonoid import quadratic_poly, standard_J
from ..matrix import RationalMatrix
from ..polyalg import format_rational
from ..systems import (
    E3,
    SO3,
    SO3_N,
    SO4,
    SO4_N,
    block_matrix,
    block_params_matrix,
    clebsch_field,
    clebsch_hamiltonian,
    clebsch_integral,
    e3_bivector,
    e3_casimirs,
    euler_field,
    euler_hamiltonian,
    euler_pulled_bivector,
    euler_pushed_field,
    euler_rescaling,
    euler_transformed_K,
    eta_tilde,
    hopf_integrals,
    kirchhoff_determinant,
    kirchhoff_matrix,
    manakov_field,
    manakov_hamiltonian,
    manakov_integral,
    manakov_rescaling,
    manakov_transformed_K,
    phase_chart,
    so3_bivector,
    so4_bivector,
    so4_casimirs,
)
from ..tensorcalc import Chart

PHASE = phase_chart(2)
TARGET = ["Q1", "Q2", "P1", "P2"]
PARAM_NAMES = [f"{blk}{i}{j}" for blk in "abcd" for i in (1, 2) for j in (1, 2)]
E2_MATRIX = [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]
E3_MATRIX = [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]]


def _m(M) -> list:
    if isinstance(M, RationalMatrix):
        return M.to_json()
    return RationalMatrix(M).to_json()


def _standard_structure(n: int = 2) -> dict:
    return {"kind": "symplectic_matrix", "data": _m(standard_J(n))}


def _bivector_structure(pi) -> dict:
    return {"kind": "bivector", "data": pi.to_json()}


def _scenario(name, description, chart, structure, H, transforms=(), integrals=(), params=None, checks=(), expected=None):
    return {
        "schema": 1,
        "name": name,
        "description": description,
        "chart": list(chart),
        "structure": structure,
        "hamiltonian": str(H),
        "transforms": [{"name": n, "matrix": _m(A)} for n, A in transforms],
        "integrals": [{"name": n, "poly": str(p)} for n, p in integrals],
        "params": {k: format_rational(Fraction(v)) for k, v in (params or {}).items()},
        "checks": list(checks),
        "expected": expected or {},
    }


def free_particle(m=2, l=1, n=3) -> dict:
    m, l, n = Fraction(m), Fraction(l), Fraction(n)
    c = PHASE
    q1, q2, p1, p2 = c.coords()
    H = (p1 * p1 + p2 * p2).scale(Fraction(1, 2))
    det = m * n - l * l
    dblock = [[n / det, -l / det], [-l / det, m / det]]
    A = block_matrix([[1, 0], [0, 1]], [[0, 0], [0, 0]], [[0, 0], [0, 0]], dblock)
    C = RationalMatrix([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, m, l], [0, 0, l, n]])
    T = Chart(TARGET)
    Q1, Q2, P1, P2 = T.coords()
    K = (P1 * P1).scale(m / 2) + (P2 * P2).scale(n / 2) + (P1 * P2).scale(l)
    H2 = ((p1 * p1).scale(n) + (p2 * p2).scale(m) - (p1 * p2).scale(2 * l)).scale(1 / (2 * det))
    gamma = RationalMatrix.blocks([[RationalMatrix.zeros(2), RationalMatrix(dblock)],
                                   [-RationalMatrix(dblock), RationalMatrix.zeros(2)]])
    L = q1 * p2 - q2 * p1
    return _scenario(
        "free_particle",
        "Free particle in the plane under the block transformation A = blockdiag(1, d).",
        c.names,
        _standard_structure(),
        H,
        transforms=[("A", A)],
        integrals=[("p1", p1), ("p2", p2), ("L", L), ("H2", H2)],
        params={"m": m, "l": l, "n": n},
        checks=[
            {"id": "canonoid_A", "kind": "canonoid", "transform": "A"},
            {"id": "poissonoid_A", "kind": "poissonoid", "transform": "A", "target_chart": TARGET},
            {"id": "preservation_A", "kind": "preservation", "transform": "A", "target_chart": TARGET},
            {"id": "noether", "kind": "noether"},
            {"id": "master_q", "kind": "master_symmetry", "xi": ["q1", "0", "0", "0"], "max_m": 6},
            {"id": "master_q2", "kind": "master_symmetry", "xi": ["q1^2", "0", "0", "0"], "max_m": 6},
            {"id": "generator_q1", "kind": "master_generator", "T": "q1", "m": 3},
            {"id": "beta_dq1", "kind": "beta_sharp", "beta": ["1", "0", "0", "0"], "m": 6},
            {"id": "beta_q1dp1", "kind": "beta_sharp", "beta": ["0", "0", "q1", "0"], "m": 6},
            {"id": "infinitesimal_XG", "kind": "infinitesimal_poissonoid",
             "xi": ["q1", "0", "-1*p1", "0"], "degree": 2},
            {"id": "drift", "kind": "dynamics", "x0": ["0", "0", "1", "1/2"], "t_end": 10, "h": "1/100",
             "tolerance": 1e-9},
        ],
        expected={
            "canonoid_A": {
                "is_canonoid": True,
                "is_canonical": False,
                "gamma": _m(gamma),
                "C": _m(C),
                "K": str(K),
                "H2": str(H2),
                "conserved": True,
                "bihamiltonian": True,
            },
            "poissonoid_A": {"poissonoid": True, "compatible": True, "bihamiltonian": True,
                             "target_solution_contains": [str(K)]},
            "preservation_A": {"agree": True},
            "noether": {"p1": True, "p2": True, "L": True, "H2": True},
            "master_q": {"degree": 1},
            "master_q2": {"degree": 2},
            "generator_q1": {"constants_degree": 1, "hamiltonian_degree": 1},
            "beta_dq1": {"symmetry_degree": 1, "generator_degree": 0, "equivalent": True, "degrees_match": True},
            # i_X beta = 0 yet beta# = q1 d/dq1 has degree 1: only the levelwise form holds
            "beta_q1dp1": {"symmetry_degree": 1, "generator_degree": 0, "equivalent": True,
                           "degrees_match": False},
            # xi = X_G for G = q1 p1; [X_G, X_H] is Hamiltonian with {H, G} = -p1^2
            "infinitesimal_XG": {"feasible": True, "contains": [str((p1 * p1).scale(-1))]},
            "drift": {"within_tolerance": True},
        },
    )


def harmonic_oscillator_2d() -> dict:
    c = PHASE
    W = hopf_integrals(c)
    H = W["W4"]
    one = [[1, 1], [1, -1]]
    A_a = block_matrix(one, [[2, 0], [0, 1]], [[1, 0], [0, 2]], one)
    A_W2 = block_matrix([[0, 1], [1, 0]], [[0, 0], [0, 0]], [[0, 0], [0, 0]], [[1, 0], [0, 1]])
    A_W3 = block_matrix([[1, 0], [0, 1]], [[0, 0], [0, 0]], [[0, 0], [0, 0]], [[1, 0], [0, -1]])
    J2 = [[0, 1], [-1, 0]]
    gamma_a = block_matrix(J2, [[0, 0], [0, 0]], [[0, 0], [0, 0]], J2)
    C_a = [[-2, 3, 0, 3], [3, 4, -6, 0], [0, -6, 4, -3], [3, 0, -3, -2]]
    theta = ["-1*p1 + q2", "q2", "q1 + p2", "p2"]
    q1, q2, p1, p2 = c.coords()
    K_theta = -(p1 * p1 + q1 * q1 + q1 * p2 - p1 * q2)
    dtheta = [["0", "-1", "2", "0"], ["1", "0", "0", "0"], ["-2", "0", "0", "-1"], ["0", "0", "1", "0"]]
    XW1 = ["-1*q2", "q1", "-1*p2", "p1"]
    return _scenario(
        "harmonic_oscillator_2d",
        "Isotropic oscillator in the plane with its quadratic integrals W1..W4.",
        c.names,
        _standard_structure(),
        H,
        transforms=[("A_a", A_a), ("A_W2", A_W2), ("A_W3", A_W3)],
        integrals=list(W.items()),
        checks=[
            {"id": "canonoid_a", "kind": "canonoid", "transform": "A_a"},
            {"id": "canonoid_W2", "kind": "canonoid", "transform": "A_W2"},
            {"id": "canonoid_W3", "kind": "canonoid", "transform": "A_W3"},
            {"id": "gamma_space", "kind": "gamma_space",
             "members": ["A_a", "A_W2", "A_W3", _m(gamma_a), E2_MATRIX, E3_MATRIX, _m(standard_J(2))]},
            {"id": "rescaling_offdiag13", "kind": "rescaling", "a": [1, 1], "b": [2, 3],
             "S": [[1, 0, 1, 0], [0, 1, 0, 0], [1, 0, 1, 0], [0, 0, 0, 1]]},
            {"id": "rescaling_offdiag12", "kind": "rescaling", "a": [1, 1], "b": [2, 3],
             "S": [[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]},
            {"id": "rescaling_point", "kind": "rescaling", "a": [2, 3], "b": ["1/2", "1/3"],
             "S": [[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]},
            {"id": "hopf", "kind": "identity", "expr": "W4^2 - W1^2 - W2^2 - W3^2"},
            {"id": "cert_E2", "kind": "form_certificate", "matrix": E2_MATRIX, "integral": "W2"},
            {"id": "cert_E3", "kind": "form_certificate", "matrix": E3_MATRIX, "integral": "W3"},
            {"id": "cert_J", "kind": "form_certificate", "matrix": _m(standard_J(2)), "integral": "W4"},
            {"id": "whittaker_theta", "kind": "whittaker", "theta": theta},
            {"id": "whittaker_liouville", "kind": "whittaker", "theta": ["p1", "p2", "0", "0"]},
            {"id": "noether", "kind": "noether"},
            {"id": "preservation_a", "kind": "preservation", "transform": "A_a", "target_chart": TARGET},
            {"id": "rotation_symmetry", "kind": "symmetry_implication", "xi": XW1},
            {"id": "rotation_infinitesimal", "kind": "infinitesimal_poissonoid", "xi": XW1, "degree": 2},
            {"id": "twist_generator_W1", "kind": "master_generator", "T": "q2*p1 - q1*p2", "m": 2},
            {"id": "drift", "kind": "dynamics", "x0": ["1", "0", "0", "1/2"], "t_end": 20, "h": "1/1000",
             "tolerance": 1e-8},
        ],
        expected={
            "canonoid_a": {"is_canonoid": True, "is_canonical": False, "gamma": _m(gamma_a), "C": C_a,
                           "H2": str(W["W1"]), "conserved": True, "bihamiltonian": True},
            "canonoid_W2": {"is_canonoid": True, "is_canonical": False, "omega2": E2_MATRIX,
                            "H2": str(W["W2"]), "bihamiltonian": True},
            "canonoid_W3": {"is_canonoid": True, "is_canonical": False, "omega2": E3_MATRIX,
                            "H2": str(W["W3"]), "bihamiltonian": True},
            "gamma_space": {"members_in_span": [True] * 7, "criterion_agrees": True},
            "rescaling_offdiag13": {"canonoid": True},
            "rescaling_offdiag12": {"canonoid": False},
            "rescaling_point": {"canonoid": True},
            "hopf": {"value": "0"},
            "cert_E2": {"holds": True},
            "cert_E3": {"holds": True},
            "cert_J": {"holds": True},
            "whittaker_theta": {"absolute": True, "relative": True, "K": str(K_theta), "dTheta": dtheta,
                                "nondegenerate": True, "is_identity_shift": False, "certificate": True,
                                "residuals": ["0", "0", "0", "0"], "first_integral": True},
            "whittaker_liouville": {"absolute": False, "relative": True, "is_identity_shift": True},
            "noether": {k: True for k in W},
            "preservation_a": {"agree": True},
            "rotation_symmetry": {"preserves_pi": True, "preserves_H": True, "commutes": True},
            "rotation_infinitesimal": {"feasible": True, "F": "0"},
            "twist_generator_W1": {"constants_degree": 0, "hamiltonian_degree": 0},
            "drift": {"within_tolerance": True},
        },
    )


def euler_so3(I=(1, 4, 9)) -> dict:
    I = [Fraction(x) for x in I]
    pi = so3_bivector(SO3)
    H = euler_hamiltonian(I, SO3)
    m1, m2, m3 = SO3.coords()
    C = m1 * m1 + m2 * m2 + m3 * m3
    minus_half = C.scale(Fraction(-1, 2))
    return _scenario(
        "euler_so3",
        "Euler rigid body on so*(3) and its rescaling Poissonoid map.",
        SO3.names,
        _bivector_structure(pi),
        H,
        transforms=[("rescaling", euler_rescaling(I))],
        integrals=[("C", C)],
        params={"I1": I[0], "I2": I[1], "I3": I[2]},
        checks=[
            {"id": "field", "kind": "field"},
            {"id": "poissonoid", "kind": "poissonoid", "transform": "rescaling",
             "target_chart": list(SO3_N.names), "degree": 2},
            {"id": "preservation", "kind": "preservation", "transform": "rescaling",
             "target_chart": list(SO3_N.names)},
            {"id": "casimirs", "kind": "casimirs", "degree": 2},
            {"id": "noether", "kind": "noether"},
            {"id": "radial_field", "kind": "poisson_field", "xi": ["m1", "0", "0"]},
            {"id": "drift", "kind": "dynamics", "x0": ["1", "1/10", "1/10"], "t_end": 50, "h": "1/1000",
             "tolerance": 1e-9},
        ],
        expected={
            "field": {"field": euler_field(I, SO3).to_json()},
            "poissonoid": {
                "poissonoid": True,
                "compatible": True,
                "bihamiltonian": True,
                "pushed_field": euler_pushed_field(I, SO3_N).to_json(),
                "pulled_bivector": euler_pulled_bivector(I, SO3).to_json(),
                "target_solution_contains": [str(euler_transformed_K(I, SO3_N))],
                "solution_contains": [str(minus_half)],
            },
            "preservation": {"agree": True},
            "casimirs": {"size": 1, "span": [str(C)]},
            "noether": {"C": True},
            "radial_field": {"poisson": False},
            "drift": {"within_tolerance": True},
        },
    )


def manakov_so4(J=(1, 2, 3, 4)) -> dict:
    J = [Fraction(x) for x in J]
    pi = so4_bivector(SO4)
    H = manakov_hamiltonian(J, SO4)
    C1, C2 = so4_casimirs(SO4)
    I1 = manakov_integral(J, SO4)
    return _scenario(
        "manakov_so4",
        "Euler-Manakov top on so*(4) with the rescaling Poissonoid map.",
        SO4.names,
        _bivector_structure(pi),
        H,
        transforms=[("rescaling", manakov_rescaling(J))],
        integrals=[("I1", I1), ("C1", C1), ("C2", C2)],
        params={f"J{i + 1}": j for i, j in enumerate(J)},
        checks=[
            {"id": "field", "kind": "field"},
            {"id": "poissonoid", "kind": "poissonoid", "transform": "rescaling",
             "target_chart": list(SO4_N.names), "degree": 2},
            {"id": "preservation", "kind": "preservation", "transform": "rescaling",
             "target_chart": list(SO4_N.names)},
            {"id": "casimirs", "kind": "casimirs", "degree": 2},
            {"id": "noether", "kind": "noether"},
            {"id": "drift", "kind": "dynamics", "x0": ["1/2", "1/5", "-1/10", "3/10", "1/10", "-1/5"],
             "t_end": 5, "h": "1/1000", "tolerance": 1e-8},
        ],
        expected={
            "field": {"field": manakov_field(J, SO4).to_json()},
            "poissonoid": {
                "poissonoid": True,
                "compatible": True,
                "bihamiltonian": True,
                "pulled_bivector": so4_bivector(SO4, J).to_json(),
                "target_solution_contains": [str(manakov_transformed_K(J, SO4_N))],
            },
            "preservation": {"agree": True},
            "casimirs": {"size": 2, "span": [str(C1), str(C2)]},
            "noether": {"I1": True, "C1": True, "C2": True},
            "drift": {"within_tolerance": True},
        },
    )


def clebsch_kirchhoff(omega=(6, 2, 1), eps=1, a=1) -> dict:
    omega = [Fraction(w) for w in omega]
    pi = e3_bivector(E3)
    H = clebsch_hamiltonian(omega, E3)
    C1, C2 = e3_casimirs(E3)
    I = clebsch_integral(omega, E3)
    eta = eta_tilde(omega, E3)
    return _scenario(
        "clebsch_kirchhoff",
        "Clebsch case of the Kirchhoff equations on e*(3) with its second structure.",
        E3.names,
        _bivector_structure(pi),
        H,
        integrals=[("I", I), ("C1", C1), ("C2", C2)],
        params={"omega1": omega[0], "omega2": omega[1], "omega3": omega[2], "eps": eps, "a": a},
        checks=[
            {"id": "field", "kind": "field"},
            {"id": "kirchhoff", "kind": "kirchhoff", "omega": [format_rational(w) for w in omega],
             "eps": format_rational(Fraction(eps)), "a": format_rational(Fraction(a))},
            {"id": "compat_eta", "kind": "compat", "other": eta.to_json()},
            {"id": "hamiltonize_eta", "kind": "hamiltonize", "bivector": eta.to_json(), "degree": 2},
            {"id": "casimirs", "kind": "casimirs", "degree": 2},
            {"id": "noether", "kind": "noether"},
            {"id": "drift", "kind": "dynamics", "x0": ["1", "1/2", "1/5", "3/10", "-2/5", "7/10"],
             "t_end": 20, "h": "1/1000", "tolerance": 1e-7},
        ],
        expected={
            "field": {"field": clebsch_field(omega, E3).to_json()},
            "kirchhoff": {
                "passed": True,
                "determinant": format_rational(kirchhoff_determinant(omega, eps, a)),
                "matrix": _m(kirchhoff_matrix(omega, eps, a)),
                "C1_in_F_matches": True,
            },
            "compat_eta": {"other_is_poisson": True, "compatible": True},
            "hamiltonize_eta": {"feasible": True, "contains": [str(C1.scale(Fraction(-1, 2)))]},
            "casimirs": {"size": 2, "span": [str(C1), str(C2)]},
            "noether": {"I": True, "C1": True, "C2": True},
            "drift": {"within_tolerance": True},
        },
    )


# constrained families of linear canonoid maps of the oscillators

def _family(name, description, S, params, residuals, K, integrals, det=None) -> dict:
    params = {k: Fraction(v) for k, v in params.items()}
    A = block_params_matrix(params)
    H = quadratic_poly(RationalMatrix(S), PHASE.names)
    constraints = {"all_zero": True, "matrix_matches": True}
    if det is not None:
        constraints["determinant"] = format_rational(det)
    return _scenario(
        name,
        description,
        PHASE.names,
        _standard_structure(),
        H,
        transforms=[("A", A)],
        integrals=integrals,
        params=params,
        checks=[
            {"id": "constraints", "kind": "constraints", "chart": PARAM_NAMES, "residuals": residuals,
             "matrix_from_params": "A"},
            {"id": "canonoid", "kind": "canonoid", "transform": "A", "target_chart": TARGET},
            {"id": "preservation", "kind": "preservation", "transform": "A", "target_chart": TARGET},
            {"id": "noether", "kind": "noether"},
        ],
        expected={
            "constraints": constraints,
            "canonoid": {"is_canonoid": True, "is_canonical": False, "K": str(K), "conserved": True,
                         "bihamiltonian": True},
            "preservation": {"agree": True},
            "noether": {n: True for n, _ in integrals},
        },
    )


def _embedded_integrals():
    q1, q2, p1, p2 = PHASE.coords()
    return [("E1", (q1 * q1 + p1 * p1).scale(Fraction(1, 2))), ("p2", p2)]


def k1_embedded_oscillator() -> dict:
    p = {"a11": 8, "a12": 3, "a21": -6, "a22": 4, "b11": 0, "b12": 3, "b21": 0, "b22": 4,
         "c11": 0, "c12": 0, "c21": 0, "c22": 0, "d11": 8, "d12": 3, "d21": -6, "d22": 4}
    residuals = [
        "c21",
        "c22",
        "b12*d22 - d12*b22",
        "d21*a22 - a21*d22",
        # b11 relation with its denominator cleared
        "b11*a22*d22^2*d12^2*c11 + 2*a21^2*a22*d12^2*d22^2 + a22*d12^3*a21*d11*d22"
        " - d12^2*a11*a22*d11*d22^2 + d12^3*a11*a21*d22^2 + a22*d12^4*a21^2"
        " - d12^4*a21^2*d22 + a21^2*a22*d22^4",
    ]
    T = Chart(TARGET)
    Q1, Q2, P1, P2 = T.coords()
    d12, d22 = Fraction(p["d12"]), Fraction(p["d22"])
    lin = Q1.scale(d22) - Q2.scale(d12)
    K = (P1 * P1 + P2 * P2).scale(Fraction(1, 2)) + (lin * lin).scale(1 / (2 * (d22 * d22 + d12 * d12)))
    S = [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    return _family("k1_embedded_oscillator",
                   "Embedded one-dimensional oscillator mapped to the K1 form with a rotated potential.",
                   S, p, residuals, K, _embedded_integrals())


def k2_isotropic_oscillator() -> dict:
    p = {"a11": 1, "a12": 1, "a21": 0, "a22": 1, "b11": -2, "b12": -1, "b21": 0, "b22": 0,
         "c11": 0, "c12": 0, "c21": 2, "c22": 1, "d11": 0, "d12": 1, "d21": 1, "d22": 1}
    residuals = [
        "a21",
        "c11",
        "b22",
        "d11",
        "a12*d12 - a22*d22",
        "b12*d12 + a22*c22",
        "a11*d12^2*d21 - a22^2*d21^2 - c21^2*a22^2 - c21*b11*d12^2",
    ]
    T = Chart(TARGET)
    Q1, Q2, P1, P2 = T.coords()
    k = Fraction(p["d12"]) ** 2 / Fraction(p["a12"]) ** 2
    K = P1 * P2 + (Q1 * Q2).scale(k)
    det = -Fraction(p["a22"]) * (p["d21"] ** 2 + p["c21"] ** 2) / Fraction(p["d12"])
    W = hopf_integrals(PHASE)
    return _family("k2_isotropic_oscillator",
                   "Isotropic oscillator mapped to P1 P2 + k Q1 Q2 on the Minkowski plane.",
                   [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], p, residuals, K,
                   list(W.items()), det)


def k2_embedded_oscillator() -> dict:
    h = Fraction(1, 2)
    p = {"a11": 1, "a12": 1, "a21": h, "a22": -h, "b11": 1, "b12": 1, "b21": h, "b22": -h,
         "c11": -h, "c12": 0, "c21": -1, "c22": 0, "d11": h, "d12": -h, "d21": 1, "d22": 1}
    residuals = [
        "c22",
        "c12",
        "c21*a22 - b21*d22",
        "d21*a22 + a21*d22",
        "b12*d12 - d22*b22",
        "a12*d12 - d22*a22",
        "a11*d12*(a22*d11 + a21*d12) - (-4*d22*a22*b21^2 - d12^2*b11*b21 - 4*d22*a21^2*a22"
        " + b21^2*d22*d12 + a21^2*d22*d12 + a22*d12*c11*b11 + a22*d11*d22*a21 - c11*d22*b21*a22)",
    ]
    T = Chart(TARGET)
    Q1, Q2, P1, P2 = T.coords()
    d12, d22, a22 = Fraction(p["d12"]), Fraction(p["d22"]), Fraction(p["a22"])
    lin = Q1.scale(d12) - Q2.scale(d22)
    K = P1 * P2 + (lin * lin).scale(d12 / (2 * a22 * d22))
    det = -4 * a22 * d22 ** 2 * (Fraction(p["a21"]) ** 2 + Fraction(p["b21"]) ** 2) / d12
    S = [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    return _family("k2_embedded_oscillator",
                   "Embedded one-dimensional oscillator mapped to P1 P2 + k (alpha1 Q1 - alpha2 Q2)^2.",
                   S, p, residuals, K, _embedded_integrals(), det)


BUILDERS = {
    "free_particle": free_particle,
    "harmonic_oscillator_2d": harmonic_oscillator_2d,
    "euler_so3": euler_so3,
    "manakov_so4": manakov_so4,
    "clebsch_kirchhoff": clebsch_kirchhoff,
    "k1_embedded_oscillator": k1_embedded_oscillator,
    "k2_isotropic_oscillator": k2_isotropic_oscillator,
    "k2_embedded_oscillator": k2_embedded_oscillator,
}


def build_all() -> dict:
    return {name: fn() for name, fn in BUILDERS.items()}
