"""Exact-rational toolkit for canonoid and Poissonoid transformations."""
from .canonoid import check_canonoid, gamma_nullspace, omega2, rescaling_check, standard_J, transformed_hamiltonian
from .matrix import RationalMatrix
from .poissonoid import casimirs, check_poissonoid_linear, compatible, hamiltonize, is_poisson
from .polyalg import Polynomial, parse_poly
from .tensorcalc import Bivector, Chart, KForm, VectorField, d, ham_vf, interior, lie_bracket, schouten, sharp

__version__ = "0.1.0"
