"""Absolute and relative generators: one-forms Theta invariant (or with dTheta invariant) under X."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .polyalg import Polynomial
from .tensorcalc import (
    KForm,
    TensorError,
    VectorField,
    d,
    determinant_poly,
    interior,
    lie_form,
    liouville_form,
)


@dataclass(frozen=True)
class GeneratorReport:
    absolute: bool
    relative: bool
    K: Polynomial
    dTheta: KForm
    nondegenerate: bool
    is_identity_shift: bool
    certificate: Optional[bool]
    # a Theta = P dQ coordinate system is never constructed, only the certificate
    scope: str = "certificate only"

    def to_json(self) -> dict:
        return {
            "absolute": self.absolute,
            "relative": self.relative,
            "K": str(self.K),
            "dTheta": [[str(p) for p in r] for r in self.dTheta.matrix()],
            "nondegenerate": self.nondegenerate,
            "is_identity_shift": self.is_identity_shift,
            "certificate": self.certificate,
            "scope": self.scope,
        }


def _check(X: VectorField, theta: KForm):
    if X.chart != theta.chart:
        raise TensorError("field and form live on different charts")
    if theta.degree != 1:
        raise TensorError("a generator must be a 1-form")
    if X.chart.dim % 2:
        raise TensorError("generator checks need an even-dimensional chart")


def generator_check(X: VectorField, theta: KForm) -> GeneratorReport:
    _check(X, theta)
    absolute = lie_form(X, theta).is_zero()
    dtheta = d(theta)
    relative = lie_form(X, dtheta).is_zero()
    K = interior(X, theta).scalar()
    nondeg = not determinant_poly(dtheta.matrix()).is_zero()
    shift = d(theta - liouville_form(theta.chart)).is_zero()
    cert = None
    if absolute and nondeg:
        cert = interior(X, -dtheta) == d(K)
    return GeneratorReport(absolute, relative, K, dtheta, nondeg, shift, cert)


def integrability_probe(X: VectorField, theta: KForm) -> list[Polynomial]:
    """Componentwise residuals of L_X Theta."""
    if X.chart != theta.chart or theta.degree != 1:
        raise TensorError("need a 1-form on the field's chart")
    return lie_form(X, theta).one_form_components()
