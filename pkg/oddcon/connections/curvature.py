"""Torsion, curvature, tensoriality anomalies and the first Bianchi identity.

For homogeneous X, Y, Z:

    T(X, Y)    = nabla_X Y + (-1)^{xy} nabla_Y X + (-1)^x rho[rho X, rho Y]
    R(X, Y) Z  = nabla_X nabla_Y Z - (-1)^{(x+1)(y+1)} nabla_Y nabla_X Z
                 - nabla_{rho[rho X, rho Y]} Z

Both are tensors exactly when rho is an involution or zero.
"""

from __future__ import annotations

from typing import Callable, Iterator

from oddcon.algebra.grassmann import GradedPoly
from oddcon.connections.quasi import OddQuasiConnection, is_involution, nabla, rho_apply
from oddcon.errors import NotInvolutiveError
from oddcon.geometry.fields import VectorField, basis_fields, vf_bracket


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _multilinear(func: Callable[..., VectorField], *fields: VectorField) -> VectorField:
    """Apply func to homogeneous pieces and add the results."""
    chart = fields[0].chart
    if any(f.is_zero for f in fields):
        return VectorField.zero(chart)
    for i, f in enumerate(fields):
        if not f.is_homogeneous():
            total = VectorField.zero(chart)
            for part in f.split():
                total = total + _multilinear(func, *fields[:i], part, *fields[i + 1 :])
            return total
    return func(*fields)


def rho_bracket(C: OddQuasiConnection, X: VectorField, Y: VectorField) -> VectorField:
    """rho[rho X, rho Y], a field of parity x + y + 1."""
    return rho_apply(C.rho, vf_bracket(rho_apply(C.rho, X), rho_apply(C.rho, Y)))


def torsion(C: OddQuasiConnection, X: VectorField, Y: VectorField) -> VectorField:
    def homogeneous(X: VectorField, Y: VectorField) -> VectorField:
        x, y = X.parity or 0, Y.parity or 0
        return (
            nabla(C, X, Y)
            + nabla(C, Y, X) * _sign(x * y)
            + rho_bracket(C, X, Y) * _sign(x)
        )

    return _multilinear(homogeneous, X, Y)


def curvature(
    C: OddQuasiConnection, X: VectorField, Y: VectorField, Z: VectorField
) -> VectorField:
    def homogeneous(X: VectorField, Y: VectorField, Z: VectorField) -> VectorField:
        x, y = X.parity or 0, Y.parity or 0
        return (
            nabla(C, X, nabla(C, Y, Z))
            - nabla(C, Y, nabla(C, X, Z)) * _sign((x + 1) * (y + 1))
            - nabla(C, rho_bracket(C, X, Y), Z)
        )

    return _multilinear(homogeneous, X, Y, Z)


def tensoriality_anomalies(
    C: OddQuasiConnection, X: VectorField, Y: VectorField, Z: VectorField, f: GradedPoly
) -> tuple[VectorField, VectorField]:
    """A_T = T(X, fY) - (-1)^{(x+1)f} f T(X, Y) and A_R = R(X, fY) Z - (-1)^{fx} f R(X, Y) Z."""
    x, fp = X.homogeneous_parity(), f.parity or 0
    anomaly_t = torsion(C, X, f * Y) - (f * torsion(C, X, Y)) * _sign((x + 1) * fp)
    anomaly_r = curvature(C, X, f * Y, Z) - (f * curvature(C, X, Y, Z)) * _sign(fp * x)
    return anomaly_t, anomaly_r


def predicted_anomalies(
    C: OddQuasiConnection, X: VectorField, Y: VectorField, Z: VectorField, f: GradedPoly
) -> tuple[VectorField, VectorField]:
    """Closed forms rho(X)f (Y - rho rho Y) and (-1)^f rho(X)f nabla_{Y - rho rho Y} Z."""
    fp = f.parity or 0
    rx_f = rho_apply(C.rho, X)(f)
    defect = Y - rho_apply(C.rho, rho_apply(C.rho, Y))
    return rx_f * defect, (rx_f * nabla(C, defect, Z)) * _sign(fp)


def find_anomaly_witness(C: OddQuasiConnection):
    """First (X, Y, f) among coordinate fields and functions with a nonzero torsion anomaly."""
    chart = C.chart
    fields = basis_fields(chart)
    for X in fields:
        for f in (GradedPoly.coordinate(chart, a) for a in range(chart.dim)):
            for Y in fields:
                anomaly_t, _ = tensoriality_anomalies(C, X, Y, Y, f)
                if not anomaly_t.is_zero:
                    return X, Y, f, anomaly_t
    return None


def bianchi_sides(
    C: OddQuasiConnection, X: VectorField, Y: VectorField, Z: VectorField
) -> tuple[VectorField, VectorField]:
    """Left and right side of the first Bianchi identity for homogeneous X, Y, Z.

    left  = sum over cyclic (X, Y, Z) of (-1)^{x(z+1)} R(X, Y) Z
    right = sum over cyclic (X, Y, Z) of (-1)^{x(z+1)} nabla_X T(Y, Z)
            - sum over cyclic (X, Y, Z) of (-1)^{x(z+1)+y} T(X, rho[rho Y, rho Z])
    """
    triples = ((X, Y, Z), (Y, Z, X), (Z, X, Y))
    left = VectorField.zero(C.chart)
    right = VectorField.zero(C.chart)
    for A, B, D in triples:
        a, b, d = A.homogeneous_parity(), B.homogeneous_parity(), D.homogeneous_parity()
        s = _sign(a * (d + 1))
        left = left + curvature(C, A, B, D) * s
        right = right + nabla(C, A, torsion(C, B, D)) * s
        right = right - torsion(C, A, rho_bracket(C, B, D)) * (s * _sign(b))
    return left, right


def bianchi_check(
    C: OddQuasiConnection, X: VectorField, Y: VectorField, Z: VectorField
) -> tuple[VectorField, VectorField]:
    """Both sides of the first Bianchi identity; needs an odd connection.

    Raises:
        NotInvolutiveError: if rho is not an involution.
    """
    if not is_involution(C.rho):
        raise NotInvolutiveError("The Bianchi identity needs an involutive rho")
    return bianchi_sides(C, X, Y, Z)


def torsion_components(
    C: OddQuasiConnection, basis: list[VectorField] | None = None
) -> Iterator[tuple[int, int, VectorField]]:
    """T(e_i, e_j) over a basis, coordinate fields by default."""
    basis = basis or basis_fields(C.chart)
    for i, e in enumerate(basis):
        for j, f in enumerate(basis):
            yield i, j, torsion(C, e, f)


def curvature_components(
    C: OddQuasiConnection, basis: list[VectorField] | None = None
) -> Iterator[tuple[int, int, int, VectorField]]:
    """R(e_i, e_j) e_k over a basis, coordinate fields by default."""
    basis = basis or basis_fields(C.chart)
    for i, e in enumerate(basis):
        for j, f in enumerate(basis):
            for k, g in enumerate(basis):
                yield i, j, k, curvature(C, e, f, g)


def curvature_linearity_residual(
    C: OddQuasiConnection, X: VectorField, Y: VectorField, Z: VectorField, f: GradedPoly
) -> VectorField:
    """R(X, Y) fZ - (-1)^{(x+y)f} f R(X, Y) Z; zero for an odd connection."""
    x, y, fp = X.homogeneous_parity(), Y.homogeneous_parity(), f.parity or 0
    return curvature(C, X, Y, f * Z) - (f * curvature(C, X, Y, Z)) * _sign((x + y) * fp)
