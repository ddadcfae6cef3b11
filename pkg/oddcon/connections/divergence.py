"""Odd divergence operator of an odd quasi-connection.

    Div X = sum_a (-1)^{a(x+1)} (nabla_{d_a} X)^a

Div is an odd graded supertrace, so it does not depend on the coordinates.
"""

from __future__ import annotations

from fractions import Fraction

from oddcon.algebra.grassmann import GradedPoly
from oddcon.connections.quasi import OddQuasiConnection, rho_apply, transform_connection
from oddcon.errors import ChartMismatchError
from oddcon.geometry.changes import CoordinateChange, transform_vector
from oddcon.geometry.fields import VectorField


def odd_divergence(C: OddQuasiConnection, X: VectorField) -> GradedPoly:
    if X.chart != C.chart:
        raise ChartMismatchError(f"Field lives on {X.chart}, connection on {C.chart}")
    if X.is_zero:
        return GradedPoly.zero(C.chart)
    if not X.is_homogeneous():
        even, odd = X.split()
        return odd_divergence(C, even) + odd_divergence(C, odd)
    chart = C.chart
    par = chart.parities
    x = X.parity
    total = GradedPoly.zero(chart)
    for a in range(chart.dim):
        # (nabla_{d_a} X)^a = rho_a^b d_b X^a + (-1)^{(a+1)(x+b)} X^b Gamma_ba^a
        diag = GradedPoly.zero(chart)
        for b, r in enumerate(C.rho.matrix[a]):
            if not r.is_zero:
                diag = diag + r * X.components[a].partial(b)
        for b, xb in enumerate(X.components):
            g = C.gamma[b][a][a]
            if xb.is_zero or g.is_zero:
                continue
            term = xb * g
            diag = diag - term if (par[a] + 1) * (x + par[b]) % 2 else diag + term
        total = total - diag if par[a] * (x + 1) % 2 else total + diag
    return total


def divergence_invariance_check(
    C: OddQuasiConnection, change: CoordinateChange, X: VectorField
) -> bool:
    """Div computed after the change equals the changed Div."""
    primed = odd_divergence(transform_connection(C, change), transform_vector(X, change))
    return primed == change.pull(odd_divergence(C, X))


def divergence_leibniz_residual(
    C: OddQuasiConnection, f: GradedPoly, X: VectorField
) -> GradedPoly:
    """Div(fX) - (-1)^f f Div X - (-1)^{xf} rho(X) f."""
    x, fp = X.homogeneous_parity(), f.parity or 0
    residual = odd_divergence(C, f * X)
    scaled = f * odd_divergence(C, X)
    residual = residual + scaled if fp else residual - scaled
    moved = rho_apply(C.rho, X)(f)
    return residual + moved if x * fp % 2 else residual - moved


def divergence_linearity_check(
    C: OddQuasiConnection, X: VectorField, Y: VectorField, s: Fraction, t: Fraction
) -> bool:
    """Div(sX + tY) = s Div X + t Div Y for rational s, t."""
    combined = X * s + Y * t
    return odd_divergence(C, combined) == odd_divergence(C, X) * s + odd_divergence(C, Y) * t


def divergence_leibniz_check(C: OddQuasiConnection, f: GradedPoly, X: VectorField) -> bool:
    return divergence_leibniz_residual(C, f, X).is_zero
