"""Extension of an odd connection to functions, one-forms and mixed tensors.

On functions nabla_X f = rho(X) f. On one-forms the derivative is fixed by
duality,

    rho(X) <Y, alpha> = <nabla_X Y, alpha> + (-1)^{(x+1)y} <Y, nabla_X alpha>,

and on a (p, q) tensor by the graded Leibniz rule over its slots.
"""

from __future__ import annotations

from typing import Sequence

from oddcon.algebra.grassmann import ChartSignature, GradedPoly
from oddcon.connections.quasi import OddQuasiConnection, nabla, rho_apply
from oddcon.errors import ChartMismatchError, ValenceError
from oddcon.geometry.fields import OneForm, VectorField, basis_fields, basis_forms
from oddcon.geometry.tensors import MixedTensor, basis_keys, evaluate


def nabla_function(C: OddQuasiConnection, X: VectorField, f: GradedPoly) -> GradedPoly:
    return rho_apply(C.rho, X)(f)


def nabla_oneform(C: OddQuasiConnection, X: VectorField, alpha: OneForm) -> OneForm:
    """(nabla_X alpha)_a = (-1)^{x(a+1)+a+b} (X^b rho_b^c d_c alpha_a - X^b Gamma_ab^c alpha_c)."""
    if X.chart != C.chart or alpha.chart != C.chart:
        raise ChartMismatchError("Connection, field and form must share a chart")
    if X.is_zero or alpha.is_zero:
        return OneForm.zero(C.chart)
    if not X.is_homogeneous() or not alpha.is_homogeneous():
        total = OneForm.zero(C.chart)
        for xp in X.split():
            for ap in alpha.split():
                total = total + nabla_oneform(C, xp, ap)
        return total
    chart = C.chart
    par = chart.parities
    x = X.parity
    comps = []
    for a in range(chart.dim):
        acc = GradedPoly.zero(chart)
        for b, xb in enumerate(X.components):
            if xb.is_zero:
                continue
            inner = GradedPoly.zero(chart)
            for c, r in enumerate(C.rho.matrix[b]):
                if not r.is_zero:
                    inner = inner + r * alpha.components[a].partial(c)
            for c, g in enumerate(C.gamma[a][b]):
                if not g.is_zero and not alpha.components[c].is_zero:
                    inner = inner - g * alpha.components[c]
            term = xb * inner
            acc = acc - term if (x * (par[a] + 1) + par[a] + par[b]) % 2 else acc + term
        comps.append(acc)
    return OneForm(chart, comps, (x + alpha.parity + 1) % 2)


def nabla_tensor(C: OddQuasiConnection, X: VectorField, T: MixedTensor) -> MixedTensor:
    """Odd covariant derivative of a (p, q) tensor, component by component.

    (nabla_X T)(Y; alpha) = (-1)^{(x+1) sum Y} rho(X)(T(Y; alpha))
        - sum_i (-1)^{(x+1)(Y_i + ... + Y_p)} T(.., nabla_X Y_i, ..; alpha)
        - sum_j (-1)^{(x+1)(t + alpha^1 + ... + alpha^{j-1})} T(Y; .., nabla_X alpha^j, ..)
    evaluated on coordinate fields and forms.
    """
    if X.chart != C.chart or T.chart != C.chart:
        raise ChartMismatchError("Connection, field and tensor must share a chart")
    x = X.homogeneous_parity()
    chart = C.chart
    par = chart.parities
    p, q = T.valence
    t = T.parity
    rx = rho_apply(C.rho, X)
    fields = basis_fields(chart)
    forms = basis_forms(chart)
    moved_fields = {l: nabla(C, X, fields[l]) for l in range(chart.dim)} if p else {}
    moved_forms = {u: nabla_oneform(C, X, forms[u]) for u in range(chart.dim)} if q else {}
    comps = {}
    for lower, upper in basis_keys(chart, T.valence):
        total = rx(T.component(lower, upper))
        if (x + 1) * sum(par[l] for l in lower) % 2:
            total = -total
        args = [fields[l] for l in lower]
        duals = [forms[u] for u in upper]
        for i in range(p):
            shifted = args[:i] + [moved_fields[lower[i]]] + args[i + 1 :]
            term = evaluate(T, shifted, duals)
            negate = (x + 1) * sum(par[l] for l in lower[i:]) % 2
            total = total + term if negate else total - term
        for j in range(q):
            shifted = duals[:j] + [moved_forms[upper[j]]] + duals[j + 1 :]
            term = evaluate(T, args, shifted)
            negate = (x + 1) * (t + sum(par[u] for u in upper[:j])) % 2
            total = total + term if negate else total - term
        if not total.is_zero:
            comps[(lower, upper)] = total
    return MixedTensor(chart, T.valence, (x + t + 1) % 2, comps)


def nabla_tensor_11(C: OddQuasiConnection, X: VectorField, T: MixedTensor) -> MixedTensor:
    """Closed component formula for a (1, 1) tensor.

    (nabla_X T)_a^b = (-1)^{(x+1)a+x+c} X^c (rho_c^d d_d T_a^b - Gamma_ac^e T_e^b)
                      + (-1)^{(x+1)t+x(e+1)+e+c} T_a^e X^c Gamma_ec^b
    """
    if T.valence != (1, 1):
        raise ValenceError(f"Expected a (1, 1) tensor, got {T.valence}")
    x = X.homogeneous_parity()
    chart = C.chart
    par = chart.parities
    dim = chart.dim
    t = T.parity
    comps = {}
    for a in range(dim):
        for b in range(dim):
            total = GradedPoly.zero(chart)
            for c, xc in enumerate(X.components):
                if xc.is_zero:
                    continue
                inner = GradedPoly.zero(chart)
                for d, r in enumerate(C.rho.matrix[c]):
                    if not r.is_zero:
                        inner = inner + r * T.component((a,), (b,)).partial(d)
                for e in range(dim):
                    g = C.gamma[a][c][e]
                    if not g.is_zero:
                        inner = inner - g * T.component((e,), (b,))
                term = xc * inner
                total = total - term if ((x + 1) * par[a] + x + par[c]) % 2 else total + term
                for e in range(dim):
                    g = C.gamma[e][c][b]
                    tae = T.component((a,), (e,))
                    if g.is_zero or tae.is_zero:
                        continue
                    term = tae * xc * g
                    negate = ((x + 1) * t + x * (par[e] + 1) + par[e] + par[c]) % 2
                    total = total - term if negate else total + term
            if not total.is_zero:
                comps[((a,), (b,))] = total
    return MixedTensor(chart, (1, 1), (x + t + 1) % 2, comps)


class Rank2Covariant:
    """G(Y, Z) = sum (-1)^{a(z+b)} Y^a Z^b G_ab; no symmetry is assumed."""

    __slots__ = ("chart", "parity", "matrix")

    def __init__(self, chart: ChartSignature, parity: int, matrix: Sequence[Sequence[GradedPoly]]):
        self.chart = chart
        self.parity = parity
        self.matrix = tuple(tuple(row) for row in matrix)
        self.as_tensor()

    @classmethod
    def zero(cls, chart: ChartSignature, parity: int = 1) -> Rank2Covariant:
        zero = GradedPoly.zero(chart)
        return cls(chart, parity, [[zero] * chart.dim for _ in range(chart.dim)])

    def as_tensor(self) -> MixedTensor:
        return MixedTensor(
            self.chart,
            (2, 0),
            self.parity,
            {
                ((a, b), ()): value
                for a, row in enumerate(self.matrix)
                for b, value in enumerate(row)
            },
        )

    def __call__(self, Y: VectorField, Z: VectorField) -> GradedPoly:
        return evaluate(self.as_tensor(), [Y, Z], [])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Rank2Covariant):
            return NotImplemented
        return self.chart == other.chart and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash((self.chart, self.matrix))


def compatibility_residual(
    C: OddQuasiConnection, G: Rank2Covariant, X: VectorField, Y: VectorField, Z: VectorField
) -> GradedPoly:
    """rho(X)(G(Y, Z)) - G(nabla_X Y, Z) - (-1)^{(x+1)y} G(Y, nabla_X Z)."""
    x, y = X.homogeneous_parity(), Y.homogeneous_parity()
    residual = nabla_function(C, X, G(Y, Z)) - G(nabla(C, X, Y), Z)
    last = G(Y, nabla(C, X, Z))
    return residual + last if (x + 1) * y % 2 else residual - last
