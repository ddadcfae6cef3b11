"""Odd quasi-connections, odd endomorphisms and their affine relatives.

An odd quasi-connection is fixed on a chart by two arrays:

    rho[a][b]      = rho_a^b,      parity a + b + 1,   rho(d_a) = rho_a^b d_b
    gamma[b][a][c] = Gamma_ba^c,   parity a + b + c + 1,   Gamma_ba^c = (nabla_{d_a} d_b)^c

and acts on homogeneous fields by

    nabla_X Y = (-1)^{x+a} X^a (rho_a^b d_b Y^c + (-1)^{(a+1)(y+b)} Y^b Gamma_ba^c) d_c

When rho is an involution the connection is an odd connection; with rho = 0
it is banal, a (1,2) tensor.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Union

from oddcon.algebra.grassmann import ChartSignature, Coordinate, GradedPoly
from oddcon.errors import (
    ChartMismatchError,
    ConnectionMismatchError,
    NotInvolutiveError,
    ParityError,
)
from oddcon.geometry.changes import CoordinateChange
from oddcon.geometry.fields import VectorField, basis_fields

Matrix = tuple[tuple[GradedPoly, ...], ...]
Array3 = tuple[tuple[tuple[GradedPoly, ...], ...], ...]
Rational = Union[int, Fraction]


def _zeros2(chart: ChartSignature) -> list[list[GradedPoly]]:
    zero = GradedPoly.zero(chart)
    return [[zero] * chart.dim for _ in range(chart.dim)]


def _zeros3(chart: ChartSignature) -> list[list[list[GradedPoly]]]:
    zero = GradedPoly.zero(chart)
    return [[[zero] * chart.dim for _ in range(chart.dim)] for _ in range(chart.dim)]


def _freeze2(rows) -> Matrix:
    return tuple(tuple(row) for row in rows)


def _freeze3(rows) -> Array3:
    return tuple(tuple(tuple(col) for col in row) for row in rows)


def _check_shape2(chart: ChartSignature, rows, label: str) -> None:
    if len(rows) != chart.dim or any(len(r) != chart.dim for r in rows):
        raise ChartMismatchError(f"{label} must be {chart.dim}x{chart.dim} on {chart}")


def _check_shape3(chart: ChartSignature, rows, label: str) -> None:
    if len(rows) != chart.dim or any(
        len(r) != chart.dim or any(len(c) != chart.dim for c in r) for r in rows
    ):
        raise ChartMismatchError(f"{label} must be {chart.dim}x{chart.dim}x{chart.dim}")


class OddEndomorphism:
    """A parity-odd, function-linear map on vector fields, rho(d_a) = rho_a^b d_b."""

    __slots__ = ("chart", "matrix")

    def __init__(self, chart: ChartSignature, matrix: Sequence[Sequence[GradedPoly]]):
        _check_shape2(chart, matrix, "rho")
        par = chart.parities
        for a, row in enumerate(matrix):
            for b, entry in enumerate(row):
                if entry.chart != chart:
                    raise ChartMismatchError(f"rho entry ({a},{b}) lives on {entry.chart}")
                if not entry.has_parity((par[a] + par[b] + 1) % 2):
                    raise ParityError(
                        f"rho_{chart.names[a]}^{chart.names[b]} must have parity "
                        f"{(par[a] + par[b] + 1) % 2}"
                    )
        self.chart = chart
        self.matrix = _freeze2(matrix)

    @classmethod
    def zero(cls, chart: ChartSignature) -> OddEndomorphism:
        return cls(chart, _zeros2(chart))

    @classmethod
    def from_mapping(
        cls, chart: ChartSignature, entries: Mapping[tuple[Coordinate, Coordinate], GradedPoly]
    ):
        rows = _zeros2(chart)
        for (a, b), value in entries.items():
            rows[chart.index(a)][chart.index(b)] = value
        return cls(chart, rows)

    def __call__(self, X: VectorField) -> VectorField:
        return rho_apply(self, X)

    def entry(self, a: Coordinate, b: Coordinate) -> GradedPoly:
        return self.matrix[self.chart.index(a)][self.chart.index(b)]

    def combine(self, other: OddEndomorphism, s: Rational, t: Rational) -> OddEndomorphism:
        """s*self + t*other."""
        _same_chart(self.chart, other.chart)
        return OddEndomorphism(
            self.chart,
            [
                [u * s + v * t for u, v in zip(r1, r2)]
                for r1, r2 in zip(self.matrix, other.matrix)
            ],
        )

    def scaled(self, f: Union[Rational, GradedPoly]) -> OddEndomorphism:
        """f rho for a rational or even function f."""
        if isinstance(f, GradedPoly) and not f.has_parity(0):
            raise ParityError("Only even functions scale an odd endomorphism")
        return OddEndomorphism(self.chart, [[f * v for v in row] for row in self.matrix])

    def __add__(self, other: OddEndomorphism) -> OddEndomorphism:
        return self.combine(other, 1, 1)

    def __neg__(self) -> OddEndomorphism:
        return self.scaled(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OddEndomorphism):
            return NotImplemented
        return self.chart == other.chart and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash((self.chart, self.matrix))

    def __repr__(self) -> str:
        nonzero = sum(not v.is_zero for row in self.matrix for v in row)
        return f"{type(self).__name__}({self.chart}, {nonzero} nonzero entries)"


class OddInvolution(OddEndomorphism):
    """An odd endomorphism with rho o rho = 1."""

    __slots__ = ()

    def __init__(self, chart: ChartSignature, matrix: Sequence[Sequence[GradedPoly]]):
        super().__init__(chart, matrix)
        if not is_involution(self):
            raise NotInvolutiveError("rho o rho is not the identity")

    @classmethod
    def of(cls, rho: OddEndomorphism) -> OddInvolution:
        if isinstance(rho, OddInvolution):
            return rho
        return cls(rho.chart, rho.matrix)


def _same_chart(first: ChartSignature, second: ChartSignature) -> None:
    if first != second:
        raise ChartMismatchError(f"Operands live on {first} and {second}")


def rho_apply(rho: OddEndomorphism, X: VectorField) -> VectorField:
    """rho(X) = (-1)^{x+a} X^a rho_a^b d_b."""
    _same_chart(rho.chart, X.chart)
    if X.is_zero:
        return VectorField.zero(X.chart)
    if not X.is_homogeneous():
        even, odd = X.split()
        return rho_apply(rho, even) + rho_apply(rho, odd)
    x = X.parity
    par = X.chart.parities
    comps = [GradedPoly.zero(X.chart)] * X.chart.dim
    for a, xa in enumerate(X.components):
        if xa.is_zero:
            continue
        negate = (x + par[a]) % 2
        for b, entry in enumerate(rho.matrix[a]):
            if not entry.is_zero:
                term = xa * entry
                comps[b] = comps[b] - term if negate else comps[b] + term
    return VectorField(X.chart, comps, (x + 1) % 2)


def is_involution(rho: OddEndomorphism) -> bool:
    """True iff rho(rho(d_a)) = d_a for every coordinate field."""
    return all(rho_apply(rho, rho_apply(rho, e)) == e for e in basis_fields(rho.chart))


def clifford_dirac_check(rho1: OddEndomorphism, rho2: OddEndomorphism) -> bool:
    """True iff rho1 rho2 + rho2 rho1 = 2 on every coordinate field."""
    _same_chart(rho1.chart, rho2.chart)
    for e in basis_fields(rho1.chart):
        total = rho_apply(rho1, rho_apply(rho2, e)) + rho_apply(rho2, rho_apply(rho1, e))
        if total != VectorField(e.chart, [c * 2 for c in e.components]):
            return False
    return True


class OddQuasiConnection:
    """Structure functions (rho, Gamma) of an odd quasi-connection on a chart."""

    __slots__ = ("chart", "rho", "gamma")

    def __init__(
        self,
        chart: ChartSignature,
        rho: OddEndomorphism,
        gamma: Sequence[Sequence[Sequence[GradedPoly]]],
    ):
        _same_chart(chart, rho.chart)
        _check_shape3(chart, gamma, "Gamma")
        par = chart.parities
        for b in range(chart.dim):
            for a in range(chart.dim):
                for c in range(chart.dim):
                    entry = gamma[b][a][c]
                    if entry.chart != chart:
                        raise ChartMismatchError(f"Gamma entry lives on {entry.chart}")
                    expected = (par[a] + par[b] + par[c] + 1) % 2
                    if not entry.has_parity(expected):
                        names = chart.names
                        raise ParityError(
                            f"Gamma_{names[b]}{names[a]}^{names[c]} must have parity {expected}"
                        )
        self.chart = chart
        self.rho = rho
        self.gamma = _freeze3(gamma)

    @classmethod
    def from_mapping(
        cls,
        chart: ChartSignature,
        rho: Union[OddEndomorphism, Mapping[tuple[Coordinate, Coordinate], GradedPoly]],
        gamma: Mapping[tuple[Coordinate, Coordinate, Coordinate], GradedPoly] = {},
    ) -> OddQuasiConnection:
        """Build from sparse entries; gamma keys are (b, a, c) for Gamma_ba^c."""
        if not isinstance(rho, OddEndomorphism):
            rho = OddEndomorphism.from_mapping(chart, rho)
        rows = _zeros3(chart)
        for (b, a, c), value in gamma.items():
            rows[chart.index(b)][chart.index(a)][chart.index(c)] = value
        return cls(chart, rho, rows)

    def christoffel(self, b: Coordinate, a: Coordinate, c: Coordinate) -> GradedPoly:
        index = self.chart.index
        return self.gamma[index(b)][index(a)][index(c)]

    def is_odd_connection(self) -> bool:
        return is_involution(self.rho)

    def __call__(self, X: VectorField, Y: VectorField) -> VectorField:
        return nabla(self, X, Y)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OddQuasiConnection):
            return NotImplemented
        return self.chart == other.chart and self.rho == other.rho and self.gamma == other.gamma

    def __hash__(self) -> int:
        return hash((self.chart, self.rho, self.gamma))

    def __repr__(self) -> str:
        nonzero = sum(not v.is_zero for m in self.gamma for row in m for v in row)
        return f"OddQuasiConnection({self.chart}, {nonzero} nonzero Christoffel symbols)"


def nabla(C: OddQuasiConnection, X: VectorField, Y: VectorField) -> VectorField:
    """nabla_X Y in the local form; non-homogeneous arguments are split."""
    _same_chart(C.chart, X.chart)
    _same_chart(C.chart, Y.chart)
    if X.is_zero or Y.is_zero:
        return VectorField.zero(C.chart)
    if not X.is_homogeneous() or not Y.is_homogeneous():
        total = VectorField.zero(C.chart)
        for xp in X.split():
            for yp in Y.split():
                total = total + nabla(C, xp, yp)
        return total
    return _local_form(C.chart, C.rho.matrix, C.gamma, X, Y, (X.parity + Y.parity + 1) % 2, 1)


def _local_form(chart, rho, gamma, X, Y, parity, shift) -> VectorField:
    """Shared kernel of the odd (shift=1) and even (shift=0) local forms.

    result^c = (-1)^{s(x+a)} X^a (rho_a^b d_b Y^c + (-1)^{(a+s)(y+b)} Y^b G_ba^c)
    with rho_a^b = delta_a^b for even connections.
    """
    dim = chart.dim
    par = chart.parities
    x, y = X.parity, Y.parity
    derivs: dict[int, list[GradedPoly]] = {}
    out = [GradedPoly.zero(chart)] * dim
    for a, xa in enumerate(X.components):
        if xa.is_zero:
            continue
        inner = [GradedPoly.zero(chart)] * dim
        for b in range(dim):
            weight = rho[a][b] if rho is not None else None
            if rho is not None and weight.is_zero:
                continue
            if rho is None and b != a:
                continue
            if b not in derivs:
                derivs[b] = [yc.partial(b) for yc in Y.components]
            for c, dyc in enumerate(derivs[b]):
                if not dyc.is_zero:
                    inner[c] = inner[c] + (dyc if weight is None else weight * dyc)
        for b, yb in enumerate(Y.components):
            if yb.is_zero:
                continue
            negate = (par[a] + shift) * (y + par[b]) % 2
            for c, g in enumerate(gamma[b][a]):
                if not g.is_zero:
                    term = yb * g
                    inner[c] = inner[c] - term if negate else inner[c] + term
        negate = shift * (x + par[a]) % 2
        for c in range(dim):
            if not inner[c].is_zero:
                term = xa * inner[c]
                out[c] = out[c] - term if negate else out[c] + term
    return VectorField(chart, out, parity)


def christoffel_from_operator(
    chart: ChartSignature, operator: Callable[[VectorField, VectorField], VectorField]
) -> list[list[list[GradedPoly]]]:
    """Gamma_ba^c = (nabla_{d_a} d_b)^c for any connection-like operator."""
    fields = basis_fields(chart)
    rows = _zeros3(chart)
    for a, da in enumerate(fields):
        for b, db in enumerate(fields):
            value = operator(da, db)
            for c in range(chart.dim):
                rows[b][a][c] = value.components[c]
    return rows


def affine_combination(
    C1: OddQuasiConnection, C2: OddQuasiConnection, t: Rational
) -> OddQuasiConnection:
    """t C1 + (1 - t) C2, componentwise in both rho and Gamma."""
    _same_chart(C1.chart, C2.chart)
    t = Fraction(t)
    s = 1 - t
    gamma = [
        [[u * t + v * s for u, v in zip(c1, c2)] for c1, c2 in zip(r1, r2)]
        for r1, r2 in zip(C1.gamma, C2.gamma)
    ]
    return OddQuasiConnection(C1.chart, C1.rho.combine(C2.rho, t, s), gamma)


def module_combination(
    C1: OddQuasiConnection, C2: OddQuasiConnection, f: GradedPoly
) -> OddQuasiConnection:
    """f C1 + C2 for an even function f."""
    _same_chart(C1.chart, C2.chart)
    if f.chart != C1.chart or not f.has_parity(0):
        raise ParityError("Module combinations need an even function on the same chart")
    gamma = [
        [[f * u + v for u, v in zip(c1, c2)] for c1, c2 in zip(r1, r2)]
        for r1, r2 in zip(C1.gamma, C2.gamma)
    ]
    return OddQuasiConnection(C1.chart, C1.rho.scaled(f) + C2.rho, gamma)


def transform_connection(C: OddQuasiConnection, change: CoordinateChange) -> OddQuasiConnection:
    """Structure functions of C in the new coordinates.

    rho'_{a'}^{b'} = (-1)^{a+a'} J_{a'}^a rho_a^b K_b^{b'}

    Gamma'_{b'a'}^{d'} = (-1)^{a'+a} J_{a'}^a [
        (-1)^{(a+1)(b+b')} J_{b'}^b Gamma_ba^c K_c^{d'}
        + rho_a^c K_c^{c'} d_{c'} d_{b'} x^d K_d^{d'} ]
    """
    _same_chart(C.chart, change.source)
    target = change.target
    dim = target.dim
    par = target.parities
    J, K = change.inverse_jacobian, change.jacobian
    rho = [[change.pull(v) for v in row] for row in C.rho.matrix]
    gamma = [[[change.pull(v) for v in col] for col in row] for row in C.gamma]
    # hessian[c'][b'][d] = d_{c'} d_{b'} x^d
    hessian = [
        [[J[bp][d].partial(cp) for d in range(dim)] for bp in range(dim)] for cp in range(dim)
    ]

    new_rho = _zeros2(target)
    for ap in range(dim):
        for a in range(dim):
            if J[ap][a].is_zero:
                continue
            for b in range(dim):
                if rho[a][b].is_zero:
                    continue
                head = J[ap][a] * rho[a][b]
                if (par[a] + par[ap]) % 2:
                    head = -head
                for bp in range(dim):
                    if not K[b][bp].is_zero:
                        new_rho[ap][bp] = new_rho[ap][bp] + head * K[b][bp]

    new_gamma = _zeros3(target)
    for ap in range(dim):
        for bp in range(dim):
            acc = [GradedPoly.zero(target)] * dim
            for a in range(dim):
                ja = J[ap][a]
                if ja.is_zero:
                    continue
                outer = (par[ap] + par[a]) % 2
                for b in range(dim):
                    jb = J[bp][b]
                    if jb.is_zero:
                        continue
                    negate = (outer + (par[a] + 1) * (par[b] + par[bp])) % 2
                    head = ja * jb
                    for c in range(dim):
                        g = gamma[b][a][c]
                        if g.is_zero:
                            continue
                        term = head * g
                        for dp in range(dim):
                            if not K[c][dp].is_zero:
                                piece = term * K[c][dp]
                                acc[dp] = acc[dp] - piece if negate else acc[dp] + piece
                for c in range(dim):
                    if rho[a][c].is_zero:
                        continue
                    head = ja * rho[a][c]
                    for cp in range(dim):
                        if K[c][cp].is_zero:
                            continue
                        mid = head * K[c][cp]
                        for d in range(dim):
                            h = hessian[cp][bp][d]
                            if h.is_zero:
                                continue
                            term = mid * h
                            for dp in range(dim):
                                if not K[d][dp].is_zero:
                                    piece = term * K[d][dp]
                                    acc[dp] = acc[dp] - piece if outer else acc[dp] + piece
            for dp in range(dim):
                new_gamma[bp][ap][dp] = acc[dp]
    return OddQuasiConnection(target, OddEndomorphism(target, new_rho), new_gamma)


class AffineConnection:
    """An even affine connection, Gammabar_ba^c = (nabla_{d_a} d_b)^c of parity a + b + c."""

    __slots__ = ("chart", "gammabar")

    def __init__(self, chart: ChartSignature, gammabar: Sequence[Sequence[Sequence[GradedPoly]]]):
        _check_shape3(chart, gammabar, "Gammabar")
        par = chart.parities
        for b in range(chart.dim):
            for a in range(chart.dim):
                for c in range(chart.dim):
                    expected = (par[a] + par[b] + par[c]) % 2
                    if not gammabar[b][a][c].has_parity(expected):
                        raise ParityError(
                            f"Gammabar entry ({b},{a},{c}) must have parity {expected}"
                        )
        self.chart = chart
        self.gammabar = _freeze3(gammabar)

    @classmethod
    def flat(cls, chart: ChartSignature) -> AffineConnection:
        return cls(chart, _zeros3(chart))

    def __call__(self, X: VectorField, Y: VectorField) -> VectorField:
        return affine_nabla(self, X, Y)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineConnection):
            return NotImplemented
        return self.chart == other.chart and self.gammabar == other.gammabar

    def __hash__(self) -> int:
        return hash((self.chart, self.gammabar))


def affine_nabla(A: AffineConnection, X: VectorField, Y: VectorField) -> VectorField:
    """nablabar_X Y = X^a (d_a Y^c + (-1)^{a(y+b)} Y^b Gammabar_ba^c) d_c."""
    _same_chart(A.chart, X.chart)
    _same_chart(A.chart, Y.chart)
    if X.is_zero or Y.is_zero:
        return VectorField.zero(A.chart)
    if not X.is_homogeneous() or not Y.is_homogeneous():
        total = VectorField.zero(A.chart)
        for xp in X.split():
            for yp in Y.split():
                total = total + affine_nabla(A, xp, yp)
        return total
    return _local_form(A.chart, None, A.gammabar, X, Y, (X.parity + Y.parity) % 2, 0)


def induce_from_affine(A: AffineConnection, rho: OddEndomorphism) -> OddQuasiConnection:
    """The odd connection nabla_X Y = nablabar_{rho(X)} Y; Gamma_ba^c = rho_a^d Gammabar_bd^c."""
    _same_chart(A.chart, rho.chart)
    rho = OddInvolution.of(rho)
    dim = A.chart.dim
    rows = _zeros3(A.chart)
    for b in range(dim):
        for a in range(dim):
            for d in range(dim):
                r = rho.matrix[a][d]
                if r.is_zero:
                    continue
                for c in range(dim):
                    g = A.gammabar[b][d][c]
                    if not g.is_zero:
                        rows[b][a][c] = rows[b][a][c] + r * g
    return OddQuasiConnection(A.chart, rho, rows)


def extract_affine(
    C: OddQuasiConnection, rho: Optional[OddEndomorphism] = None
) -> AffineConnection:
    """The affine connection nablabar_X Y = nabla_{rho(X)} Y generating C.

    Gammabar_ba^c = (-1)^{a+d+1} rho_a^d Gamma_bd^c.
    """
    rho = OddInvolution.of(rho or C.rho)
    if rho != C.rho:
        raise ConnectionMismatchError("extract_affine needs the involution of the connection")
    dim = C.chart.dim
    par = C.chart.parities
    rows = _zeros3(C.chart)
    for b in range(dim):
        for a in range(dim):
            for d in range(dim):
                r = rho.matrix[a][d]
                if r.is_zero:
                    continue
                negate = (par[a] + par[d] + 1) % 2
                for c in range(dim):
                    g = C.gamma[b][d][c]
                    if not g.is_zero:
                        term = r * g
                        rows[b][a][c] = rows[b][a][c] - term if negate else rows[b][a][c] + term
    return AffineConnection(C.chart, rows)


class BanalTensor:
    """An odd (1,2) tensor B(X, Y), stored like Christoffel symbols B_ba^c = B(d_a, d_b)^c."""

    __slots__ = ("chart", "components")

    def __init__(
        self, chart: ChartSignature, components: Sequence[Sequence[Sequence[GradedPoly]]]
    ):
        self.chart = chart
        self.components = OddQuasiConnection(chart, OddEndomorphism.zero(chart), components).gamma

    def as_connection(self) -> OddQuasiConnection:
        """The banal quasi-connection with rho = 0 and Gamma = B."""
        return OddQuasiConnection(self.chart, OddEndomorphism.zero(self.chart), self.components)

    @property
    def is_zero(self) -> bool:
        return all(v.is_zero for m in self.components for row in m for v in row)

    def __call__(self, X: VectorField, Y: VectorField) -> VectorField:
        return nabla(self.as_connection(), X, Y)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BanalTensor):
            return NotImplemented
        return self.chart == other.chart and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.chart, self.components))


def banal_difference(C1: OddQuasiConnection, C2: OddQuasiConnection) -> BanalTensor:
    """B(X, Y) = nabla1_X Y - nabla2_X Y for connections sharing rho."""
    _same_chart(C1.chart, C2.chart)
    if C1.rho != C2.rho:
        raise ConnectionMismatchError("Banal differences need connections with the same rho")
    rows = [
        [[u - v for u, v in zip(c1, c2)] for c1, c2 in zip(r1, r2)]
        for r1, r2 in zip(C1.gamma, C2.gamma)
    ]
    return BanalTensor(C1.chart, rows)


def banal_part(
    C: OddQuasiConnection, A: AffineConnection, rho: Optional[OddEndomorphism] = None
) -> BanalTensor:
    """The tensor B with C = (A induced through rho) + B; rho defaults to C.rho."""
    return banal_difference(C, induce_from_affine(A, rho or C.rho))
