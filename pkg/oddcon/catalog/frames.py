"""Parallelisations, odd Weitzenböck connections and induced odd metrics.

A parallelisation is a global frame {Z_alpha} with its dual coframe
{omega^alpha}, <Z_beta, omega^alpha> = delta. Frame components of a field are
X^alpha = <X, omega^alpha>, so X = X^alpha Z_alpha.

Vierbeins follow the sign convention

    Z_alpha = (-1)^{c alpha} E_alpha^c d_c,    omega^alpha = (-1)^{b alpha} dx^b E_b^alpha
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional, Sequence

from oddcon.algebra.grassmann import ChartSignature, GradedPoly
from oddcon.algebra.matrices import invert_rational, invert_unipotent
from oddcon.connections.extension import Rank2Covariant
from oddcon.connections.quasi import (
    OddEndomorphism,
    OddInvolution,
    OddQuasiConnection,
    christoffel_from_operator,
    rho_apply,
)
from oddcon.errors import ChartError, ChartMismatchError, FrameError, ParityError
from oddcon.geometry.fields import OneForm, VectorField, basis_fields, basis_forms, pairing


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


class Parallelisation:
    """A global frame and its coframe on one chart."""

    __slots__ = ("chart", "frame", "coframe", "labels")

    def __init__(
        self,
        chart: ChartSignature,
        frame: Sequence[VectorField],
        coframe: Sequence[OneForm],
        labels: Optional[Sequence[str]] = None,
    ):
        if len(frame) != chart.dim or len(coframe) != chart.dim:
            raise ChartMismatchError(f"A frame on {chart} needs {chart.dim} fields and forms")
        for alpha, (Z, omega) in enumerate(zip(frame, coframe)):
            if Z.chart != chart or omega.chart != chart:
                raise ChartMismatchError(f"Frame element {alpha} lives on another chart")
            if Z.parity != chart.parities[alpha] or omega.parity != chart.parities[alpha]:
                raise ParityError(
                    f"Frame element {alpha} must have parity {chart.parities[alpha]}"
                )
        self.chart = chart
        self.frame = tuple(frame)
        self.coframe = tuple(coframe)
        self.labels = tuple(labels) if labels else tuple(f"Z{i + 1}" for i in range(chart.dim))
        bad = orthonormality_residuals(self)
        if bad:
            kind, i, j, residual = bad[0]
            raise FrameError(f"Coframe is not dual to the frame ({kind} at {i},{j}: {residual})")

    @classmethod
    def from_frame(
        cls,
        chart: ChartSignature,
        frame: Sequence[VectorField],
        labels: Optional[Sequence[str]] = None,
    ) -> Parallelisation:
        """Compute the coframe by inverting the frame matrix Z_alpha^c.

        Raises:
            SingularMatrixError: if the frame matrix has no polynomial inverse.
        """
        inverse = invert_unipotent([list(Z.components) for Z in frame])
        coframe = [
            OneForm(chart, [inverse[c][alpha] for c in range(chart.dim)], chart.parities[alpha])
            for alpha in range(chart.dim)
        ]
        return cls(chart, frame, coframe, labels)

    @classmethod
    def coordinate(cls, chart: ChartSignature) -> Parallelisation:
        labels = [f"d_{name}" for name in chart.names]
        return cls(chart, basis_fields(chart), basis_forms(chart), labels)

    @property
    def is_paired(self) -> bool:
        return self.chart.n_even == self.chart.n_odd

    def components(self, X: VectorField) -> list[GradedPoly]:
        """Frame components X^alpha = <X, omega^alpha>."""
        return [pairing(X, omega) for omega in self.coframe]

    def compose(self, components: Sequence[GradedPoly]) -> VectorField:
        """sum_alpha X^alpha Z_alpha."""
        total = VectorField.zero(self.chart)
        for value, Z in zip(components, self.frame):
            if not value.is_zero:
                total = total + value * Z
        return total

    def vierbein(self, alpha: int, c: int) -> GradedPoly:
        """E_alpha^c."""
        par = self.chart.parities
        return self.frame[alpha].components[c] * _sign(par[c] * par[alpha])

    def covierbein(self, b: int, alpha: int) -> GradedPoly:
        """E_b^alpha."""
        par = self.chart.parities
        return self.coframe[alpha].components[b] * _sign(par[b] * par[alpha])

    def __repr__(self) -> str:
        return f"Parallelisation({self.chart}, {', '.join(self.labels)})"


def orthonormality_residuals(par: Parallelisation) -> list[tuple[str, int, int, GradedPoly]]:
    """Nonzero entries of <Z_beta, omega^alpha> - delta and omega^alpha_b Z_alpha^c - delta."""
    chart = par.chart
    bad = []
    for beta, Z in enumerate(par.frame):
        for alpha, omega in enumerate(par.coframe):
            residual = pairing(Z, omega) - (1 if alpha == beta else 0)
            if not residual.is_zero:
                bad.append(("frame", beta, alpha, residual))
    for b in range(chart.dim):
        for c in range(chart.dim):
            residual = GradedPoly.constant(chart, -1 if b == c else 0)
            for Z, omega in zip(par.frame, par.coframe):
                residual = residual + omega.components[b] * Z.components[c]
            if not residual.is_zero:
                bad.append(("coordinate", b, c, residual))
    return bad


def _require_paired(par: Parallelisation) -> None:
    if not par.is_paired:
        raise ChartError(f"Odd involutions need an n|n chart, got {par.chart}")


def frame_endomorphism(
    par: Parallelisation, matrix: Sequence[Sequence[int | Fraction]]
) -> OddEndomorphism:
    """The odd map rho(Z_alpha) = sum_beta M[alpha][beta] Z_beta in coordinates.

    rho_a^b = sum (-1)^{a+alpha} omega^alpha_a M[alpha][beta] Z_beta^b
    """
    chart = par.chart
    parity = chart.parities
    for alpha, row in enumerate(matrix):
        for beta, value in enumerate(row):
            if value and parity[alpha] == parity[beta]:
                raise ParityError(f"Frame map entry ({alpha},{beta}) does not change parity")
    rows = []
    for a in range(chart.dim):
        row = []
        for b in range(chart.dim):
            entry = GradedPoly.zero(chart)
            for alpha, omega in enumerate(par.coframe):
                if omega.components[a].is_zero:
                    continue
                image = GradedPoly.zero(chart)
                for beta, value in enumerate(matrix[alpha]):
                    if value:
                        image = image + par.frame[beta].components[b] * Fraction(value)
                term = omega.components[a] * image
                entry = entry - term if (parity[a] + parity[alpha]) % 2 else entry + term
            row.append(entry)
        rows.append(row)
    return OddEndomorphism(chart, rows)


def frame_involution(par: Parallelisation) -> OddInvolution:
    """rho(X_i) = Y_i and rho(Y_i) = X_i for a frame {X_1..X_n; Y_1..Y_n}."""
    _require_paired(par)
    n = par.chart.n_even
    swap = [[0] * par.chart.dim for _ in range(par.chart.dim)]
    for i in range(n):
        swap[i][n + i] = 1
        swap[n + i][i] = 1
    return OddInvolution.of(frame_endomorphism(par, swap))


def change_frame(
    par: Parallelisation, matrix: Sequence[Sequence[int | Fraction]]
) -> Parallelisation:
    """Z'_alpha = sum_beta A[alpha][beta] Z_beta for a constant parity-preserving A."""
    chart = par.chart
    parity = chart.parities
    for alpha, row in enumerate(matrix):
        for beta, value in enumerate(row):
            if value and parity[alpha] != parity[beta]:
                raise ParityError(f"Frame change entry ({alpha},{beta}) mixes parities")
    inverse = invert_rational(matrix)
    frame = []
    coframe = []
    for alpha in range(chart.dim):
        Z = VectorField.zero(chart, parity[alpha])
        omega = OneForm.zero(chart, parity[alpha])
        for beta in range(chart.dim):
            if matrix[alpha][beta]:
                Z = Z + par.frame[beta] * Fraction(matrix[alpha][beta])
            if inverse[beta][alpha]:
                omega = omega + par.coframe[beta] * inverse[beta][alpha]
        frame.append(Z)
        coframe.append(omega)
    return Parallelisation(chart, frame, coframe, [f"{label}'" for label in par.labels])


def weitzenbock_operator(
    par: Parallelisation, rho: OddEndomorphism
) -> Callable[[VectorField, VectorField], VectorField]:
    """nabla_X (Y^alpha Z_alpha) = rho(X)(Y^alpha) Z_alpha."""

    def operator(X: VectorField, Y: VectorField) -> VectorField:
        moved = rho_apply(rho, X)
        return par.compose([moved(value) for value in par.components(Y)])

    return operator


def weitzenbock(par: Parallelisation, rho: OddEndomorphism) -> OddQuasiConnection:
    """The odd Weitzenböck connection generated by rho; every Z_alpha is parallel.

    Raises:
        ChartError: if the chart is not n|n.
        NotInvolutiveError: if rho is not an involution.
    """
    _require_paired(par)
    rho = OddInvolution.of(rho)
    gamma = christoffel_from_operator(par.chart, weitzenbock_operator(par, rho))
    return OddQuasiConnection(par.chart, rho, gamma)


def vierbein_christoffel(
    par: Parallelisation, rho: OddEndomorphism
) -> list[list[list[GradedPoly]]]:
    """Gamma_ba^c = sum (-1)^{bc + alpha + d(c + alpha)} rho_a^d E_alpha^c d_d E_b^alpha."""
    chart = par.chart
    parity = chart.parities
    dim = chart.dim
    derivatives = {
        (b, alpha, d): par.covierbein(b, alpha).partial(d)
        for b in range(dim)
        for alpha in range(dim)
        for d in range(dim)
    }
    zero = GradedPoly.zero(chart)
    rows = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
    for b in range(dim):
        for a in range(dim):
            for c in range(dim):
                total = zero
                for d, r in enumerate(rho.matrix[a]):
                    if r.is_zero:
                        continue
                    for alpha in range(dim):
                        dE = derivatives[(b, alpha, d)]
                        E = par.vierbein(alpha, c)
                        if dE.is_zero or E.is_zero:
                            continue
                        term = r * E * dE
                        exponent = (
                            parity[b] * parity[c]
                            + parity[alpha]
                            + parity[d] * (parity[c] + parity[alpha])
                        )
                        total = total - term if exponent % 2 else total + term
                rows[b][a][c] = total
    return rows


def induced_odd_metric(par: Parallelisation) -> Rank2Covariant:
    """g(X_i, X_j) = g(Y_i, Y_j) = 0 and g(X_i, Y_j) = g(Y_j, X_i) = delta_ij.

    G_ab = sum (-1)^{(b + beta) alpha} omega^alpha_a omega^beta_b g_{alpha beta}
    """
    _require_paired(par)
    chart = par.chart
    parity = chart.parities
    n = chart.n_even
    partners = {i: n + i for i in range(n)} | {n + i: i for i in range(n)}
    rows = []
    for a in range(chart.dim):
        row = []
        for b in range(chart.dim):
            entry = GradedPoly.zero(chart)
            for alpha, beta in partners.items():
                left = par.coframe[alpha].components[a]
                right = par.coframe[beta].components[b]
                if left.is_zero or right.is_zero:
                    continue
                term = left * right
                negate = (parity[b] + parity[beta]) * parity[alpha] % 2
                entry = entry - term if negate else entry + term
            row.append(entry)
        rows.append(row)
    return Rank2Covariant(chart, 1, rows)


def frame_divergence(par: Parallelisation, rho: OddEndomorphism, X: VectorField) -> GradedPoly:
    """Div X = sum_alpha (-1)^{alpha(x+1)} rho(Z_alpha)(X^alpha) for a Weitzenböck connection."""
    if not X.is_homogeneous():
        even, odd = X.split()
        return frame_divergence(par, rho, even) + frame_divergence(par, rho, odd)
    x = X.homogeneous_parity()
    total = GradedPoly.zero(par.chart)
    for alpha, (Z, value) in enumerate(zip(par.frame, par.components(X))):
        if value.is_zero:
            continue
        term = rho_apply(rho, Z)(value)
        total = total - term if par.chart.parities[alpha] * (x + 1) % 2 else total + term
    return total
