"""Parity-preserving polynomial coordinate changes and their action on fields.

A change x -> x' is stored in both directions: forward[a'] gives the new
coordinate x^{a'} in terms of the old ones, inverse[a] gives x^a in terms of
the new ones. Both directions are checked to compose to the identity exactly.

Jacobians are kept in the new coordinates:

    K[a][a'] = d_a x^{a'}      (forward, then pulled to x')
    J[a'][a] = d_{a'} x^a      (inverse)
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from oddcon.algebra.grassmann import (
    ChartSignature,
    Coordinate,
    GradedPoly,
    Scalar,
    gp_substitute,
)
from oddcon.algebra.matrices import invert_rational
from oddcon.errors import ChartMismatchError, CoordinateChangeError, ParityError
from oddcon.geometry.fields import OneForm, VectorField


class CoordinateChange:
    """An invertible parity-preserving polynomial change of coordinates."""

    def __init__(
        self,
        source: ChartSignature,
        forward: Sequence[GradedPoly],
        inverse: Sequence[GradedPoly],
        target: Optional[ChartSignature] = None,
        name: str = "",
    ):
        target = target or source
        if source.n_even != target.n_even or source.n_odd != target.n_odd:
            raise ChartMismatchError(f"Charts {source} and {target} have different dimensions")
        forward, inverse = tuple(forward), tuple(inverse)
        if len(forward) != source.dim or len(inverse) != source.dim:
            raise ChartMismatchError(f"A change on {source} needs {source.dim} images each way")
        for a, (fwd, inv) in enumerate(zip(forward, inverse)):
            if fwd.chart != source or inv.chart != target:
                raise ChartMismatchError(f"Images of {source.names[a]} live on the wrong chart")
            if not fwd.has_parity(source.parities[a]) or not inv.has_parity(source.parities[a]):
                raise ParityError(f"Change does not preserve the parity of {source.names[a]}")
        self.source = source
        self.target = target
        self.forward = forward
        self.inverse = inverse
        self.name = name
        self._check_round_trip()

    def _check_round_trip(self) -> None:
        back = {a: inv for a, inv in enumerate(self.inverse)}
        there = {a: fwd for a, fwd in enumerate(self.forward)}
        for a in range(self.source.dim):
            there_and_back = gp_substitute(self.forward[a], back, target=self.target)
            if there_and_back != GradedPoly.coordinate(self.target, a):
                name = self.target.names[a]
                raise CoordinateChangeError(f"Inverse of change {self.name!r} is wrong at {name}")
            back_and_there = gp_substitute(self.inverse[a], there, target=self.source)
            if back_and_there != GradedPoly.coordinate(self.source, a):
                name = self.source.names[a]
                raise CoordinateChangeError(f"Inverse of change {self.name!r} is wrong at {name}")

    def pull(self, f: GradedPoly) -> GradedPoly:
        """Express a function of the old coordinates in the new ones."""
        if f.chart != self.source:
            raise ChartMismatchError(f"Function on {f.chart}, change starts on {self.source}")
        return gp_substitute(f, dict(enumerate(self.inverse)), target=self.target)

    def push(self, f: GradedPoly) -> GradedPoly:
        """Express a function of the new coordinates in the old ones."""
        if f.chart != self.target:
            raise ChartMismatchError(f"Function lives on {f.chart}, change ends on {self.target}")
        return gp_substitute(f, dict(enumerate(self.forward)), target=self.source)

    @cached_property
    def jacobian(self) -> tuple[tuple[GradedPoly, ...], ...]:
        """K[a][a'] = d_a x^{a'}, in the new coordinates."""
        return tuple(
            tuple(self.pull(fwd.partial(a)) for fwd in self.forward)
            for a in range(self.source.dim)
        )

    @cached_property
    def inverse_jacobian(self) -> tuple[tuple[GradedPoly, ...], ...]:
        """J[a'][a] = d_{a'} x^a, in the new coordinates."""
        return tuple(
            tuple(inv.partial(ap) for inv in self.inverse) for ap in range(self.target.dim)
        )

    def then(self, other: CoordinateChange) -> CoordinateChange:
        """The change `self` followed by `other`."""
        if other.source != self.target:
            raise ChartMismatchError("Changes do not compose: chart mismatch")
        forward = [
            gp_substitute(f, dict(enumerate(self.forward)), target=self.source)
            for f in other.forward
        ]
        inverse = [
            gp_substitute(i, dict(enumerate(other.inverse)), target=other.target)
            for i in self.inverse
        ]
        name = f"{self.name}+{other.name}" if self.name and other.name else ""
        return CoordinateChange(self.source, forward, inverse, other.target, name)

    def inverted(self) -> CoordinateChange:
        return CoordinateChange(self.target, self.inverse, self.forward, self.source, self.name)

    def __repr__(self) -> str:
        images = ", ".join(f"{n}' = {f}" for n, f in zip(self.target.names, self.forward))
        return f"CoordinateChange({self.name or 'unnamed'}: {images})"


def identity_change(chart: ChartSignature) -> CoordinateChange:
    coords = [GradedPoly.coordinate(chart, a) for a in range(chart.dim)]
    return CoordinateChange(chart, coords, coords, name="identity")


def shear_change(
    chart: ChartSignature, coordinate: Coordinate, shift: GradedPoly, name: str = "shear"
) -> CoordinateChange:
    """x^k' = x^k + h, every other coordinate fixed; h must not involve x^k."""
    k = chart.index(coordinate)
    if not shift.partial(k).is_zero:
        name = chart.names[k]
        raise CoordinateChangeError(f"Shear of {name} must not depend on {name}")
    coords = [GradedPoly.coordinate(chart, a) for a in range(chart.dim)]
    forward, inverse = list(coords), list(coords)
    forward[k] = coords[k] + shift
    inverse[k] = coords[k] - shift
    return CoordinateChange(chart, forward, inverse, name=name)


def linear_change(
    chart: ChartSignature, matrix: Sequence[Sequence[Scalar]], name: str = "linear"
) -> CoordinateChange:
    """x^{a'} = sum_a x^a M[a][a'] for a constant block-diagonal M."""
    n = chart.n_even
    for a in range(chart.dim):
        for b in range(chart.dim):
            if (a < n) != (b < n) and matrix[a][b]:
                raise ParityError("Linear change mixes even and odd coordinates")
    inverse_matrix = invert_rational(matrix)
    coords = [GradedPoly.coordinate(chart, a) for a in range(chart.dim)]

    def combine(m: Sequence[Sequence[Fraction]], column: int) -> GradedPoly:
        total = GradedPoly.zero(chart)
        for a, coord in enumerate(coords):
            if m[a][column]:
                total = total + coord * Fraction(m[a][column])
        return total

    forward = [combine(matrix, j) for j in range(chart.dim)]
    inverse = [combine(inverse_matrix, j) for j in range(chart.dim)]
    return CoordinateChange(chart, forward, inverse, name=name)


def scaling_change(
    chart: ChartSignature, factors: Sequence[Scalar], name: str = "scaling"
) -> CoordinateChange:
    """x^{a'} = c_a x^a with nonzero constants c_a."""
    if len(factors) != chart.dim or not all(factors):
        raise CoordinateChangeError(f"A scaling on {chart} needs {chart.dim} nonzero factors")
    matrix = [
        [Fraction(factors[a]) if a == b else Fraction(0) for b in range(chart.dim)]
        for a in range(chart.dim)
    ]
    return linear_change(chart, matrix, name)


def _unipotent(size: int, offset: int, total: int, scale: int) -> list[list[int]]:
    rows = [[0] * total for _ in range(total)]
    for i in range(size):
        rows[offset + i][offset + i] = scale if i == 0 else 1
        if i + 1 < size:
            rows[offset + i][offset + i + 1] = 1
    return rows


def change_library(chart: ChartSignature) -> dict[str, CoordinateChange]:
    """Standard coordinate changes used by the covariance and divergence checks.

    Contains the identity, a translation, a constant linear change, and, once
    the chart has two odd coordinates, nonlinear shears mixing the blocks.
    """
    n, m = chart.n_even, chart.n_odd
    coords = [GradedPoly.coordinate(chart, a) for a in range(chart.dim)]
    library = {"identity": identity_change(chart)}
    if n:
        library["translate"] = shear_change(chart, 0, GradedPoly.constant(chart, 1), "translate")
    even_block = _unipotent(n, 0, chart.dim, 2)
    odd_block = _unipotent(m, n, chart.dim, 3)
    matrix = [
        [even_block[a][b] + odd_block[a][b] for b in range(chart.dim)] for a in range(chart.dim)
    ]
    library["linear"] = linear_change(chart, matrix)
    if m >= 2 and n:
        xi1, xi2 = coords[n], coords[n + 1]
        even_shift = xi1 * xi2
        if n >= 2:
            even_shift = even_shift + coords[1] * coords[1]
        library["shear-even"] = shear_change(chart, 0, even_shift, "shear-even")
        library["shear-odd"] = shear_change(chart, n, coords[0] * xi2, "shear-odd")
        library["mixed"] = (
            library["linear"].then(library["shear-even"]).then(library["shear-odd"])
        )
        library["mixed"].name = "mixed"
    return library


def transform_vector(X: VectorField, change: CoordinateChange) -> VectorField:
    """X'^{a'} = X^a d_a x^{a'}, written in the new coordinates."""
    if X.chart != change.source:
        raise ChartMismatchError(f"Field lives on {X.chart}, change starts on {change.source}")
    K = change.jacobian
    pulled = [change.pull(c) for c in X.components]
    comps = []
    for ap in range(change.target.dim):
        acc = GradedPoly.zero(change.target)
        for a, comp in enumerate(pulled):
            if not comp.is_zero and not K[a][ap].is_zero:
                acc = acc + comp * K[a][ap]
        comps.append(acc)
    return VectorField(change.target, comps, X.parity)


def transform_oneform(alpha: OneForm, change: CoordinateChange) -> OneForm:
    """alpha'_{a'} = d_{a'} x^a alpha_a, written in the new coordinates."""
    if alpha.chart != change.source:
        raise ChartMismatchError(f"Form lives on {alpha.chart}, change starts on {change.source}")
    J = change.inverse_jacobian
    pulled = [change.pull(c) for c in alpha.components]
    comps = []
    for ap in range(change.target.dim):
        acc = GradedPoly.zero(change.target)
        for a, comp in enumerate(pulled):
            if not comp.is_zero and not J[ap][a].is_zero:
                acc = acc + J[ap][a] * comp
        comps.append(acc)
    return OneForm(change.target, comps, alpha.parity)
