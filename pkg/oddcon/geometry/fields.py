"""Vector fields and one-forms on a chart.

Vector fields are written with coefficients on the left, X = X^a d_a;
one-forms with coefficients on the right, alpha = dx^a alpha_a. A
homogeneous field of parity p has components X^a of parity p + parity(a).
Fields whose components fit no single parity are non-homogeneous and carry
parity None; split() separates their even and odd parts.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from oddcon.algebra.grassmann import ChartSignature, Coordinate, GradedPoly
from oddcon.errors import ChartMismatchError, ParityError


def _infer_parity(
    chart: ChartSignature,
    components: Sequence[GradedPoly],
    declared: Optional[int],
    shift: int = 0,
) -> Optional[int]:
    """Check declared parity, or find the unique parity the components fit."""
    if len(components) != chart.dim:
        raise ChartMismatchError(
            f"Expected {chart.dim} components on {chart}, got {len(components)}"
        )
    for comp in components:
        if comp.chart != chart:
            raise ChartMismatchError(f"Component lives on {comp.chart}, not {chart}")

    def fits(p: int) -> bool:
        return all(
            c.has_parity((p + shift + q) % 2) for c, q in zip(components, chart.parities)
        )

    if declared is not None:
        if declared not in (0, 1):
            raise ParityError(f"Parity must be 0 or 1, got {declared}")
        if not fits(declared):
            raise ParityError(f"Components do not have parity {declared}")
        return declared
    candidates = [p for p in (0, 1) if fits(p)]
    return candidates[0] if len(candidates) == 1 else None


class _Graded:
    """Shared arithmetic of component lists."""

    __slots__ = ("chart", "components", "parity")

    def __init__(
        self,
        chart: ChartSignature,
        components: Iterable[GradedPoly],
        parity: Optional[int] = None,
    ):
        components = tuple(components)
        self.chart = chart
        self.parity = _infer_parity(chart, components, parity)
        self.components = components

    @classmethod
    def zero(cls, chart: ChartSignature, parity: Optional[int] = None):
        return cls(chart, (GradedPoly.zero(chart),) * chart.dim, parity)

    @classmethod
    def basis(cls, chart: ChartSignature, coordinate: Coordinate):
        a = chart.index(coordinate)
        comps = [GradedPoly.zero(chart)] * chart.dim
        comps[a] = GradedPoly.constant(chart, 1)
        return cls(chart, comps, chart.parities[a])

    @classmethod
    def from_mapping(
        cls,
        chart: ChartSignature,
        entries: Mapping[Coordinate, GradedPoly],
        parity: Optional[int] = None,
    ):
        comps = [GradedPoly.zero(chart)] * chart.dim
        for key, value in entries.items():
            comps[chart.index(key)] = value
        return cls(chart, comps, parity)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def is_homogeneous(self) -> bool:
        return self.parity is not None or self.is_zero

    def homogeneous_parity(self) -> int:
        """Parity of a homogeneous value; zero counts as even.

        Raises:
            ParityError: if the value is not homogeneous.
        """
        if self.parity is not None:
            return self.parity
        if self.is_zero:
            return 0
        raise ParityError(f"{type(self).__name__} is not homogeneous")

    def split(self):
        """Return the (even, odd) parts."""
        parts = [[], []]
        for comp, q in zip(self.components, self.chart.parities):
            even, odd = comp.split()
            # component parity p + q, so the even part of the field has parity-q components
            parts[0].append(odd if q else even)
            parts[1].append(even if q else odd)
        cls = type(self)
        return cls(self.chart, parts[0], 0), cls(self.chart, parts[1], 1)

    def _check(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"Cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.chart != self.chart:
            raise ChartMismatchError(f"Operands live on {self.chart} and {other.chart}")

    def __add__(self, other):
        self._check(other)
        return type(self)(self.chart, (a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other):
        self._check(other)
        return type(self)(self.chart, (a - b for a, b in zip(self.components, other.components)))

    def __neg__(self):
        return type(self)(self.chart, (-a for a in self.components), self.parity)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.chart == other.chart and self.components == other.components

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.chart, self.components))

    def __getitem__(self, coordinate: Coordinate) -> GradedPoly:
        return self.components[self.chart.index(coordinate)]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({format_field(self)})"


class VectorField(_Graded):
    """X = X^a d_a."""

    __slots__ = ()

    def __rmul__(self, f: Union[GradedPoly, int, Fraction]) -> VectorField:
        """Module action f X, components f X^a."""
        if isinstance(f, (int, Fraction)):
            return VectorField(self.chart, (c * f for c in self.components), self.parity)
        if not isinstance(f, GradedPoly):
            return NotImplemented
        parity = None
        if self.parity is not None and f.is_homogeneous() and not f.is_zero:
            parity = (self.parity + f.parity) % 2
        return VectorField(self.chart, (f * c for c in self.components), parity)

    def __mul__(self, s: Union[int, Fraction]) -> VectorField:
        if isinstance(s, (int, Fraction)):
            return VectorField(self.chart, (c * s for c in self.components), self.parity)
        return NotImplemented

    def __call__(self, f: GradedPoly) -> GradedPoly:
        return vf_apply(self, f)


class OneForm(_Graded):
    """alpha = dx^a alpha_a, coefficients on the right."""

    __slots__ = ()

    def __mul__(self, f: Union[GradedPoly, int, Fraction]) -> OneForm:
        """Right module action alpha f, components alpha_a f."""
        if isinstance(f, (int, Fraction)):
            return OneForm(self.chart, (c * f for c in self.components), self.parity)
        if not isinstance(f, GradedPoly):
            return NotImplemented
        parity = None
        if self.parity is not None and f.is_homogeneous() and not f.is_zero:
            parity = (self.parity + f.parity) % 2
        return OneForm(self.chart, (c * f for c in self.components), parity)


def format_field(value: _Graded) -> str:
    """Nonzero components as `d_t: expr; d_theta: expr` (`dt:` for one-forms)."""
    prefix = "d_" if isinstance(value, VectorField) else "d"
    parts = [
        f"{prefix}{name}: {comp}"
        for name, comp in zip(value.chart.names, value.components)
        if not comp.is_zero
    ]
    return "; ".join(parts) if parts else "0"


def coordinate_field(chart: ChartSignature, coordinate: Coordinate) -> VectorField:
    """The coordinate field d_a."""
    return VectorField.basis(chart, coordinate)


def coordinate_form(chart: ChartSignature, coordinate: Coordinate) -> OneForm:
    """The coordinate one-form dx^a."""
    return OneForm.basis(chart, coordinate)


def basis_fields(chart: ChartSignature) -> list[VectorField]:
    return [coordinate_field(chart, a) for a in range(chart.dim)]


def basis_forms(chart: ChartSignature) -> list[OneForm]:
    return [coordinate_form(chart, a) for a in range(chart.dim)]


def vf_apply(X: VectorField, f: GradedPoly) -> GradedPoly:
    """X(f) = sum_a X^a d_a f."""
    if f.chart != X.chart:
        raise ChartMismatchError(f"Function lives on {f.chart}, field on {X.chart}")
    result = GradedPoly.zero(X.chart)
    for a, comp in enumerate(X.components):
        if not comp.is_zero:
            result = result + comp * f.partial(a)
    return result


def vf_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """Graded commutator [X, Y]^c = X(Y^c) - (-1)^{XY} Y(X^c)."""
    if X.chart != Y.chart:
        raise ChartMismatchError(f"Operands live on {X.chart} and {Y.chart}")
    if X.is_zero or Y.is_zero:
        return VectorField.zero(X.chart)
    if not X.is_homogeneous() or not Y.is_homogeneous():
        total = VectorField.zero(X.chart)
        for x_part in X.split():
            for y_part in Y.split():
                total = total + vf_bracket(x_part, y_part)
        return total
    x, y = X.parity, Y.parity
    sign = -1 if x * y else 1
    comps = []
    for yc, xc in zip(Y.components, X.components):
        comps.append(vf_apply(X, yc) - vf_apply(Y, xc) * sign)
    return VectorField(X.chart, comps, (x + y) % 2)


def pairing(X: VectorField, alpha: OneForm) -> GradedPoly:
    """<X, alpha> = sum_a X^a alpha_a."""
    if X.chart != alpha.chart:
        raise ChartMismatchError(f"Operands live on {X.chart} and {alpha.chart}")
    result = GradedPoly.zero(X.chart)
    for xa, aa in zip(X.components, alpha.components):
        if not xa.is_zero and not aa.is_zero:
            result = result + xa * aa
    return result
