"""Exact graded-commutative polynomials on a superdomain chart.

A chart R^{n|m} has n even and m odd coordinates. Superfunctions are
polynomials in the even coordinates with coefficients in the Grassmann
algebra of the odd ones, over the rationals:

    Q[x^1..x^n] (x) Lambda(xi^1..xi^m)

A monomial stores its even exponents and its odd generators as a bitmask,
read in ascending index order. Reordering signs are absorbed into the
coefficient, so equal polynomials always have equal term maps.

All values are immutable. Operations never mutate their operands.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from operator import add
from types import MappingProxyType
from typing import Iterator, Mapping, NamedTuple, Optional, Union

from oddcon.errors import (
    ChartError,
    ChartMismatchError,
    ParityError,
    SubstitutionError,
    UnknownCoordinateError,
)

EVEN = 0
ODD = 1

Scalar = Union[int, Fraction]
Coordinate = Union[int, str]


@dataclass(frozen=True)
class ChartSignature:
    """Ordered coordinate names of a chart R^{n|m}, even block first."""

    even: tuple[str, ...]
    odd: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "even", tuple(self.even))
        object.__setattr__(self, "odd", tuple(self.odd))
        names = self.even + self.odd
        if len(set(names)) != len(names):
            raise ChartError(f"Duplicate coordinate names in chart: {names}")
        for name in names:
            if not name or not (name[0].isalpha() or name[0] == "_"):
                raise ChartError(f"Invalid coordinate name: {name!r}")
            if not all(ch.isalnum() or ch == "_" for ch in name):
                raise ChartError(f"Invalid coordinate name: {name!r}")

    @classmethod
    def standard(cls, n: int, m: int) -> ChartSignature:
        """R^{1|1} as (t | theta), otherwise (x1..xn | xi1..xim)."""
        if (n, m) == (1, 1):
            return cls(("t",), ("theta",))
        return cls(
            tuple(f"x{i + 1}" for i in range(n)),
            tuple(f"xi{i + 1}" for i in range(m)),
        )

    @cached_property
    def names(self) -> tuple[str, ...]:
        return self.even + self.odd

    @cached_property
    def parities(self) -> tuple[int, ...]:
        return (EVEN,) * len(self.even) + (ODD,) * len(self.odd)

    @property
    def n_even(self) -> int:
        return len(self.even)

    @property
    def n_odd(self) -> int:
        return len(self.odd)

    @property
    def dim(self) -> int:
        return len(self.even) + len(self.odd)

    def index(self, coordinate: Coordinate) -> int:
        """Position of a coordinate given by name or index."""
        if isinstance(coordinate, int):
            if 0 <= coordinate < self.dim:
                return coordinate
            raise UnknownCoordinateError(f"Coordinate index {coordinate} out of range for {self}")
        try:
            return self.names.index(coordinate)
        except ValueError:
            raise UnknownCoordinateError(
                f"Unknown coordinate: {coordinate!r}. Chart has {', '.join(self.names)}"
            ) from None

    def parity(self, coordinate: Coordinate) -> int:
        return self.parities[self.index(coordinate)]

    def __str__(self) -> str:
        return f"R^{{{self.n_even}|{self.n_odd}}}({', '.join(self.names)})"


class Monomial(NamedTuple):
    """x^exponents times the odd generators in `odd`, in ascending order."""

    exponents: tuple[int, ...]
    odd: int

    @property
    def odd_indices(self) -> tuple[int, ...]:
        return tuple(_bits(self.odd))

    @property
    def parity(self) -> int:
        return self.odd.bit_count() & 1

    @property
    def degree(self) -> int:
        return sum(self.exponents) + self.odd.bit_count()


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _swap_parity(left: int, right: int) -> int:
    """Parity of the number of transpositions needed to sort left+right."""
    count = 0
    mask = right
    while mask:
        low = mask & -mask
        count += (left >> low.bit_length()).bit_count()
        mask ^= low
    return count & 1


class GradedPoly:
    """A superfunction: a finite rational combination of monomials."""

    __slots__ = ("chart", "_terms")

    def __init__(
        self, chart: ChartSignature, terms: Mapping[Monomial, Scalar] = MappingProxyType({})
    ):
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in terms.items():
            mono = Monomial(tuple(mono[0]), int(mono[1]))
            if len(mono.exponents) != chart.n_even or any(e < 0 for e in mono.exponents):
                raise ChartMismatchError(f"Monomial {mono} does not fit chart {chart}")
            if mono.odd < 0 or mono.odd >> chart.n_odd:
                raise ChartMismatchError(f"Monomial {mono} does not fit chart {chart}")
            if coeff:
                clean[mono] = clean.get(mono, Fraction(0)) + Fraction(coeff)
        self.chart = chart
        self._terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def _wrap(cls, chart: ChartSignature, terms: dict[Monomial, Fraction]) -> GradedPoly:
        obj = object.__new__(cls)
        obj.chart = chart
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, chart: ChartSignature) -> GradedPoly:
        return cls._wrap(chart, {})

    @classmethod
    def constant(cls, chart: ChartSignature, value: Scalar) -> GradedPoly:
        if not value:
            return cls.zero(chart)
        return cls._wrap(chart, {Monomial((0,) * chart.n_even, 0): Fraction(value)})

    @classmethod
    def coordinate(cls, chart: ChartSignature, coordinate: Coordinate) -> GradedPoly:
        a = chart.index(coordinate)
        exps = [0] * chart.n_even
        odd = 0
        if a < chart.n_even:
            exps[a] = 1
        else:
            odd = 1 << (a - chart.n_even)
        return cls._wrap(chart, {Monomial(tuple(exps), odd): Fraction(1)})

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m.exponents) and not m.odd for m in self._terms)

    def body(self) -> Fraction:
        """The constant term."""
        return self._terms.get(Monomial((0,) * self.chart.n_even, 0), Fraction(0))

    @property
    def parity(self) -> Optional[int]:
        """Parity of a homogeneous polynomial, None for zero.

        Raises:
            ParityError: if even and odd monomials are mixed.
        """
        found = {m.parity for m in self._terms}
        if not found:
            return None
        if len(found) > 1:
            raise ParityError(f"Polynomial {self} is not homogeneous")
        return found.pop()

    def has_parity(self, parity: int) -> bool:
        return all(m.parity == parity for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len({m.parity for m in self._terms}) <= 1

    def split(self) -> tuple[GradedPoly, GradedPoly]:
        """Return the (even, odd) parts."""
        parts: tuple[dict, dict] = ({}, {})
        for mono, coeff in self._terms.items():
            parts[mono.parity][mono] = coeff
        return GradedPoly._wrap(self.chart, parts[0]), GradedPoly._wrap(self.chart, parts[1])

    # Arithmetic

    def _coerce(self, other) -> Optional[GradedPoly]:
        if isinstance(other, GradedPoly):
            _check_chart(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return GradedPoly.constant(self.chart, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            value = out.get(mono, 0) + coeff
            if value:
                out[mono] = value
            else:
                out.pop(mono, None)
        return GradedPoly._wrap(self.chart, out)

    __radd__ = __add__

    def __neg__(self) -> GradedPoly:
        return GradedPoly._wrap(self.chart, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return GradedPoly.zero(self.chart)
            return GradedPoly._wrap(self.chart, {m: c * other for m, c in self._terms.items()})
        if isinstance(other, GradedPoly):
            return gp_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self._terms == GradedPoly.constant(self.chart, other)._terms
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.chart == other.chart and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.chart, frozenset(self._terms.items())))

    def __str__(self) -> str:
        from oddcon.algebra.expression import format_poly

        return format_poly(self)

    def __repr__(self) -> str:
        return f"GradedPoly({self})"

    # Calculus

    def partial(self, coordinate: Coordinate) -> GradedPoly:
        return gp_partial(self, coordinate)

    def substitute(self, images: Mapping[Coordinate, GradedPoly], **kwargs) -> GradedPoly:
        return gp_substitute(self, images, **kwargs)


def _check_chart(f: GradedPoly, g: GradedPoly) -> None:
    if f.chart is not g.chart and f.chart != g.chart:
        raise ChartMismatchError(f"Operands live on different charts: {f.chart} and {g.chart}")


def gp_mul(f: GradedPoly, g: GradedPoly) -> GradedPoly:
    """Graded-commutative product, odd generators anticommuting."""
    _check_chart(f, g)
    out: dict[Monomial, Fraction] = {}
    for (ea, oa), ca in f._terms.items():
        for (eb, ob), cb in g._terms.items():
            if oa & ob:
                continue
            key = Monomial(tuple(map(add, ea, eb)), oa | ob)
            coeff = -ca * cb if _swap_parity(oa, ob) else ca * cb
            out[key] = out.get(key, 0) + coeff
    return GradedPoly._wrap(f.chart, {m: c for m, c in out.items() if c})


def gp_partial(f: GradedPoly, coordinate: Coordinate) -> GradedPoly:
    """Left partial derivative: odd generators are pulled to the front first."""
    chart = f.chart
    a = chart.index(coordinate)
    out: dict[Monomial, Fraction] = {}
    if a < chart.n_even:
        for (exps, odd), coeff in f._terms.items():
            power = exps[a]
            if power:
                lowered = exps[:a] + (power - 1,) + exps[a + 1 :]
                out[Monomial(lowered, odd)] = coeff * power
    else:
        bit = 1 << (a - chart.n_even)
        below = bit - 1
        for (exps, odd), coeff in f._terms.items():
            if odd & bit:
                sign = (odd & below).bit_count() & 1
                out[Monomial(exps, odd ^ bit)] = -coeff if sign else coeff
    return GradedPoly._wrap(chart, out)


def gp_substitute(
    f: GradedPoly,
    images: Mapping[Coordinate, GradedPoly],
    target: Optional[ChartSignature] = None,
) -> GradedPoly:
    """Replace every coordinate of f's chart by its image polynomial.

    Args:
        f: Polynomial on the source chart.
        images: Coordinate (name or index) to image polynomial. Images must share
            one target chart and carry the parity of the coordinate they replace.
        target: Target chart, needed only when f is constant and images is empty.

    Returns:
        The composite polynomial on the target chart.
    """
    source = f.chart
    by_index: dict[int, GradedPoly] = {}
    for key, image in images.items():
        a = source.index(key)
        if not image.has_parity(source.parities[a]):
            raise ParityError(
                f"Image of {source.names[a]} must be {'odd' if source.parities[a] else 'even'}"
            )
        if target is None:
            target = image.chart
        elif image.chart != target:
            raise ChartMismatchError("Substitution images live on different charts")
        by_index[a] = image
    if target is None:
        target = source

    n = source.n_even
    powers: dict[tuple[int, int], GradedPoly] = {}

    def power(a: int, e: int) -> GradedPoly:
        if (a, e) not in powers:
            powers[(a, e)] = by_index[a] if e == 1 else gp_mul(power(a, e - 1), by_index[a])
        return powers[(a, e)]

    result = GradedPoly.zero(target)
    for (exps, odd), coeff in f._terms.items():
        term = GradedPoly.constant(target, coeff)
        needed = [a for a, e in enumerate(exps) if e] + [n + i for i in _bits(odd)]
        missing = [source.names[a] for a in needed if a not in by_index]
        if missing:
            raise SubstitutionError(f"Missing image for {', '.join(missing)}")
        for a, e in enumerate(exps):
            if e:
                term = gp_mul(term, power(a, e))
        for i in _bits(odd):
            term = gp_mul(term, by_index[n + i])
        result = result + term
    return result


def gp_eval_even(f: GradedPoly, point: Mapping[Coordinate, Scalar]) -> GradedPoly:
    """Evaluate the even coordinates at rational values, keeping the odd ones."""
    chart = f.chart
    values: dict[int, Fraction] = {}
    for key, value in point.items():
        a = chart.index(key)
        if chart.parities[a] == ODD:
            raise ParityError(f"Cannot assign a number to odd coordinate {chart.names[a]}")
        values[a] = Fraction(value)
    out: dict[Monomial, Fraction] = {}
    zero_exps = (0,) * chart.n_even
    for (exps, odd), coeff in f._terms.items():
        for a, e in enumerate(exps):
            if e:
                if a not in values:
                    raise SubstitutionError(f"Missing value for {chart.names[a]}")
                coeff = coeff * values[a] ** e
        key = Monomial(zero_exps, odd)
        out[key] = out.get(key, 0) + coeff
    return GradedPoly._wrap(chart, {m: c for m, c in out.items() if c})


def monomials(chart: ChartSignature, max_degree: int, parity: Optional[int] = None):
    """All monomials with even degree at most max_degree, optionally of one parity."""

    def exponents(k: int, budget: int):
        if k == 0:
            yield ()
            return
        for e in range(budget + 1):
            for rest in exponents(k - 1, budget - e):
                yield (e,) + rest

    for exps in exponents(chart.n_even, max_degree):
        for odd in range(1 << chart.n_odd):
            mono = Monomial(exps, odd)
            if parity is None or mono.parity == parity:
                yield mono
