"""Seeded random parity-legal data for property checks.

Every generator takes a numpy Generator so a whole run is reproducible
from one seed. Polynomials draw at most MAX_TERMS monomials of even degree
at most MAX_EVEN_DEGREE with small integer coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

import numpy as np

from oddcon.algebra.grassmann import ChartSignature, GradedPoly, Monomial, monomials
from oddcon.algebra.matrices import invert_rational
from oddcon.connections.quasi import AffineConnection, OddEndomorphism, OddQuasiConnection
from oddcon.errors import SingularMatrixError
from oddcon.geometry.fields import OneForm, VectorField

MAX_EVEN_DEGREE = 2
MAX_TERMS = 3
COEFFICIENTS = range(-3, 4)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def _pool(chart: ChartSignature, parity: int, max_degree: int) -> list[Monomial]:
    return list(monomials(chart, max_degree, parity))


def random_poly(
    rng: np.random.Generator,
    chart: ChartSignature,
    parity: int,
    max_degree: int = MAX_EVEN_DEGREE,
    max_terms: int = MAX_TERMS,
    allow_zero: bool = True,
) -> GradedPoly:
    """A homogeneous polynomial of the given parity."""
    pool = _pool(chart, parity, max_degree)
    if not pool:
        return GradedPoly.zero(chart)
    count = int(rng.integers(0 if allow_zero else 1, max_terms + 1))
    chosen = rng.choice(len(pool), size=min(count, len(pool)), replace=False)
    nonzero = [c for c in COEFFICIENTS if c]
    terms = {pool[int(i)]: nonzero[int(rng.integers(len(nonzero)))] for i in chosen}
    return GradedPoly(chart, terms)


def random_function(
    rng: np.random.Generator, chart: ChartSignature, parity: Optional[int] = None
) -> GradedPoly:
    if parity is None:
        parity = int(rng.integers(2))
    return random_poly(rng, chart, parity, allow_zero=False)


def random_field(
    rng: np.random.Generator,
    chart: ChartSignature,
    parity: Optional[int] = None,
    max_terms: int = 2,
) -> VectorField:
    """A homogeneous vector field; components are sparse."""
    if parity is None:
        parity = int(rng.integers(2))
    comps = [
        random_poly(rng, chart, (parity + q) % 2, max_terms=max_terms) for q in chart.parities
    ]
    field = VectorField(chart, comps, parity)
    if field.is_zero:
        a = int(rng.integers(chart.dim))
        comps[a] = random_poly(rng, chart, (parity + chart.parities[a]) % 2, allow_zero=False)
        field = VectorField(chart, comps, parity)
    return field


def random_oneform(
    rng: np.random.Generator, chart: ChartSignature, parity: Optional[int] = None
) -> OneForm:
    if parity is None:
        parity = int(rng.integers(2))
    comps = [random_poly(rng, chart, (parity + q) % 2, max_terms=2) for q in chart.parities]
    return OneForm(chart, comps, parity)


def random_gamma(
    rng: np.random.Generator, chart: ChartSignature, shift: int = 1, density: float = 0.5
) -> list[list[list[GradedPoly]]]:
    """Christoffel-shaped array of parity a + b + c + shift, about `density` filled."""
    par = chart.parities
    rows = []
    for b in range(chart.dim):
        plane = []
        for a in range(chart.dim):
            line = []
            for c in range(chart.dim):
                if rng.random() < density:
                    parity = (par[a] + par[b] + par[c] + shift) % 2
                    line.append(random_poly(rng, chart, parity, max_terms=2))
                else:
                    line.append(GradedPoly.zero(chart))
            plane.append(line)
        rows.append(plane)
    return rows


def random_rho(rng: np.random.Generator, chart: ChartSignature) -> OddEndomorphism:
    par = chart.parities
    return OddEndomorphism(
        chart,
        [
            [
                random_poly(rng, chart, (par[a] + par[b] + 1) % 2, max_terms=2)
                for b in range(chart.dim)
            ]
            for a in range(chart.dim)
        ],
    )


def random_connection(
    rng: np.random.Generator,
    chart: ChartSignature,
    rho: Optional[OddEndomorphism] = None,
    density: float = 0.5,
) -> OddQuasiConnection:
    """Random Gamma over a given rho, or over a random rho."""
    rho = rho if rho is not None else random_rho(rng, chart)
    return OddQuasiConnection(chart, rho, random_gamma(rng, chart, 1, density))


def random_affine(
    rng: np.random.Generator, chart: ChartSignature, density: float = 0.5
) -> AffineConnection:
    return AffineConnection(chart, random_gamma(rng, chart, 0, density))


def random_noninvolution(rng: np.random.Generator, base: OddEndomorphism) -> OddEndomorphism:
    """lambda * base + N with lambda not in {0, 1, -1} and N without constant terms.

    For an involutive base, rho rho = lambda^2 + (terms without constant
    part), so rho is never an involution and never zero.
    """
    chart = base.chart
    scale = Fraction(int(rng.choice([-3, -2, 2, 3])), int(rng.choice([1, 2])))
    if abs(scale) == 1:
        scale = Fraction(2)
    par = chart.parities
    rows = []
    for a in range(chart.dim):
        row = []
        for b in range(chart.dim):
            noise = random_poly(rng, chart, (par[a] + par[b] + 1) % 2, max_terms=1)
            noise = noise - noise.body()
            row.append(base.matrix[a][b] * scale + noise)
        rows.append(row)
    return OddEndomorphism(chart, rows)


def random_frame_change(rng: np.random.Generator, chart: ChartSignature) -> list[list[Fraction]]:
    """A random invertible constant matrix that preserves the even/odd blocks."""
    n = chart.n_even
    while True:
        matrix = [[Fraction(0)] * chart.dim for _ in range(chart.dim)]
        for a in range(chart.dim):
            for b in range(chart.dim):
                if (a < n) == (b < n):
                    matrix[a][b] = Fraction(int(rng.integers(-2, 3)))
        try:
            invert_rational(matrix)
        except SingularMatrixError:
            continue
        return matrix
