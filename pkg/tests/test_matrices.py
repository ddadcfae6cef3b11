"""Tests for exact matrix inversion."""

from fractions import Fraction

import pytest

from oddcon.algebra.expression import parse_expression
from oddcon.algebra.matrices import identity, invert_rational, invert_unipotent, matmul
from oddcon.errors import OddconError, SingularMatrixError
from tests.strategies import R11, R12


def _poly(text, chart=R12):
    return parse_expression(chart, text)


class TestInvertRational:
    def test_two_by_two(self):
        rows = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
        assert invert_rational(rows) == [[1, -1], [-1, 2]]

    def test_fractions_stay_exact(self):
        assert invert_rational([[Fraction(3)]]) == [[Fraction(1, 3)]]

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            invert_rational([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])

    def test_singular_is_an_oddcon_error(self):
        with pytest.raises(OddconError):
            invert_rational([[Fraction(0)]])


class TestInvertUnipotent:
    def test_nilpotent_correction(self):
        matrix = [[_poly("2 + xi1*xi2"), _poly("xi1")], [_poly("0"), _poly("1")]]
        inverse = invert_unipotent(matrix)
        assert matmul(matrix, inverse) == identity(R12, 2)
        assert matmul(inverse, matrix) == identity(R12, 2)

    def test_singular_body(self):
        with pytest.raises(SingularMatrixError):
            invert_unipotent([[_poly("t*theta", R11)]])

    def test_even_coordinate_has_no_polynomial_inverse(self):
        with pytest.raises(SingularMatrixError) as info:
            invert_unipotent([[_poly("1 + t", R11)]])
        assert "no polynomial inverse" in str(info.value)
