"""Tests for graded-commutative polynomial arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from oddcon.algebra.grassmann import (
    ChartSignature,
    GradedPoly,
    Monomial,
    gp_eval_even,
    gp_substitute,
)
from oddcon.errors import (
    ChartError,
    ChartMismatchError,
    ParityError,
    SubstitutionError,
    UnknownCoordinateError,
)
from tests.strategies import R11, R12, R22, homogeneous_polys, polys


def _coords(chart: ChartSignature) -> list[GradedPoly]:
    return [GradedPoly.coordinate(chart, a) for a in range(chart.dim)]


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


class TestChartSignature:
    def test_standard_r11_uses_t_and_theta(self):
        assert R11.names == ("t", "theta")
        assert R11.parities == (0, 1)

    def test_standard_names(self):
        assert R22.names == ("x1", "x2", "xi1", "xi2")
        assert R22.dim == 4

    def test_str(self):
        assert str(R11) == "R^{1|1}(t, theta)"

    def test_index_by_name_and_position(self):
        assert R12.index("xi2") == 2
        assert R12.index(1) == 1
        assert R12.parity("xi1") == 1

    def test_unknown_coordinate(self):
        with pytest.raises(UnknownCoordinateError):
            R11.index("y")
        with pytest.raises(UnknownCoordinateError):
            R11.index(5)

    def test_duplicate_names_rejected(self):
        with pytest.raises(ChartError):
            ChartSignature(("t",), ("t",))

    def test_invalid_name_rejected(self):
        with pytest.raises(ChartError):
            ChartSignature(("1t",), ())


class TestProduct:
    def test_odd_square_vanishes(self):
        theta = GradedPoly.coordinate(R11, "theta")
        assert (theta * theta).is_zero

    @settings(max_examples=200)
    @given(polys(R22, parity=1))
    def test_odd_elements_are_nilpotent(self, f):
        assert (f * f).is_zero

    def test_odd_generators_anticommute(self):
        _, xi1, xi2 = _coords(R12)
        assert xi1 * xi2 == -(xi2 * xi1)
        assert not (xi1 * xi2).is_zero

    def test_even_commutes_with_odd(self):
        t, theta = _coords(R11)
        assert t * theta == theta * t

    def test_scalar_arithmetic(self):
        t, _ = _coords(R11)
        assert (t + 1) - 1 == t
        assert 2 - t == -(t - 2)
        assert t * Fraction(1, 2) * 2 == t
        assert (t * 0).is_zero

    def test_chart_mismatch(self):
        with pytest.raises(ChartMismatchError):
            GradedPoly.coordinate(R11, "t") + GradedPoly.coordinate(R12, "x1")

    def test_monomial_must_fit_chart(self):
        with pytest.raises(ChartMismatchError):
            GradedPoly(R11, {Monomial((1, 0), 0): 1})
        with pytest.raises(ChartMismatchError):
            GradedPoly(R11, {Monomial((0,), 2): 1})

    @settings(max_examples=200)
    @given(homogeneous_polys(R12), homogeneous_polys(R12))
    def test_graded_commutativity(self, f, g):
        """f g = (-1)^{|f||g|} g f for homogeneous f, g."""
        fp, gp = f.parity or 0, g.parity or 0
        assert f * g == (g * f) * _sign(fp * gp)

    @settings(max_examples=200)
    @given(polys(R22), polys(R22), polys(R22))
    def test_associativity(self, f, g, h):
        assert (f * g) * h == f * (g * h)

    @settings(max_examples=200)
    @given(polys(R12), polys(R12), polys(R12))
    def test_distributivity(self, f, g, h):
        assert f * (g + h) == f * g + f * h


class TestParity:
    def test_parity_of_coordinates(self):
        t, theta = _coords(R11)
        assert t.parity == 0
        assert theta.parity == 1
        assert (t * theta).parity == 1

    def test_zero_has_no_parity(self):
        assert GradedPoly.zero(R11).parity is None
        assert GradedPoly.zero(R11).has_parity(1)

    def test_mixed_parity_raises(self):
        t, theta = _coords(R11)
        with pytest.raises(ParityError):
            (t + theta).parity
        assert not (t + theta).is_homogeneous()

    def test_split(self):
        t, theta = _coords(R11)
        even, odd = (1 + t + theta + t * theta).split()
        assert even == 1 + t
        assert odd == theta + t * theta

    def test_body(self):
        t, theta = _coords(R11)
        assert (3 + t * theta).body() == 3
        assert (t * theta).body() == 0


class TestPartial:
    def test_even_partial(self):
        t, theta = _coords(R11)
        assert (t * t * theta).partial("t") == 2 * t * theta

    def test_odd_partial_from_the_left(self):
        t, theta = _coords(R11)
        assert (t * theta).partial("theta") == t

    def test_odd_partial_picks_up_a_sign(self):
        _, xi1, xi2 = _coords(R12)
        assert (xi1 * xi2).partial("xi2") == -xi1
        assert (xi1 * xi2).partial("xi1") == xi2

    def test_partial_of_constant(self):
        assert GradedPoly.constant(R12, 5).partial("xi1").is_zero

    @settings(max_examples=200)
    @given(homogeneous_polys(R12), homogeneous_polys(R12))
    def test_graded_leibniz_rule(self, f, g):
        """d_a(fg) = d_a(f) g + (-1)^{|a||f|} f d_a(g)."""
        fp = f.parity or 0
        for a in range(R12.dim):
            expected = f.partial(a) * g + (f * g.partial(a)) * _sign(R12.parities[a] * fp)
            assert (f * g).partial(a) == expected

    @settings(max_examples=200)
    @given(polys(R12))
    def test_odd_partials_anticommute(self, f):
        assert f.partial("xi1").partial("xi2") == -f.partial("xi2").partial("xi1")

    @settings(max_examples=200)
    @given(polys(R22, max_degree=3, max_terms=4))
    def test_mixed_partials_graded_commute(self, f):
        """d_a d_b f = (-1)^{|a||b|} d_b d_a f for every pair of coordinates."""
        for a in range(R22.dim):
            for b in range(R22.dim):
                sign = _sign(R22.parities[a] * R22.parities[b])
                assert f.partial(b).partial(a) == f.partial(a).partial(b) * sign


class TestSubstitute:
    def test_translation(self):
        t, theta = _coords(R11)
        shifted = (t * t).substitute({"t": t + 1, "theta": theta})
        assert shifted == t * t + 2 * t + 1

    def test_odd_images_keep_order(self):
        x1, xi1, xi2 = _coords(R12)
        swapped = (xi1 * xi2).substitute({"xi1": xi2, "xi2": xi1, "x1": x1})
        assert swapped == -(xi1 * xi2)

    def test_image_with_wrong_parity(self):
        t, _ = _coords(R11)
        with pytest.raises(ParityError):
            gp_substitute(t, {"theta": t})

    def test_missing_image(self):
        t, theta = _coords(R11)
        with pytest.raises(SubstitutionError):
            gp_substitute(t * theta, {"t": t})

    def test_constant_needs_no_images(self):
        assert gp_substitute(GradedPoly.constant(R11, 4), {}) == 4

    def test_eval_even(self):
        t, theta = _coords(R11)
        assert gp_eval_even(t * t * theta + t, {"t": 2}) == 4 * theta + 2

    def test_eval_even_rejects_odd_coordinate(self):
        _, theta = _coords(R11)
        with pytest.raises(ParityError):
            gp_eval_even(theta, {"theta": 1})
