"""Tests for vector fields, one-forms and the graded bracket."""

import pytest
from hypothesis import given, settings

from oddcon.algebra.expression import parse_expression
from oddcon.algebra.grassmann import GradedPoly
from oddcon.errors import ChartMismatchError, ParityError
from oddcon.geometry.fields import (
    OneForm,
    VectorField,
    basis_fields,
    basis_forms,
    format_field,
    pairing,
    vf_bracket,
)
from tests.strategies import R11, R12, fields, homogeneous_polys


def _poly(text: str, chart=R11) -> GradedPoly:
    return parse_expression(chart, text)


def _make_susy_d() -> VectorField:
    """D = d_theta - theta d_t on R^{1|1}."""
    return VectorField(R11, [_poly("-theta"), _poly("1")], 1)


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


class TestVectorField:
    def test_basis_parity(self):
        dt, dtheta = basis_fields(R11)
        assert dt.parity == 0
        assert dtheta.parity == 1

    def test_parity_inferred(self):
        assert VectorField(R11, [_poly("t"), _poly("theta")]).parity == 0
        assert _make_susy_d().parity == 1

    def test_non_homogeneous(self):
        X = VectorField(R11, [_poly("t"), _poly("1")])
        assert X.parity is None
        assert not X.is_homogeneous()
        even, odd = X.split()
        assert even == VectorField(R11, [_poly("t"), _poly("0")])
        assert odd == VectorField(R11, [_poly("0"), _poly("1")])

    def test_declared_parity_checked(self):
        with pytest.raises(ParityError):
            VectorField(R11, [_poly("theta"), _poly("0")], 0)

    def test_wrong_component_count(self):
        with pytest.raises(ChartMismatchError):
            VectorField(R11, [_poly("1")])

    def test_module_action(self):
        dt, _ = basis_fields(R11)
        X = _poly("theta") * dt
        assert X.parity == 1
        assert X["t"] == _poly("theta")

    def test_apply(self):
        dt, dtheta = basis_fields(R11)
        assert dt(_poly("t^2*theta")) == _poly("2*t*theta")
        assert dtheta(_poly("t*theta")) == _poly("t")

    def test_equality_ignores_declared_parity(self):
        assert VectorField.zero(R11, 0) == VectorField.zero(R11, 1)

    def test_format(self):
        assert format_field(_make_susy_d()) == "d_t: -theta; d_theta: 1"
        assert format_field(VectorField.zero(R11)) == "0"
        assert format_field(basis_forms(R11)[0]) == "dt: 1"


class TestBracket:
    def test_coordinate_fields_commute(self):
        for X in basis_fields(R12):
            for Y in basis_fields(R12):
                assert vf_bracket(X, Y).is_zero

    def test_susy_square(self):
        """[D, D] = -2 d_t."""
        dt = basis_fields(R11)[0]
        assert vf_bracket(_make_susy_d(), _make_susy_d()) == dt * -2

    def test_bracket_is_a_commutator(self):
        dt, _ = basis_fields(R11)
        X = _poly("t") * dt
        f = _poly("t^2*theta")
        assert vf_bracket(X, dt)(f) == X(dt(f)) - dt(X(f))

    @settings(max_examples=200)
    @given(fields(R12), fields(R12))
    def test_graded_antisymmetry(self, X, Y):
        x, y = X.homogeneous_parity(), Y.homogeneous_parity()
        assert vf_bracket(X, Y) == -vf_bracket(Y, X) * _sign(x * y)

    @settings(max_examples=200)
    @given(fields(R12), fields(R12), homogeneous_polys(R12))
    def test_bracket_acts_as_graded_commutator(self, X, Y, f):
        x, y = X.homogeneous_parity(), Y.homogeneous_parity()
        expected = X(Y(f)) - Y(X(f)) * _sign(x * y)
        assert vf_bracket(X, Y)(f) == expected

    @settings(max_examples=200)
    @given(fields(R12), fields(R12), fields(R12))
    def test_graded_jacobi_identity(self, X, Y, Z):
        """(-1)^{xz}[X,[Y,Z]] + (-1)^{yx}[Y,[Z,X]] + (-1)^{zy}[Z,[X,Y]] = 0."""
        x, y, z = (V.homogeneous_parity() for V in (X, Y, Z))
        cyclic = (
            vf_bracket(X, vf_bracket(Y, Z)) * _sign(x * z)
            + vf_bracket(Y, vf_bracket(Z, X)) * _sign(y * x)
            + vf_bracket(Z, vf_bracket(X, Y)) * _sign(z * y)
        )
        assert cyclic.is_zero


class TestOneForm:
    def test_pairing_with_basis(self):
        for a, X in enumerate(basis_fields(R12)):
            for b, alpha in enumerate(basis_forms(R12)):
                assert pairing(X, alpha) == (1 if a == b else 0)

    def test_right_module_action(self):
        dtheta = basis_forms(R11)[1]
        alpha = dtheta * _poly("theta")
        assert alpha.parity == 0
        assert alpha["theta"] == _poly("theta")

    def test_pairing_chart_mismatch(self):
        with pytest.raises(ChartMismatchError):
            pairing(basis_fields(R11)[0], OneForm.basis(R12, 0))
