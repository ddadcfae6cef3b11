"""Tests for mixed tensors: evaluation and change of coordinates."""

import pytest
from hypothesis import given, settings
from hypothesis.strategies import composite, integers, sampled_from

from oddcon.algebra.expression import parse_expression
from oddcon.errors import ParityError, ValenceError
from oddcon.geometry.changes import change_library, transform_oneform, transform_vector
from oddcon.geometry.fields import basis_fields, basis_forms, pairing
from oddcon.geometry.tensors import MixedTensor, basis_keys, transform_tensor
from tests.strategies import R11, R12, fields, polys

LIBRARY = change_library(R12)


@composite
def covariant_tensors(draw, chart=R12):
    """A homogeneous (2, 0) tensor with sparse components."""
    parity = draw(integers(0, 1))
    par = chart.parities
    comps = {}
    for lower, upper in basis_keys(chart, (2, 0)):
        if draw(integers(0, 2)) == 0:
            expected = (parity + par[lower[0]] + par[lower[1]]) % 2
            comps[(lower, upper)] = draw(polys(chart, expected, max_terms=2))
    return MixedTensor(chart, (2, 0), parity, comps)


class TestMixedTensor:
    def test_component_parity_checked(self):
        t = parse_expression(R11, "t")
        with pytest.raises(ParityError):
            MixedTensor(R11, (0, 1), 0, {((), (1,)): t})

    def test_valence_checked(self):
        t = parse_expression(R11, "t")
        with pytest.raises(ValenceError):
            MixedTensor(R11, (1, 0), 0, {((0, 0), ()): t})

    def test_zero_components_dropped(self):
        zero = parse_expression(R11, "0")
        assert MixedTensor(R11, (1, 0), 0, {((0,), ()): zero}).components == {}

    def test_vector_field_round_trip(self):
        X = basis_fields(R12)[0] * 3
        assert MixedTensor.from_vector_field(X).as_vector_field() == X

    def test_conversion_checks_valence(self):
        with pytest.raises(ValenceError):
            MixedTensor.identity(R12).as_vector_field()
        with pytest.raises(ValenceError):
            MixedTensor.from_vector_field(basis_fields(R12)[0]).as_oneform()

    def test_identity_is_the_pairing(self):
        ident = MixedTensor.identity(R12)
        X = parse_expression(R12, "x1") * basis_fields(R12)[1]
        for alpha in basis_forms(R12):
            assert ident.evaluate([X], [alpha]) == pairing(X, alpha)

    def test_evaluate_on_basis_returns_component(self):
        value = parse_expression(R12, "xi1")
        T = MixedTensor(R12, (2, 0), 0, {((0, 1), ()): value})
        d = basis_fields(R12)
        assert T.evaluate([d[0], d[1]], []) == value
        assert T.evaluate([d[1], d[0]], []).is_zero


class TestTransformTensor:
    @given(sampled_from(sorted(LIBRARY)))
    def test_identity_is_invariant(self, name):
        ident = MixedTensor.identity(R12)
        assert transform_tensor(ident, LIBRARY[name]) == MixedTensor.identity(R12)

    @given(fields(R12), sampled_from(sorted(LIBRARY)))
    def test_vector_fields_agree(self, X, name):
        change = LIBRARY[name]
        moved = transform_tensor(MixedTensor.from_vector_field(X), change)
        assert moved.as_vector_field() == transform_vector(X, change)

    @given(sampled_from(sorted(LIBRARY)))
    def test_oneforms_agree(self, name):
        change = LIBRARY[name]
        alpha = basis_forms(R12)[0] * parse_expression(R12, "xi1*xi2 + 2")
        moved = transform_tensor(MixedTensor.from_oneform(alpha), change)
        assert moved.as_oneform() == transform_oneform(alpha, change)

    @settings(max_examples=30)
    @given(covariant_tensors(), fields(R12), fields(R12), sampled_from(sorted(LIBRARY)))
    def test_evaluation_is_invariant(self, T, Y, Z, name):
        change = LIBRARY[name]
        moved = transform_tensor(T, change)
        primed = moved.evaluate([transform_vector(Y, change), transform_vector(Z, change)], [])
        assert primed == change.pull(T.evaluate([Y, Z], []))
