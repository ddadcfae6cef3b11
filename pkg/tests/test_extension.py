"""Tests for the covariant derivative of functions, one-forms, tensors and metrics."""

from hypothesis import given, settings
from hypothesis.strategies import integers

from oddcon.algebra.expression import parse_expression
from oddcon.catalog.entries import canonical_rnn, susy_r11
from oddcon.catalog.frames import Parallelisation, induced_odd_metric
from oddcon.connections.checks import metric_compatibility_check
from oddcon.connections.extension import (
    Rank2Covariant,
    compatibility_residual,
    nabla_function,
    nabla_oneform,
    nabla_tensor,
    nabla_tensor_11,
)
from oddcon.connections.quasi import OddQuasiConnection, nabla
from oddcon.connections.sampling import make_rng, random_field, random_gamma, random_oneform
from oddcon.geometry.fields import basis_fields, basis_forms, pairing
from oddcon.geometry.tensors import MixedTensor, basis_keys
from tests.strategies import R11, R22, polys

SEEDS = integers(0, 2**16)


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _make_odd_connection(seed: int, n: int = 1) -> OddQuasiConnection:
    _, rho = canonical_rnn(n)
    return OddQuasiConnection(rho.chart, rho, random_gamma(make_rng(seed), rho.chart))


class TestNablaFunction:
    def test_canonical_values(self):
        C, _ = canonical_rnn(1)
        dt, dtheta = basis_fields(R11)
        assert nabla_function(C, dt, parse_expression(R11, "theta")) == 1
        assert nabla_function(C, dtheta, parse_expression(R11, "t")) == 1

    def test_susy_values(self):
        """nabla_P t = D(t) = -theta."""
        C, par = susy_r11()
        P, _ = par.frame
        assert nabla_function(C, P, parse_expression(R11, "t")) == parse_expression(
            R11, "-theta"
        )


class TestNablaOneform:
    @settings(max_examples=20)
    @given(SEEDS)
    def test_duality(self, seed):
        """rho(X)<Y, alpha> = <nabla_X Y, alpha> + (-1)^{(x+1)y} <Y, nabla_X alpha>."""
        C = _make_odd_connection(seed)
        rng = make_rng(seed)
        X, Y = random_field(rng, R11), random_field(rng, R11)
        alpha = random_oneform(rng, R11)
        x, y = X.homogeneous_parity(), Y.homogeneous_parity()
        left = nabla_function(C, X, pairing(Y, alpha))
        right = pairing(nabla(C, X, Y), alpha) + pairing(
            Y, nabla_oneform(C, X, alpha)
        ) * _sign((x + 1) * y)
        assert left == right

    def test_canonical_coordinate_forms_are_parallel(self):
        C, _ = canonical_rnn(1)
        for X in basis_fields(R11):
            for alpha in basis_forms(R11):
                assert nabla_oneform(C, X, alpha).is_zero


class TestNablaTensor:
    @settings(max_examples=15)
    @given(SEEDS)
    def test_agrees_on_vector_fields(self, seed):
        C = _make_odd_connection(seed)
        rng = make_rng(seed)
        X, Y = random_field(rng, R11), random_field(rng, R11)
        moved = nabla_tensor(C, X, MixedTensor.from_vector_field(Y))
        assert moved.as_vector_field() == nabla(C, X, Y)

    @settings(max_examples=15)
    @given(SEEDS)
    def test_agrees_on_oneforms(self, seed):
        C = _make_odd_connection(seed)
        rng = make_rng(seed)
        X, alpha = random_field(rng, R11), random_oneform(rng, R11)
        moved = nabla_tensor(C, X, MixedTensor.from_oneform(alpha))
        assert moved.as_oneform() == nabla_oneform(C, X, alpha)

    def test_identity_is_parallel(self):
        C = _make_odd_connection(3, 2)
        ident = MixedTensor.identity(R22)
        for X in basis_fields(R22):
            assert nabla_tensor(C, X, ident).components == {}
            assert nabla_tensor_11(C, X, ident).components == {}

    @settings(max_examples=15)
    @given(SEEDS, polys(R11, 0), polys(R11, 1))
    def test_closed_formula_for_11_tensors(self, seed, even, odd):
        C = _make_odd_connection(seed)
        parity = seed % 2
        comps = {}
        for lower, upper in basis_keys(R11, (1, 1)):
            wanted = (parity + R11.parities[lower[0]] + R11.parities[upper[0]]) % 2
            comps[(lower, upper)] = odd if wanted else even
        T = MixedTensor(R11, (1, 1), parity, comps)
        X = random_field(make_rng(seed), R11)
        assert nabla_tensor_11(C, X, T) == nabla_tensor(C, X, T)


class TestMetric:
    def test_coordinate_metric_pairs_partners(self):
        G = induced_odd_metric(Parallelisation.coordinate(R11))
        dt, dtheta = basis_fields(R11)
        assert G(dt, dtheta) == 1
        assert G(dt, dt).is_zero
        assert G(dtheta, dtheta).is_zero
        assert G.parity == 1

    def test_weitzenbock_connection_is_compatible(self):
        C, par = susy_r11()
        G = induced_odd_metric(par)
        rng = make_rng(5)
        samples = [tuple(random_field(rng, R11) for _ in range(3)) for _ in range(8)]
        assert metric_compatibility_check(C, G, samples).passed

    def test_zero_metric_is_trivially_compatible(self):
        C = _make_odd_connection(2)
        G = Rank2Covariant.zero(R11)
        dt, dtheta = basis_fields(R11)
        assert compatibility_residual(C, G, dt, dtheta, dt).is_zero

    def test_incompatible_connection_reports_counterexample(self):
        """nabla_{d_t} d_t = d_theta breaks compatibility with the coordinate metric."""
        _, rho = canonical_rnn(1)
        one = parse_expression(R11, "1")
        C = OddQuasiConnection.from_mapping(R11, rho, {("t", "t", "theta"): one})
        G = induced_odd_metric(Parallelisation.coordinate(R11))
        dt = basis_fields(R11)[0]
        assert compatibility_residual(C, G, dt, dt, dt) == -2
        result = metric_compatibility_check(C, G, [(dt, dt, dt)])
        assert not result.passed
        assert result.counterexample.law == "compatibility"
