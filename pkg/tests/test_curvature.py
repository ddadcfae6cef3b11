"""Tests for torsion, curvature, tensoriality anomalies and the Bianchi identity."""

import pytest
from hypothesis import given, settings
from hypothesis.strategies import integers

from oddcon.algebra.expression import parse_expression
from oddcon.catalog.entries import canonical_rnn, susy_r11
from oddcon.connections.curvature import (
    bianchi_check,
    bianchi_sides,
    curvature,
    curvature_components,
    curvature_linearity_residual,
    find_anomaly_witness,
    predicted_anomalies,
    tensoriality_anomalies,
    torsion,
    torsion_components,
)
from oddcon.connections.quasi import OddEndomorphism, OddQuasiConnection
from oddcon.connections.sampling import (
    make_rng,
    random_connection,
    random_field,
    random_function,
    random_gamma,
    random_noninvolution,
)
from oddcon.errors import NotInvolutiveError
from oddcon.geometry.fields import basis_fields
from tests.strategies import R11

SEEDS = integers(0, 2**16)
# Seeded connections and homogeneous triples per connection for the Bianchi identity
CONNECTIONS = 32
TRIPLES = 32


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _make_odd_connection(seed: int, n: int = 1) -> OddQuasiConnection:
    _, rho = canonical_rnn(n)
    return OddQuasiConnection(rho.chart, rho, random_gamma(make_rng(seed), rho.chart))


def _make_noninvolutive(seed: int) -> OddQuasiConnection:
    rng = make_rng(seed)
    _, rho = canonical_rnn(1)
    return random_connection(rng, R11, random_noninvolution(rng, rho))


def _make_fields(seed: int, chart, count: int):
    rng = make_rng(seed + 1000)
    return [random_field(rng, chart) for _ in range(count)]


def _make_triples(seed: int, chart, count: int):
    fields = _make_fields(seed, chart, 3 * count)
    return [tuple(fields[3 * i : 3 * i + 3]) for i in range(count)]


class TestTorsion:
    def test_susy_torsion(self):
        """T(P, P) = -2 D and the other frame pairs vanish."""
        C, par = susy_r11()
        P, D = par.frame
        assert torsion(C, P, P) == D * -2
        assert torsion(C, P, D).is_zero
        assert torsion(C, D, D).is_zero

    def test_canonical_is_torsion_free(self):
        C, _ = canonical_rnn(2)
        assert all(T.is_zero for _, _, T in torsion_components(C))

    def test_torsion_components_over_frame(self):
        C, par = susy_r11()
        values = {(i, j): T for i, j, T in torsion_components(C, list(par.frame))}
        assert values[(0, 0)] == par.frame[1] * -2

    @settings(max_examples=20)
    @given(SEEDS)
    def test_graded_symmetry(self, seed):
        """T(X, Y) = (-1)^{xy} T(Y, X), for any rho."""
        C = _make_noninvolutive(seed)
        X, Y = _make_fields(seed, R11, 2)
        x, y = X.homogeneous_parity(), Y.homogeneous_parity()
        assert torsion(C, X, Y) == torsion(C, Y, X) * _sign(x * y)

    def test_torsion_parity(self):
        C = _make_odd_connection(4)
        dt, dtheta = basis_fields(R11)
        value = torsion(C, dt, dtheta)
        assert value.is_zero or value.parity == 0


class TestCurvature:
    def test_weitzenbock_is_flat(self):
        C, par = susy_r11()
        assert all(R.is_zero for *_, R in curvature_components(C, list(par.frame)))

    def test_canonical_is_flat(self):
        C, _ = canonical_rnn(1)
        assert all(R.is_zero for *_, R in curvature_components(C))

    @settings(max_examples=20)
    @given(SEEDS)
    def test_antisymmetry(self, seed):
        """R(X, Y) Z = -(-1)^{(x+1)(y+1)} R(Y, X) Z, for any rho."""
        C = _make_noninvolutive(seed)
        X, Y, Z = _make_fields(seed, R11, 3)
        x, y = X.homogeneous_parity(), Y.homogeneous_parity()
        assert curvature(C, X, Y, Z) == -curvature(C, Y, X, Z) * _sign((x + 1) * (y + 1))

    @settings(max_examples=15)
    @given(SEEDS)
    def test_linear_in_z_for_odd_connections(self, seed):
        C = _make_odd_connection(seed)
        X, Y, Z = _make_fields(seed, R11, 3)
        f = random_function(make_rng(seed), R11)
        assert curvature_linearity_residual(C, X, Y, Z, f).is_zero


class TestTensoriality:
    @settings(max_examples=15)
    @given(SEEDS)
    def test_no_anomaly_for_odd_connections(self, seed):
        C = _make_odd_connection(seed)
        X, Y, Z = _make_fields(seed, R11, 3)
        f = random_function(make_rng(seed), R11)
        anomaly_t, anomaly_r = tensoriality_anomalies(C, X, Y, Z, f)
        assert anomaly_t.is_zero
        assert anomaly_r.is_zero

    def test_no_anomaly_for_banal_connections(self):
        rng = make_rng(2)
        C = random_connection(rng, R11, OddEndomorphism.zero(R11))
        X, Y, Z = _make_fields(2, R11, 3)
        f = random_function(rng, R11)
        anomaly_t, anomaly_r = tensoriality_anomalies(C, X, Y, Z, f)
        assert anomaly_t.is_zero
        assert anomaly_r.is_zero

    @settings(max_examples=15)
    @given(SEEDS)
    def test_anomalies_match_closed_form(self, seed):
        C = _make_noninvolutive(seed)
        X, Y, Z = _make_fields(seed, R11, 3)
        f = random_function(make_rng(seed), R11)
        assert tensoriality_anomalies(C, X, Y, Z, f) == predicted_anomalies(C, X, Y, Z, f)

    def test_witness_for_doubled_involution(self):
        C, rho = canonical_rnn(1)
        doubled = OddQuasiConnection(C.chart, rho.scaled(2), C.gamma)
        witness = find_anomaly_witness(doubled)
        assert witness is not None
        X, Y, f, anomaly = witness
        assert not anomaly.is_zero
        assert anomaly == predicted_anomalies(doubled, X, Y, Y, f)[0]

    @pytest.mark.parametrize("n", [1, 2])
    @pytest.mark.parametrize("seed", range(8))
    def test_witness_for_sampled_noninvolution(self, seed, n):
        rng = make_rng(seed)
        _, rho = canonical_rnn(n)
        C = random_connection(rng, rho.chart, random_noninvolution(rng, rho))
        witness = find_anomaly_witness(C)
        assert witness is not None
        X, Y, f, anomaly = witness
        assert not anomaly.is_zero
        assert anomaly == predicted_anomalies(C, X, Y, Y, f)[0]

    def test_no_witness_for_odd_connection(self):
        assert find_anomaly_witness(_make_odd_connection(3)) is None


class TestBianchi:
    @settings(max_examples=15)
    @given(SEEDS)
    def test_first_identity_on_coordinate_fields(self, seed):
        C = _make_odd_connection(seed)
        fields = basis_fields(R11)
        for X in fields:
            for Y in fields:
                for Z in fields:
                    left, right = bianchi_check(C, X, Y, Z)
                    assert left == right

    @pytest.mark.parametrize("n", [1, 2])
    @pytest.mark.parametrize("seed", range(CONNECTIONS))
    def test_first_identity_on_sampled_fields(self, seed, n):
        C = _make_odd_connection(seed, n)
        for X, Y, Z in _make_triples(seed, C.chart, TRIPLES):
            left, right = bianchi_check(C, X, Y, Z)
            assert left == right

    def test_torsion_free_cyclic_sum(self):
        C, _ = canonical_rnn(1)
        dt, dtheta = basis_fields(R11)
        theta = parse_expression(R11, "theta")
        left, right = bianchi_sides(C, dt, theta * dt, dtheta)
        assert left.is_zero
        assert right.is_zero

    @pytest.mark.parametrize("n", [1, 2])
    def test_torsion_free_cyclic_sum_on_sampled_fields(self, n):
        C, _ = canonical_rnn(n)
        for X, Y, Z in _make_triples(n, C.chart, TRIPLES):
            left, right = bianchi_sides(C, X, Y, Z)
            assert left.is_zero
            assert right.is_zero

    def test_needs_involution(self):
        C = _make_noninvolutive(1)
        dt = basis_fields(R11)[0]
        with pytest.raises(NotInvolutiveError):
            bianchi_check(C, dt, dt, dt)
