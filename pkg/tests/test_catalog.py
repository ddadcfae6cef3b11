"""Tests for the gamma matrices, frames and named catalog entries."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis.strategies import integers

from oddcon.catalog.entries import (
    LIE_SUPERGROUP_DIMENSIONS,
    LISTED,
    CatalogEntry,
    compare_torsion_claims,
    frame_action_check,
    lookup,
    sheared_frame,
    smink_algebra,
    smink_torsion_claims,
    susy_frame,
)
from oddcon.catalog.frames import (
    Parallelisation,
    change_frame,
    frame_involution,
    orthonormality_residuals,
    vierbein_christoffel,
    weitzenbock,
)
from oddcon.catalog.gamma import build_gamma
from oddcon.connections.checks import metric_compatibility_check
from oddcon.connections.quasi import OddQuasiConnection, nabla, rho_apply
from oddcon.connections.sampling import make_rng, random_frame_change
from oddcon.errors import CatalogError, FrameError, ParityError, SingularMatrixError
from oddcon.geometry.fields import basis_fields, basis_forms
from tests.strategies import R11, R12

SEEDS = integers(0, 2**16)


class TestGamma:
    def test_clifford_relations(self):
        assert build_gamma().clifford_defects() == []

    def test_charge_products_are_symmetric(self):
        assert build_gamma().asymmetric() == []

    def test_entries_are_integers(self):
        gamma = build_gamma()
        assert gamma.c_gamma(0, 0, 0).denominator == 1


class TestLookup:
    @pytest.mark.parametrize("name", LISTED)
    def test_listed_entries_resolve(self, name):
        entry = lookup(name)
        assert entry.name == name
        assert entry.chart.n_even == entry.chart.n_odd

    def test_canonical_dimension(self):
        assert lookup("canonical-rnn:2").chart.dim == 4

    @pytest.mark.parametrize(
        "name", ["no-such-entry", "canonical-rnn:0", "canonical-rnn:x", "weitzenbock:nowhere"]
    )
    def test_unknown_names(self, name):
        with pytest.raises(CatalogError):
            lookup(name)

    def test_supergroup_dimensions(self):
        assert LIE_SUPERGROUP_DIMENSIONS["GL(m|m)"](1) == (2, 2)
        assert LIE_SUPERGROUP_DIMENSIONS["Q(m)"](3) == (9, 9)

    @pytest.mark.parametrize("name", LISTED)
    def test_rho_swaps_frame_partners(self, name):
        assert frame_action_check(lookup(name))


class TestSusyFrame:
    def test_rho_on_frame(self):
        """rho(P) = D and rho(D) = P."""
        par = susy_frame()
        rho = frame_involution(par)
        P, D = par.frame
        assert rho_apply(rho, P) == D
        assert rho_apply(rho, D) == P

    def test_weitzenbock_entry_matches_susy(self):
        assert lookup("weitzenbock:susy-r11").connection == lookup("susy-r11").connection

    def test_orthonormal(self):
        assert orthonormality_residuals(susy_frame()) == []
        assert orthonormality_residuals(sheared_frame()) == []


class TestSminkClaims:
    def test_algebra(self):
        claims = smink_algebra()
        assert len(claims) == 36
        assert all(claim.holds for claim in claims)

    def test_pure_torsion_claims_hold(self):
        for claim in smink_torsion_claims():
            if claim.left[0] == claim.right[0]:
                assert claim.holds, str(claim)

    def test_mixed_torsion_vanishes(self):
        """T(P, D) is zero: the frame is parallel and [P, D] = 0."""
        mismatched = compare_torsion_claims()
        assert mismatched
        for claim in mismatched:
            assert claim.left.startswith("P")
            assert claim.right.startswith("D")
            assert claim.expanded.is_zero


class TestWeitzenbock:
    def test_vierbein_formula_on_sheared_frame(self):
        entry = lookup("weitzenbock:sheared-r22")
        C = entry.connection
        vierbein = OddQuasiConnection(C.chart, C.rho, vierbein_christoffel(entry.frame, C.rho))
        assert vierbein == C

    def test_vierbein_formula_on_susy_frame(self):
        C = lookup("susy-r11").connection
        vierbein = OddQuasiConnection(C.chart, C.rho, vierbein_christoffel(susy_frame(), C.rho))
        assert vierbein == C

    @settings(max_examples=10)
    @given(SEEDS)
    def test_independent_of_constant_frame_change(self, seed):
        entry = lookup("weitzenbock:sheared-r22")
        matrix = random_frame_change(make_rng(seed), entry.chart)
        assert weitzenbock(change_frame(entry.frame, matrix), entry.connection.rho) == (
            entry.connection
        )

    def test_frame_change_keeps_blocks(self):
        with pytest.raises(ParityError):
            change_frame(susy_frame(), [[Fraction(1), Fraction(1)], [Fraction(0), Fraction(1)]])

    def test_coordinate_frame_gives_canonical(self):
        assert lookup("weitzenbock:coordinate:1").connection == lookup("canonical-r11").connection

    def test_frame_fields_are_parallel(self):
        entry = lookup("weitzenbock:sheared-r22")
        for X in entry.frame.frame:
            for Z in entry.frame.frame:
                assert nabla(entry.connection, X, Z).is_zero

    def test_singular_frame_rejected(self):
        t_field = basis_fields(R11)[0]
        with pytest.raises(SingularMatrixError):
            Parallelisation.from_frame(R11, [t_field, t_field])

    def test_coframe_must_be_dual(self):
        dt, dtheta = basis_forms(R11)
        coframe = [dt * 2, dtheta]
        with pytest.raises(FrameError):
            Parallelisation(R11, basis_fields(R11), coframe)


class TestInducedMetric:
    def test_compatible_on_frame(self):
        entry = lookup("weitzenbock:sheared-r22")
        frame = entry.frame.frame
        triples = [(X, Y, Z) for X in frame for Y in frame for Z in frame]
        assert metric_compatibility_check(entry.connection, entry.metric, triples).passed

    def test_pairs_frame_partners(self):
        par = susy_frame()
        G = lookup("susy-r11").metric
        P, D = par.frame
        assert G(P, D) == 1
        assert G(P, P).is_zero
        assert G(D, D).is_zero

    def test_unpaired_frame_has_no_metric(self):
        entry = lookup("canonical-r11")
        unpaired = CatalogEntry("r12", "", entry.connection, Parallelisation.coordinate(R12))
        assert entry.metric is not None
        assert unpaired.metric is None
