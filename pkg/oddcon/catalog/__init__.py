"""Validated built-in odd connections and the frames they come from."""

from oddcon.catalog.entries import (
    LIE_SUPERGROUP_DIMENSIONS,
    LISTED,
    MINKOWSKI_CENSUS,
    CatalogEntry,
    canonical_rnn,
    compare_torsion_claims,
    lookup,
    smink44,
    smink_algebra,
    smink_divergence,
    smink_torsion_claims,
    susy_r11,
)
from oddcon.catalog.frames import (
    Parallelisation,
    change_frame,
    frame_divergence,
    frame_endomorphism,
    frame_involution,
    induced_odd_metric,
    orthonormality_residuals,
    vierbein_christoffel,
    weitzenbock,
)
from oddcon.catalog.gamma import GammaData, build_gamma

__all__ = [
    "LIE_SUPERGROUP_DIMENSIONS",
    "LISTED",
    "MINKOWSKI_CENSUS",
    "CatalogEntry",
    "GammaData",
    "Parallelisation",
    "build_gamma",
    "canonical_rnn",
    "change_frame",
    "compare_torsion_claims",
    "frame_divergence",
    "frame_endomorphism",
    "frame_involution",
    "induced_odd_metric",
    "lookup",
    "orthonormality_residuals",
    "smink44",
    "smink_algebra",
    "smink_divergence",
    "smink_torsion_claims",
    "susy_r11",
    "vierbein_christoffel",
    "weitzenbock",
]
