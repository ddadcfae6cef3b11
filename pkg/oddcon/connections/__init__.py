"""Odd quasi-connections, odd connections and their geometry."""

from oddcon.connections.checks import (
    CheckResult,
    Counterexample,
    affine_axioms_check,
    axioms_check,
    banal_bilinearity_check,
    metric_compatibility_check,
)
from oddcon.connections.curvature import (
    bianchi_check,
    curvature,
    tensoriality_anomalies,
    torsion,
)
from oddcon.connections.divergence import divergence_invariance_check, odd_divergence
from oddcon.connections.extension import (
    Rank2Covariant,
    nabla_function,
    nabla_oneform,
    nabla_tensor,
)
from oddcon.connections.quasi import (
    AffineConnection,
    BanalTensor,
    OddEndomorphism,
    OddInvolution,
    OddQuasiConnection,
    affine_combination,
    banal_difference,
    clifford_dirac_check,
    extract_affine,
    induce_from_affine,
    is_involution,
    module_combination,
    nabla,
    rho_apply,
    transform_connection,
)

__all__ = [
    "AffineConnection",
    "BanalTensor",
    "CheckResult",
    "Counterexample",
    "OddEndomorphism",
    "OddInvolution",
    "OddQuasiConnection",
    "Rank2Covariant",
    "affine_axioms_check",
    "affine_combination",
    "axioms_check",
    "banal_bilinearity_check",
    "banal_difference",
    "bianchi_check",
    "clifford_dirac_check",
    "curvature",
    "divergence_invariance_check",
    "extract_affine",
    "induce_from_affine",
    "is_involution",
    "metric_compatibility_check",
    "module_combination",
    "nabla",
    "nabla_function",
    "nabla_oneform",
    "nabla_tensor",
    "odd_divergence",
    "rho_apply",
    "tensoriality_anomalies",
    "torsion",
    "transform_connection",
]
