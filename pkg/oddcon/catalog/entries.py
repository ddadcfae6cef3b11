"""Built-in odd connections, addressable by name.

Names:
    canonical-r11, canonical-rnn:<n>, susy-r11, smink44,
    weitzenbock:<frame-id> with frame-id coordinate:<n>, susy-r11, smink44 or sheared-r22
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from oddcon.algebra.grassmann import ChartSignature, GradedPoly
from oddcon.catalog.frames import (
    Parallelisation,
    frame_involution,
    induced_odd_metric,
    weitzenbock,
)
from oddcon.catalog.gamma import GammaData, build_gamma
from oddcon.connections.curvature import torsion
from oddcon.connections.extension import Rank2Covariant
from oddcon.connections.quasi import OddInvolution, OddQuasiConnection, rho_apply
from oddcon.errors import CatalogError, ChartError
from oddcon.geometry.fields import VectorField, vf_bracket

# n|n Lie supergroups; each admits odd connections
LIE_SUPERGROUP_DIMENSIONS: dict[str, Callable[[int], tuple[int, int]]] = {
    "GL(m|m)": lambda m: (2 * m * m, 2 * m * m),
    "SL(m|m+1)": lambda m: (2 * m * (m + 1), 2 * m * (m + 1)),
    "Osp(2m|2m)": lambda m: (4 * m * m, 4 * m * m),
    "Q(m)": lambda m: (m * m, m * m),
}

# (d, N, even dim, odd dim, equal counts) for super-Minkowski spacetimes with d <= 11.
# Only the equal-count cases carry an odd SUSY connection of the smink44 kind.
MINKOWSKI_CENSUS: tuple[tuple[int, str, int, int, bool], ...] = (
    (1, "1", 1, 1, True),
    (2, "(1,1)", 2, 2, True),
    (2, "(2,0)", 2, 2, True),
    (2, "(0,2)", 2, 2, True),
    (3, "1", 3, 2, False),
    (4, "1", 4, 4, True),
    (4, "2", 4, 8, False),
)

SMINK_CHART = ChartSignature(
    ("x0", "x1", "x2", "x3"), ("theta1", "theta2", "theta3", "theta4")
)

FRAME_IDS = ("coordinate:<n>", "susy-r11", "smink44", "sheared-r22")


@dataclass(frozen=True)
class CatalogEntry:
    """A named connection with the frame and gamma data it was built from."""

    name: str
    summary: str
    connection: OddQuasiConnection
    frame: Optional[Parallelisation] = None
    gamma: Optional[GammaData] = None

    @property
    def chart(self) -> ChartSignature:
        return self.connection.chart

    @property
    def metric(self) -> Optional[Rank2Covariant]:
        if self.frame is None or not self.frame.is_paired:
            return None
        return induced_odd_metric(self.frame)


def canonical_rnn(n: int) -> tuple[OddQuasiConnection, OddInvolution]:
    """Gamma = 0 and rho the coordinate swap d_{x^a} <-> d_{xi^a} on R^{n|n}."""
    if n < 1:
        raise ChartError(f"The canonical connection needs n >= 1, got {n}")
    chart = ChartSignature.standard(n, n)
    rho = frame_involution(Parallelisation.coordinate(chart))
    return OddQuasiConnection.from_mapping(chart, rho), rho


def susy_frame() -> Parallelisation:
    """P = d_t, D = d_theta - theta d_t on R^{1|1}."""
    chart = ChartSignature.standard(1, 1)
    theta = GradedPoly.coordinate(chart, "theta")
    P = VectorField.basis(chart, "t")
    D = VectorField.basis(chart, "theta") - (theta * VectorField.basis(chart, "t"))
    return Parallelisation.from_frame(chart, [P, D], ["P", "D"])


def susy_r11() -> tuple[OddQuasiConnection, Parallelisation]:
    par = susy_frame()
    return weitzenbock(par, frame_involution(par)), par


def smink_frame(gamma: GammaData) -> Parallelisation:
    """P_mu = d_mu and D^alpha = d_theta_alpha - 1/4 theta_beta (C gamma^mu)^{beta alpha} d_mu."""
    chart = SMINK_CHART
    thetas = [GradedPoly.coordinate(chart, 4 + beta) for beta in range(4)]
    frame = [VectorField.basis(chart, mu) for mu in range(4)]
    for alpha in range(4):
        comps = [GradedPoly.zero(chart)] * chart.dim
        comps[4 + alpha] = GradedPoly.constant(chart, 1)
        for mu in range(4):
            for beta in range(4):
                value = gamma.c_gamma(mu, beta, alpha)
                if value:
                    comps[mu] = comps[mu] - thetas[beta] * (value / 4)
        frame.append(VectorField(chart, comps, 1))
    labels = [f"P{mu}" for mu in range(4)] + [f"D{alpha + 1}" for alpha in range(4)]
    return Parallelisation.from_frame(chart, frame, labels)


def smink44() -> tuple[OddQuasiConnection, Parallelisation, GammaData]:
    """SUSY odd connection on super-Minkowski R^{4|4}; rho(P_mu) = D^mu, rho(D^mu) = P_mu."""
    gamma = build_gamma()
    par = smink_frame(gamma)
    return weitzenbock(par, frame_involution(par)), par, gamma


@dataclass(frozen=True)
class FrameClaim:
    """A stated value for an expression in two frame fields next to its expansion."""

    left: str
    right: str
    stated: VectorField
    expanded: VectorField

    @property
    def holds(self) -> bool:
        return self.stated == self.expanded

    def __str__(self) -> str:
        mark = "=" if self.holds else "!="
        return f"({self.left}, {self.right}): {self.expanded} {mark} {self.stated}"


def _frame_pairs(par: Parallelisation):
    for i in range(par.chart.dim):
        for j in range(i, par.chart.dim):
            yield i, j


def smink_algebra() -> list[FrameClaim]:
    """All 36 brackets of the frame against the super-translation algebra.

    [D^alpha, D^beta] = -1/2 (C gamma^mu)^{alpha beta} P_mu, all other brackets vanish.
    """
    _, par, gamma = _smink()
    claims = []
    for i, j in _frame_pairs(par):
        stated = VectorField.zero(par.chart)
        if i >= 4 and j >= 4:
            for mu in range(4):
                value = gamma.c_gamma(mu, i - 4, j - 4)
                if value:
                    stated = stated + par.frame[mu] * (-value / 2)
        expanded = vf_bracket(par.frame[i], par.frame[j])
        claims.append(FrameClaim(par.labels[i], par.labels[j], stated, expanded))
    return claims


def smink_torsion_claims() -> list[FrameClaim]:
    """Displayed torsion values against the expanded torsion on every frame pair.

    T(P_mu, P_nu)     = -1/2 (C gamma^lambda)^{mu nu} D^lambda
    T(P_mu, D^alpha)  = -1/4 (C gamma^nu)^{mu alpha} P_nu
    T(D^alpha, D^beta) = 0
    """
    C, par, gamma = _smink()
    claims = []
    for i, j in _frame_pairs(par):
        stated = VectorField.zero(par.chart)
        if j < 4:
            for lam in range(4):
                value = gamma.c_gamma(lam, i, j)
                if value:
                    stated = stated + par.frame[4 + lam] * (-value / 2)
        elif i < 4:
            for nu in range(4):
                value = gamma.c_gamma(nu, i, j - 4)
                if value:
                    stated = stated + par.frame[nu] * (-value / 4)
        expanded = torsion(C, par.frame[i], par.frame[j])
        claims.append(FrameClaim(par.labels[i], par.labels[j], stated, expanded))
    return claims


def compare_torsion_claims() -> list[FrameClaim]:
    """The displayed torsion values that the expansion does not reproduce."""
    return [claim for claim in smink_torsion_claims() if not claim.holds]


def smink_divergence(X: VectorField) -> GradedPoly:
    """Div X = D^alpha(X^mu) delta_{mu alpha} - (-1)^x delta^{alpha mu} P_mu(X_alpha)."""
    if not X.is_homogeneous():
        even, odd = X.split()
        return smink_divergence(even) + smink_divergence(odd)
    _, par, _ = _smink()
    comps = par.components(X)
    total = GradedPoly.zero(par.chart)
    for k in range(4):
        total = total + par.frame[4 + k](comps[k])
        moved = par.frame[k](comps[4 + k])
        total = total + moved if X.homogeneous_parity() else total - moved
    return total


def sheared_frame() -> Parallelisation:
    """A frame on R^{2|2} with a non-constant vierbein.

    X1 = d_x1, X2 = d_x2 + x1 d_x1, Y1 = d_xi1 + xi2 d_x1, Y2 = d_xi2 + x1 d_xi1
    """
    chart = ChartSignature.standard(2, 2)
    x1, _, _, xi2 = (GradedPoly.coordinate(chart, a) for a in range(4))
    d = [VectorField.basis(chart, a) for a in range(4)]
    frame = [d[0], d[1] + x1 * d[0], d[2] + xi2 * d[0], d[3] + x1 * d[2]]
    return Parallelisation.from_frame(chart, frame, ["X1", "X2", "Y1", "Y2"])


@lru_cache(maxsize=None)
def _smink() -> tuple[OddQuasiConnection, Parallelisation, GammaData]:
    return smink44()


@lru_cache(maxsize=None)
def frame_by_id(frame_id: str) -> Parallelisation:
    """Resolve a frame id: coordinate:<n>, susy-r11, smink44 or sheared-r22."""
    if frame_id.startswith("coordinate:"):
        n = _parse_n(frame_id.split(":", 1)[1], frame_id)
        return Parallelisation.coordinate(ChartSignature.standard(n, n))
    builders = {
        "susy-r11": susy_frame,
        "smink44": lambda: _smink()[1],
        "sheared-r22": sheared_frame,
    }
    if frame_id not in builders:
        raise CatalogError(f"Unknown frame: {frame_id}. Use one of {', '.join(FRAME_IDS)}")
    return builders[frame_id]()


def _parse_n(text: str, name: str) -> int:
    if not text.isdigit() or int(text) < 1:
        raise CatalogError(f"Unknown catalog entry: {name}. The dimension must be positive")
    return int(text)


def _canonical(n: int, name: str) -> CatalogEntry:
    C, _ = canonical_rnn(n)
    frame = Parallelisation.coordinate(C.chart)
    return CatalogEntry(name, f"canonical odd connection on R^{{{n}|{n}}}", C, frame)


def _susy(name: str) -> CatalogEntry:
    C, par = susy_r11()
    return CatalogEntry(name, "SUSY odd connection on R^{1|1}", C, par)


def _smink_entry(name: str) -> CatalogEntry:
    C, par, gamma = _smink()
    return CatalogEntry(name, "SUSY odd connection on super-Minkowski R^{4|4}", C, par, gamma)


def _weitzenbock(frame_id: str, name: str) -> CatalogEntry:
    par = frame_by_id(frame_id)
    gamma = _smink()[2] if frame_id == "smink44" else None
    C = weitzenbock(par, frame_involution(par))
    return CatalogEntry(name, f"odd Weitzenbock connection of the {frame_id} frame", C, par, gamma)


@lru_cache(maxsize=None)
def lookup(name: str) -> CatalogEntry:
    """Resolve a catalog name to its entry.

    Raises:
        CatalogError: if the name is unknown.
    """
    fixed = {
        "canonical-r11": lambda: _canonical(1, name),
        "susy-r11": lambda: _susy(name),
        "smink44": lambda: _smink_entry(name),
    }
    if name in fixed:
        return fixed[name]()
    if name.startswith("canonical-rnn:"):
        return _canonical(_parse_n(name.split(":", 1)[1], name), name)
    if name.startswith("weitzenbock:"):
        return _weitzenbock(name.split(":", 1)[1], name)
    raise CatalogError(f"Unknown catalog entry: {name}. Use `oddcon catalog list` to see entries")


# Entries shown by `oddcon catalog list`
LISTED = (
    "canonical-r11",
    "canonical-rnn:2",
    "susy-r11",
    "smink44",
    "weitzenbock:coordinate:1",
    "weitzenbock:susy-r11",
    "weitzenbock:smink44",
    "weitzenbock:sheared-r22",
)


def frame_action_check(entry: CatalogEntry) -> bool:
    """rho maps the frame onto the frame when the entry comes from a paired frame."""
    if entry.frame is None:
        return True
    par = entry.frame
    images = [rho_apply(entry.connection.rho, Z) for Z in par.frame]
    n = par.chart.n_even
    return all(images[i] == par.frame[(i + n) % par.chart.dim] for i in range(par.chart.dim))

