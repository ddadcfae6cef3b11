"""Real Majorana gamma matrices for signature (-, +, +, +).

The representation is built from tensor products of real 2x2 matrices and
validated before use. Every entry is an integer, so products stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from oddcon.errors import FrameError

ETA = np.diag([-1, 1, 1, 1])

_ONE = np.eye(2, dtype=np.int64)
_EPS = np.array([[0, 1], [-1, 0]], dtype=np.int64)
_S1 = np.array([[0, 1], [1, 0]], dtype=np.int64)
_S3 = np.array([[1, 0], [0, -1]], dtype=np.int64)


def _frozen(matrix: np.ndarray) -> np.ndarray:
    matrix = np.array(matrix, dtype=np.int64)
    matrix.setflags(write=False)
    return matrix


@dataclass(frozen=True, eq=False)
class GammaData:
    """gamma^mu, the charge conjugation matrix C and the products C gamma^mu."""

    eta: np.ndarray
    gammas: tuple[np.ndarray, ...]
    charge: np.ndarray

    @property
    def c_gammas(self) -> tuple[np.ndarray, ...]:
        return tuple(_frozen(self.charge @ g) for g in self.gammas)

    def c_gamma(self, mu: int, alpha: int, beta: int) -> Fraction:
        """(C gamma^mu)^{alpha beta} as an exact rational."""
        return Fraction(int((self.charge @ self.gammas[mu])[alpha, beta]))

    def clifford_defects(self) -> list[tuple[int, int]]:
        """Pairs (mu, nu) where gamma^mu gamma^nu + gamma^nu gamma^mu != 2 eta^{mu nu}."""
        ident = np.eye(4, dtype=np.int64)
        bad = []
        for mu, g in enumerate(self.gammas):
            for nu, h in enumerate(self.gammas):
                if not np.array_equal(g @ h + h @ g, 2 * self.eta[mu, nu] * ident):
                    bad.append((mu, nu))
        return bad

    def asymmetric(self) -> list[int]:
        """Indices mu for which C gamma^mu is not symmetric."""
        return [mu for mu, cg in enumerate(self.c_gammas) if not np.array_equal(cg, cg.T)]

    def validate(self) -> None:
        """Raises FrameError unless the Clifford and symmetry relations hold."""
        if self.clifford_defects():
            raise FrameError(f"Clifford relations fail for {self.clifford_defects()}")
        if self.asymmetric():
            raise FrameError(f"C gamma^mu is not symmetric for mu in {self.asymmetric()}")
        if abs(round(float(np.linalg.det(self.charge)))) != 1:
            raise FrameError("Charge conjugation matrix is not invertible over the integers")


def build_gamma() -> GammaData:
    """The validated real representation with C = gamma^0."""
    gammas = (
        np.kron(_EPS, _ONE),
        np.kron(_S1, _ONE),
        np.kron(_S3, _S1),
        np.kron(_S3, _S3),
    )
    data = GammaData(
        eta=_frozen(ETA),
        gammas=tuple(_frozen(g) for g in gammas),
        charge=_frozen(gammas[0]),
    )
    data.validate()
    return data
