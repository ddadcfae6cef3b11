"""Exact identity checks that report the first counterexample instead of raising."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from oddcon.algebra.grassmann import GradedPoly
from oddcon.connections.extension import Rank2Covariant, compatibility_residual
from oddcon.connections.quasi import (
    AffineConnection,
    BanalTensor,
    OddQuasiConnection,
    affine_nabla,
    nabla,
    rho_apply,
)
from oddcon.geometry.fields import VectorField, format_field


@dataclass(frozen=True)
class Counterexample:
    """Inputs and nonzero residual of a failed identity."""

    law: str
    inputs: dict[str, str] = field(default_factory=dict)
    residual: str = ""

    def __str__(self) -> str:
        shown = ", ".join(f"{k} = {v}" for k, v in self.inputs.items())
        return f"{self.law} fails at {shown}; residual {self.residual}"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one identity over a set of samples."""

    name: str
    passed: bool
    trials: int
    counterexample: Optional[Counterexample] = None

    def __str__(self) -> str:
        if self.passed:
            return f"{self.name}: pass ({self.trials} samples)"
        return f"{self.name}: FAIL after {self.trials} samples\n  {self.counterexample}"


def _show(value) -> str:
    if isinstance(value, GradedPoly):
        return str(value)
    return format_field(value)


def _fail(name: str, trials: int, law: str, residual, **inputs) -> CheckResult:
    return CheckResult(
        name,
        False,
        trials,
        Counterexample(law, {k: _show(v) for k, v in inputs.items()}, _show(residual)),
    )


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def axioms_check(
    C: OddQuasiConnection, samples: Iterable[tuple[VectorField, VectorField, GradedPoly]]
) -> CheckResult:
    """Parity rule, odd function-linearity in X and the Leibniz rule in Y.

    nabla_{fX} Y = (-1)^f f nabla_X Y
    nabla_X (fY) = rho(X)f Y + (-1)^{(x+1)f} f nabla_X Y
    """
    trials = 0
    for X, Y, f in samples:
        trials += 1
        x, y, fp = X.homogeneous_parity(), Y.homogeneous_parity(), f.parity or 0
        value = nabla(C, X, Y)
        if not value.is_zero and value.parity != (x + y + 1) % 2:
            return _fail("axioms", trials, "parity rule", value, X=X, Y=Y)
        residual = nabla(C, f * X, Y) - (f * value) * _sign(fp)
        if not residual.is_zero:
            return _fail("axioms", trials, "linearity in X", residual, X=X, Y=Y, f=f)
        leibniz = rho_apply(C.rho, X)(f) * Y + (f * value) * _sign((x + 1) * fp)
        residual = nabla(C, X, f * Y) - leibniz
        if not residual.is_zero:
            return _fail("axioms", trials, "Leibniz rule in Y", residual, X=X, Y=Y, f=f)
    return CheckResult("axioms", True, trials)


def affine_axioms_check(
    A: AffineConnection, samples: Iterable[tuple[VectorField, VectorField, GradedPoly]]
) -> CheckResult:
    """Even connection axioms: parity x + y, f-linearity in X, Leibniz rule in Y."""
    trials = 0
    for X, Y, f in samples:
        trials += 1
        x, y, fp = X.homogeneous_parity(), Y.homogeneous_parity(), f.parity or 0
        value = affine_nabla(A, X, Y)
        if not value.is_zero and value.parity != (x + y) % 2:
            return _fail("affine axioms", trials, "parity rule", value, X=X, Y=Y)
        residual = affine_nabla(A, f * X, Y) - f * value
        if not residual.is_zero:
            return _fail("affine axioms", trials, "linearity in X", residual, X=X, Y=Y, f=f)
        residual = affine_nabla(A, X, f * Y) - (X(f) * Y + (f * value) * _sign(x * fp))
        if not residual.is_zero:
            return _fail("affine axioms", trials, "Leibniz rule in Y", residual, X=X, Y=Y, f=f)
    return CheckResult("affine axioms", True, trials)


def banal_bilinearity_check(
    B: BanalTensor, samples: Iterable[tuple[VectorField, VectorField, GradedPoly]]
) -> CheckResult:
    """B(fX, Y) = (-1)^f f B(X, Y) and B(X, fY) = (-1)^{(x+1)f} f B(X, Y)."""
    trials = 0
    for X, Y, f in samples:
        trials += 1
        x, fp = X.homogeneous_parity(), f.parity or 0
        value = B(X, Y)
        residual = B(f * X, Y) - (f * value) * _sign(fp)
        if not residual.is_zero:
            return _fail("banal bilinearity", trials, "first slot", residual, X=X, Y=Y, f=f)
        residual = B(X, f * Y) - (f * value) * _sign((x + 1) * fp)
        if not residual.is_zero:
            return _fail("banal bilinearity", trials, "second slot", residual, X=X, Y=Y, f=f)
    return CheckResult("banal bilinearity", True, trials)


def metric_compatibility_check(
    C: OddQuasiConnection,
    G: Rank2Covariant,
    samples: Iterable[tuple[VectorField, VectorField, VectorField]],
) -> CheckResult:
    """rho(X)(G(Y, Z)) = G(nabla_X Y, Z) + (-1)^{(x+1)y} G(Y, nabla_X Z)."""
    trials = 0
    for X, Y, Z in samples:
        trials += 1
        residual = compatibility_residual(C, G, X, Y, Z)
        if not residual.is_zero:
            return _fail("metric", trials, "compatibility", residual, X=X, Y=Y, Z=Z)
    return CheckResult("metric", True, trials)
