"""Verification suites and component reports behind the command line.

A suite is a fixed, ordered list of checks run against one target: a
catalog entry or a parsed model file. Each suite draws its samples from
a fresh generator seeded with the report seed, so a suite gives the same
outcome whether it runs alone or as part of `all`.

Statuses:
    pass - the identity held on every sample
    fail - a counterexample was found; `witness` replays it
    note - informational, never changes the exit code
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterator, Optional

from rich.console import Console
from rich.markup import escape

from oddcon.algebra.expression import format_poly
from oddcon.algebra.grassmann import ChartSignature, GradedPoly
from oddcon.catalog.entries import (
    CatalogEntry,
    frame_action_check,
    lookup,
    smink_algebra,
    smink_divergence,
    smink_torsion_claims,
)
from oddcon.catalog.frames import (
    Parallelisation,
    change_frame,
    frame_divergence,
    orthonormality_residuals,
    vierbein_christoffel,
    weitzenbock,
)
from oddcon.cli.model import parse_model
from oddcon.connections.checks import (
    CheckResult,
    axioms_check,
    banal_bilinearity_check,
    metric_compatibility_check,
)
from oddcon.connections.curvature import (
    bianchi_check,
    curvature,
    curvature_linearity_residual,
    find_anomaly_witness,
    predicted_anomalies,
    tensoriality_anomalies,
    torsion,
)
from oddcon.connections.divergence import (
    divergence_invariance_check,
    divergence_leibniz_residual,
    divergence_linearity_check,
    odd_divergence,
)
from oddcon.connections.extension import Rank2Covariant
from oddcon.connections.quasi import (
    BanalTensor,
    OddEndomorphism,
    OddQuasiConnection,
    banal_part,
    extract_affine,
    induce_from_affine,
    is_involution,
    nabla,
    rho_apply,
    transform_connection,
)
from oddcon.connections.sampling import (
    make_rng,
    random_affine,
    random_field,
    random_frame_change,
    random_function,
)
from oddcon.errors import OddconError
from oddcon.geometry.changes import CoordinateChange, change_library, transform_vector
from oddcon.geometry.fields import VectorField, basis_fields, format_field

console = Console()

PASS = "pass"
FAIL = "fail"
NOTE = "note"

# Checks that expand curvature or transform whole connections use fewer samples
CURVATURE_TRIALS = 8
# Random constant frame changes for the parallelisation independence check
FRAME_CHANGES = 8
# Seeded (affine, involution) pairs for the induce/extract round trips
ROUND_TRIPS = 8


@dataclass(frozen=True)
class CheckOutcome:
    """One line of a report."""

    suite: str
    name: str
    status: str
    trials: int
    detail: str = ""
    witness: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "name": self.name,
            "status": self.status,
            "trials": self.trials,
            "detail": self.detail,
            "witness": dict(self.witness),
        }

    def __str__(self) -> str:
        line = f"{self.suite}/{self.name}: {self.status} ({self.trials} samples)"
        if self.detail:
            line += f"\n  {self.detail}"
        for key, value in self.witness.items():
            line += f"\n  {key} = {value}"
        return line


@dataclass
class Report:
    """Outcome of running one suite, or all of them, against a target."""

    target: str
    suite: str
    seed: int
    trials: int
    checks: list[CheckOutcome] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(check.status != FAIL for check in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def counts(self) -> dict[str, int]:
        return {
            status: sum(check.status == status for check in self.checks)
            for status in (PASS, FAIL, NOTE)
        }

    def to_machine(self) -> str:
        """Sorted-key JSON; identical for identical target, suite, seed and trials."""
        document = {
            "target": self.target,
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "result": PASS if self.passed else FAIL,
            "checks": [check.to_dict() for check in self.checks],
        }
        return json.dumps(document, sort_keys=True, indent=2)

    def __str__(self) -> str:
        counts = self.counts()
        header = (
            f"{self.target} [{self.suite}] seed={self.seed} trials={self.trials}: "
            f"{counts[PASS]} pass, {counts[FAIL]} fail, {counts[NOTE]} note"
        )
        return "\n".join([header] + [str(check) for check in self.checks])


@dataclass
class Target:
    """Everything the suites need to know about the object under test."""

    name: str
    connection: OddQuasiConnection
    frame: Optional[Parallelisation] = None
    metric: Optional[Rank2Covariant] = None
    fields: dict[str, VectorField] = field(default_factory=dict)
    functions: dict[str, GradedPoly] = field(default_factory=dict)
    changes: dict[str, CoordinateChange] = field(default_factory=dict)
    entry: Optional[CatalogEntry] = None

    @property
    def chart(self) -> ChartSignature:
        return self.connection.chart

    @classmethod
    def from_entry(cls, entry: CatalogEntry) -> Target:
        return cls(entry.name, entry.connection, entry.frame, entry.metric, entry=entry)


def resolve_target(name: str) -> Target:
    """A model file if `name` is an existing path, otherwise a catalog entry.

    Raises:
        ModelError: if the file does not parse.
        CatalogError: if the name is neither a file nor a catalog entry.
    """
    path = Path(name)
    if path.is_file():
        model = parse_model(path.read_text(encoding="utf-8"))
        return Target(
            name,
            model.connection(),
            model.parallelisation(),
            model.metric_tensor(),
            dict(model.fields),
            dict(model.functions),
            model.coordinate_changes(),
        )
    return Target.from_entry(lookup(name))


def print_outcome(outcome: CheckOutcome) -> None:
    """One console line per check, with the witness under a failure."""
    marks = {PASS: "[green]✓[/]", FAIL: "[red]✗[/]", NOTE: "[yellow]•[/]"}
    console.print(
        f"  {marks[outcome.status]} {outcome.suite}/{outcome.name} [dim]({outcome.trials})[/]"
    )
    if outcome.status != PASS and outcome.detail:
        console.print(f"      [dim]{escape(outcome.detail)}[/]")
    for key, value in outcome.witness.items():
        console.print(f"      {key} = {escape(value)}", highlight=False)


class Sampler:
    """Seeded homogeneous samples, named model fields and functions first."""

    def __init__(self, target: Target, seed: int):
        self.rng = make_rng(seed)
        self.chart = target.chart
        self.named_fields = [
            X for X in target.fields.values() if X.is_homogeneous() and not X.is_zero
        ]
        self.named_functions = [f for f in target.functions.values() if f.is_homogeneous()]

    def field(self, i: int = -1) -> VectorField:
        if 0 <= i < len(self.named_fields):
            return self.named_fields[i]
        return random_field(self.rng, self.chart)

    def function(self, i: int = -1) -> GradedPoly:
        if 0 <= i < len(self.named_functions):
            return self.named_functions[i]
        return random_function(self.rng, self.chart)

    def rational(self) -> Fraction:
        return Fraction(int(self.rng.integers(-3, 4)), int(self.rng.integers(1, 4)))

    def pairs(self, trials: int) -> list[tuple[VectorField, VectorField, GradedPoly]]:
        return [(self.field(i), self.field(), self.function(i)) for i in range(trials)]

    def triples(self, trials: int) -> list[tuple[VectorField, VectorField, VectorField]]:
        return [(self.field(i), self.field(), self.field()) for i in range(trials)]


def _outcome(suite: str, result: CheckResult, name: Optional[str] = None) -> CheckOutcome:
    name = name or result.name
    if result.passed:
        return CheckOutcome(suite, name, PASS, result.trials)
    example = result.counterexample
    witness = dict(example.inputs)
    witness["residual"] = example.residual
    return CheckOutcome(suite, name, FAIL, result.trials, f"{example.law} fails", witness)


def _show(value) -> str:
    return format_poly(value) if isinstance(value, GradedPoly) else format_field(value)


def _first_failure(
    suite: str, name: str, trials: int, cases: Iterator, law: str
) -> CheckOutcome:
    """Run (inputs, residual) cases lazily and stop at the first nonzero residual.

    A pass reports `trials`, the samples behind the cases; a failure reports
    how many cases ran.
    """
    count = 0
    for inputs, residual in cases:
        count += 1
        if not residual.is_zero:
            witness = {key: _show(value) for key, value in inputs.items()}
            witness["residual"] = _show(residual)
            return CheckOutcome(suite, name, FAIL, count, f"{law} fails", witness)
    return CheckOutcome(suite, name, PASS, trials)


def _is_zero_rho(rho: OddEndomorphism) -> bool:
    return all(value.is_zero for row in rho.matrix for value in row)


def _changes(target: Target) -> dict[str, CoordinateChange]:
    changes = change_library(target.chart)
    changes.update({f"model:{name}": change for name, change in target.changes.items()})
    return changes


def suite_axioms(target: Target, sampler: Sampler, trials: int) -> list[CheckOutcome]:
    C = target.connection
    outcomes = [_outcome("axioms", axioms_check(C, sampler.pairs(trials)))]
    if _is_zero_rho(C.rho):
        B = BanalTensor(C.chart, C.gamma)
        outcomes.append(
            _outcome("axioms", banal_bilinearity_check(B, sampler.pairs(trials)), "banal")
        )
    return outcomes


def suite_involution(target: Target, sampler: Sampler, trials: int) -> list[CheckOutcome]:
    rho = target.connection.rho
    cases = (
        ({"X": e}, rho_apply(rho, rho_apply(rho, e)) - e) for e in basis_fields(target.chart)
    )
    return [_first_failure("involution", "rho rho = 1", rho.chart.dim, cases, "rho rho X = X")]


def suite_tensoriality(target: Target, sampler: Sampler, trials: int) -> list[CheckOutcome]:
    C = target.connection
    few = min(trials, CURVATURE_TRIALS)
    involutive = is_involution(C.rho)
    samples = [
        (sampler.field(i), sampler.field(), sampler.field(), sampler.function(i))
        for i in range(few)
    ]

    def formula_cases():
        for X, Y, Z, f in samples:
            actual = tensoriality_anomalies(C, X, Y, Z, f)
            predicted = predicted_anomalies(C, X, Y, Z, f)
            inputs = {"X": X, "Y": Y, "Z": Z, "f": f}
            yield inputs, actual[0] - predicted[0]
            yield inputs, actual[1] - predicted[1]

    outcomes = [
        _first_failure("tensoriality", "anomaly formula", few, formula_cases(), "closed form")
    ]
    if involutive or _is_zero_rho(C.rho):

        def anomaly_cases():
            for X, Y, Z, f in samples:
                inputs = {"X": X, "Y": Y, "Z": Z, "f": f}
                yield from ((inputs, anomaly) for anomaly in tensoriality_anomalies(C, X, Y, Z, f))

        outcomes.append(
            _first_failure("tensoriality", "tensors", few, anomaly_cases(), "tensoriality")
        )
    else:
        found = find_anomaly_witness(C)
        if found is None:
            outcomes.append(
                CheckOutcome(
                    "tensoriality",
                    "tensors",
                    NOTE,
                    0,
                    "rho is not an involution but no basis witness was found",
                )
            )
        else:
            X, Y, f, anomaly = found
            witness = {"X": _show(X), "Y": _show(Y), "f": _show(f), "residual": _show(anomaly)}
            outcomes.append(
                CheckOutcome(
                    "tensoriality",
                    "tensors",
                    FAIL,
                    1,
                    "torsion is not a tensor: rho is not an involution",
                    witness,
                )
            )

    def torsion_cases():
        for X, Y, _ in sampler.pairs(trials):
            x, y = X.homogeneous_parity(), Y.homogeneous_parity()
            swapped = torsion(C, Y, X)
            yield {"X": X, "Y": Y}, torsion(C, X, Y) - (-swapped if x * y else swapped)

    def curvature_cases():
        for X, Y, Z, _ in samples:
            x, y = X.homogeneous_parity(), Y.homogeneous_parity()
            swapped = curvature(C, Y, X, Z)
            expected = swapped if (x + 1) * (y + 1) % 2 else -swapped
            yield {"X": X, "Y": Y, "Z": Z}, curvature(C, X, Y, Z) - expected

    outcomes.append(
        _first_failure(
            "tensoriality", "torsion symmetry", trials, torsion_cases(), "graded symmetry"
        )
    )
    outcomes.append(
        _first_failure(
            "tensoriality",
            "curvature antisymmetry",
            few,
            curvature_cases(),
            "graded antisymmetry",
        )
    )
    if involutive:
        cases = (
            ({"X": X, "Y": Y, "Z": Z, "f": f}, curvature_linearity_residual(C, X, Y, Z, f))
            for X, Y, Z, f in samples
        )
        outcomes.append(
            _first_failure("tensoriality", "curvature linear in Z", few, cases, "linearity in Z")
        )
    return outcomes


def suite_bianchi(target: Target, sampler: Sampler, trials: int) -> list[CheckOutcome]:
    C = target.connection
    if not is_involution(C.rho):
        return [CheckOutcome("bianchi", "first identity", NOTE, 0, "needs an involutive rho")]
    triples = sampler.triples(trials)

    def cases():
        for X, Y, Z in triples:
            left, right = bianchi_check(C, X, Y, Z)
            yield {"X": X, "Y": Y, "Z": Z}, left - right

    outcomes = [_first_failure("bianchi", "first identity", trials, cases(), "Bianchi")]
    basis = basis_fields(C.chart)
    if all(torsion(C, e, f).is_zero for e in basis for f in basis):

        def cyclic_cases():
            for X, Y, Z in triples:
                left, _ = bianchi_check(C, X, Y, Z)
                yield {"X": X, "Y": Y, "Z": Z}, left

        outcomes.append(
            _first_failure("bianchi", "torsion-free", trials, cyclic_cases(), "cyclic sum = 0")
        )
    return outcomes


def suite_covariance(target: Target, sampler: Sampler, trials: int) -> list[CheckOutcome]:
    C = target.connection
    involutive = is_involution(C.rho)
    outcomes = []
    for label, change in _changes(target).items():
        primed = transform_connection(C, change)
        pairs = sampler.pairs(trials)

        def cases():
            for X, Y, _ in pairs:
                Xp, Yp = transform_vector(X, change), transform_vector(Y, change)
                expected = transform_vector(nabla(C, X, Y), change)
                yield {"X": X, "Y": Y}, nabla(primed, Xp, Yp) - expected
                expected = transform_vector(rho_apply(C.rho, X), change)
                yield {"X": X}, rho_apply(primed.rho, Xp) - expected
                if involutive:
                    expected = transform_vector(torsion(C, X, Y), change)
                    yield {"X": X, "Y": Y}, torsion(primed, Xp, Yp) - expected

        outcomes.append(
            _first_failure("covariance", label, trials, cases(), "transformation law")
        )
        if involutive:
            few = sampler.triples(min(trials, CURVATURE_TRIALS))

            def curvature_cases():
                for X, Y, Z in few:
                    moved = [transform_vector(V, change) for V in (X, Y, Z)]
                    expected = transform_vector(curvature(C, X, Y, Z), change)
                    yield {"X": X, "Y": Y, "Z": Z}, curvature(primed, *moved) - expected

            outcomes.append(
                _first_failure(
                    "covariance",
                    f"{label} curvature",
                    len(few),
                    curvature_cases(),
                    "tensorial curvature",
                )
            )
    return outcomes


def _is_weitzenbock(target: Target) -> bool:
    par = target.frame
    C = target.connection
    if par is None or not par.is_paired or not is_involution(C.rho):
        return False
    return weitzenbock(par, C.rho) == C


def suite_divergence(target: Target, sampler: Sampler, trials: int) -> list[CheckOutcome]:
    C = target.connection
    outcomes = []
    count = 0
    failure = None
    for _ in range(trials):
        count += 1
        X, Y, s, t = sampler.field(), sampler.field(), sampler.rational(), sampler.rational()
        if not divergence_linearity_check(C, X, Y, s, t):
            failure = {"X": _show(X), "Y": _show(Y), "s": str(s), "t": str(t)}
            break
    if failure is None:
        outcomes.append(CheckOutcome("divergence", "linearity", PASS, count))
    else:
        outcomes.append(
            CheckOutcome("divergence", "linearity", FAIL, count, "R-linearity fails", failure)
        )
    cases = (
        ({"X": X, "f": f}, divergence_leibniz_residual(C, f, X))
        for X, _, f in sampler.pairs(trials)
    )
    outcomes.append(_first_failure("divergence", "Leibniz", trials, cases, "twisted Leibniz"))
    for label, change in _changes(target).items():
        fields = [sampler.field(i) for i in range(trials)]
        bad = next((X for X in fields if not divergence_invariance_check(C, change, X)), None)
        if bad is None:
            outcomes.append(CheckOutcome("divergence", f"invariance {label}", PASS, trials))
        else:
            outcomes.append(
                CheckOutcome(
                    "divergence",
                    f"invariance {label}",
                    FAIL,
                    fields.index(bad) + 1,
                    "Div depends on the coordinates",
                    {"X": _show(bad)},
                )
            )
    if _is_weitzenbock(target):
        par = target.frame
        cases = (
            ({"X": X}, frame_divergence(par, C.rho, X) - odd_divergence(C, X))
            for X in [sampler.field(i) for i in range(trials)]
        )
        outcomes.append(
            _first_failure("divergence", "frame formula", trials, cases, "frame formula")
        )
    if target.entry is not None and target.entry.gamma is not None:
        cases = (
            ({"X": X}, smink_divergence(X) - odd_divergence(C, X))
            for X in [sampler.field(i) for i in range(trials)]
        )
        outcomes.append(
            _first_failure("divergence", "smink closed form", trials, cases, "closed form")
        )
    return outcomes


def suite_metric(target: Target, sampler: Sampler, trials: int) -> list[CheckOutcome]:
    if target.metric is None:
        return [CheckOutcome("metric", "compatibility", NOTE, 0, "target has no metric")]
    result = metric_compatibility_check(target.connection, target.metric, sampler.triples(trials))
    return [_outcome("metric", result, "compatibility")]


def _claim_outcome(name: str, claims: list, wrong: list, detail: str) -> CheckOutcome:
    if not wrong:
        return CheckOutcome("catalog", name, PASS, len(claims))
    return CheckOutcome("catalog", name, FAIL, len(claims), detail, {"claim": str(wrong[0])})


def _claims_outcomes() -> list[CheckOutcome]:
    """SMink bracket and torsion claims; P-D torsion mismatches are notes."""
    algebra = smink_algebra()
    wrong = [claim for claim in algebra if not claim.holds]
    outcomes = [_claim_outcome("smink algebra", algebra, wrong, "bracket differs")]
    claims = smink_torsion_claims()
    mixed = [c for c in claims if not c.holds and c.left[0] != c.right[0]]
    pure = [c for c in claims if not c.holds and c.left[0] == c.right[0]]
    outcomes.append(_claim_outcome("smink torsion", claims, pure, "torsion differs"))
    if mixed:
        outcomes.append(
            CheckOutcome(
                "catalog",
                "smink torsion P-D",
                NOTE,
                len(mixed),
                f"{len(mixed)} displayed P-D values differ from the expansion, "
                "which vanishes because the frame is parallel and [P, D] = 0",
                {"first": str(mixed[0])},
            )
        )
    return outcomes


def suite_catalog(target: Target, sampler: Sampler, trials: int) -> list[CheckOutcome]:
    entry = target.entry
    if entry is None:
        note = "target is not a catalog entry"
        return [CheckOutcome("catalog", "catalog checks", NOTE, 0, note)]
    C = entry.connection
    par = entry.frame
    outcomes = []
    if entry.gamma is not None:
        outcomes.extend(_claims_outcomes())
    if par is None:
        return outcomes
    frame = par.frame

    def flat_cases():
        for i, X in enumerate(frame):
            for j, Y in enumerate(frame):
                for k, Z in enumerate(frame):
                    labels = {"X": par.labels[i], "Y": par.labels[j], "Z": par.labels[k]}
                    yield labels, curvature(C, X, Y, Z)

    outcomes.append(
        _first_failure("catalog", "flat on frame", len(frame) ** 3, flat_cases(), "R = 0")
    )
    residuals = orthonormality_residuals(par)
    if residuals:
        kind, i, j, value = residuals[0]
        outcomes.append(
            CheckOutcome(
                "catalog",
                "orthonormality",
                FAIL,
                1,
                f"{kind} relation ({i}, {j})",
                {"residual": format_poly(value)},
            )
        )
    else:
        outcomes.append(CheckOutcome("catalog", "orthonormality", PASS, 1))
    if not par.is_paired:
        return outcomes
    vierbein = OddQuasiConnection(C.chart, C.rho, vierbein_christoffel(par, C.rho))
    outcomes.append(
        CheckOutcome(
            "catalog",
            "vierbein formula",
            PASS if vierbein == C else FAIL,
            1,
            "" if vierbein == C else "vierbein Christoffel symbols differ from the frame ones",
        )
    )
    independence = PASS
    witness = {}
    for n in range(FRAME_CHANGES):
        matrix = random_frame_change(sampler.rng, C.chart)
        if weitzenbock(change_frame(par, matrix), C.rho) != C:
            independence = FAIL
            witness = {"frame change": str([[str(v) for v in row] for row in matrix])}
            break
    outcomes.append(
        CheckOutcome(
            "catalog",
            "frame independence",
            independence,
            n + 1,
            "" if independence == PASS else "constant frame change moves the connection",
            witness,
        )
    )
    metric = entry.metric
    if metric is not None:
        triples = [(X, Y, Z) for X in frame for Y in frame for Z in frame]
        result = metric_compatibility_check(C, metric, triples)
        outcomes.append(_outcome("catalog", result, "metric on frame"))
    outcomes.extend(_round_trips(C, sampler, trials))
    outcomes.append(
        CheckOutcome(
            "catalog",
            "frame action",
            PASS if frame_action_check(entry) else FAIL,
            len(frame),
        )
    )
    return outcomes


def _round_trips(C: OddQuasiConnection, sampler: Sampler, trials: int) -> list[CheckOutcome]:
    """Induce then extract, extract then induce, and the banal remainder."""
    status = PASS
    detail = ""
    count = 0
    for _ in range(ROUND_TRIPS):
        count += 1
        A = random_affine(sampler.rng, C.chart)
        if extract_affine(induce_from_affine(A, C.rho), C.rho) != A:
            status, detail = FAIL, "extract(induce(A)) differs from A"
            break
    outcomes = [CheckOutcome("catalog", "induce-extract", status, count, detail)]
    same = induce_from_affine(extract_affine(C), C.rho) == C
    outcomes.append(
        CheckOutcome(
            "catalog",
            "extract-induce",
            PASS if same else FAIL,
            1,
            "" if same else "induce(extract(C)) differs from C",
        )
    )
    B = banal_part(C, random_affine(sampler.rng, C.chart))
    result = banal_bilinearity_check(B, sampler.pairs(min(trials, CURVATURE_TRIALS)))
    outcomes.append(_outcome("catalog", result, "banal remainder"))
    return outcomes


SUITES: dict[str, tuple[str, Callable[[Target, Sampler, int], list[CheckOutcome]]]] = {
    "axioms": ("Connection axioms", suite_axioms),
    "involution": ("rho is an involution", suite_involution),
    "tensoriality": ("Torsion and curvature as tensors", suite_tensoriality),
    "bianchi": ("First Bianchi identity", suite_bianchi),
    "covariance": ("Transformation laws", suite_covariance),
    "divergence": ("Odd divergence", suite_divergence),
    "metric": ("Metric compatibility", suite_metric),
    "catalog": ("Catalog claims", suite_catalog),
}

SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(
    target: Target,
    suite: str,
    seed: int,
    trials: int,
    on_check: Optional[Callable[[CheckOutcome], None]] = None,
) -> Report:
    """Run one suite, or every suite in order for `all`.

    Raises:
        OddconError: for an unknown suite name.
    """
    if suite not in SUITE_NAMES:
        raise OddconError(f"Unknown suite: {suite}. Use one of {', '.join(SUITE_NAMES)}")
    names = list(SUITES) if suite == "all" else [suite]
    report = Report(target.name, suite, seed, trials)
    for name in names:
        _, run = SUITES[name]
        for outcome in run(target, Sampler(target, seed), trials):
            report.checks.append(outcome)
            if on_check is not None:
                on_check(outcome)
    return report


@dataclass
class ComponentTable:
    """Rows of canonical text for `oddcon components`."""

    title: str
    columns: list[str]
    rows: list[list[str]] = field(default_factory=list)
    vanishing: int = 0


def format_in_frame(par: Parallelisation, X: VectorField) -> str:
    """`label: expr; label: expr` over the nonzero frame components of X."""
    parts = [
        f"{label}: {format_poly(value)}"
        for label, value in zip(par.labels, par.components(X))
        if not value.is_zero
    ]
    return "; ".join(parts) if parts else "0"


OBJECTS = ("nabla", "torsion", "curvature", "divergence", "christoffel")


def component_table(target: Target, obj: str, par: Parallelisation) -> ComponentTable:
    """Components of a derived object on the basis `par`; zero entries are only counted.

    Raises:
        OddconError: for an unknown object name.
    """
    C = target.connection
    labels = par.labels
    frame = par.frame
    if obj == "christoffel":
        names = C.chart.names
        table = ComponentTable("Christoffel symbols Gamma_ba^c", ["b", "a", "c", "value"])
        for b, plane in enumerate(C.gamma):
            for a, line in enumerate(plane):
                for c, value in enumerate(line):
                    if value.is_zero:
                        table.vanishing += 1
                    else:
                        table.rows.append([names[b], names[a], names[c], format_poly(value)])
        return table
    if obj == "nabla":
        table = ComponentTable("nabla_X Y", ["X", "Y", "value"])
        for i, X in enumerate(frame):
            for j, Y in enumerate(frame):
                _add(table, [labels[i], labels[j]], format_in_frame(par, nabla(C, X, Y)))
        return table
    if obj == "torsion":
        stated = _stated_torsion(target, par)
        columns = ["X", "Y", "value"] + (["stated"] if stated else [])
        table = ComponentTable("torsion T(X, Y), X <= Y", columns)
        for i in range(len(frame)):
            for j in range(i, len(frame)):
                value = format_in_frame(par, torsion(C, frame[i], frame[j]))
                extra = [stated[(labels[i], labels[j])]] if stated else []
                if value == "0" and not (extra and extra[0] != "0"):
                    table.vanishing += 1
                else:
                    table.rows.append([labels[i], labels[j], value] + extra)
        return table
    if obj == "curvature":
        table = ComponentTable("curvature R(X, Y) Z", ["X", "Y", "Z", "value"])
        for i, X in enumerate(frame):
            for j, Y in enumerate(frame):
                for k, Z in enumerate(frame):
                    value = format_in_frame(par, curvature(C, X, Y, Z))
                    _add(table, [labels[i], labels[j], labels[k]], value)
        return table
    if obj == "divergence":
        table = ComponentTable("odd divergence Div X", ["X", "value"])
        named = list(zip(labels, frame)) + list(target.fields.items())
        for label, X in named:
            _add(table, [label], format_poly(odd_divergence(C, X)))
        return table
    raise OddconError(f"Unknown object: {obj}. Use one of {', '.join(OBJECTS)}")


def _add(table: ComponentTable, keys: list[str], value: str) -> None:
    if value == "0":
        table.vanishing += 1
    else:
        table.rows.append(keys + [value])


def _stated_torsion(target: Target, par: Parallelisation) -> dict[tuple[str, str], str]:
    """Displayed SMink torsion values by frame labels, when reporting on the SMink frame."""
    entry = target.entry
    if entry is None or entry.gamma is None or entry.frame is not par:
        return {}
    return {
        (claim.left, claim.right): format_in_frame(par, claim.stated)
        for claim in smink_torsion_claims()
    }
