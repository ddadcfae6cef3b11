"""Line-oriented model files describing a connection on one chart.

    # comment
    chart even t
    chart odd theta
    rho t theta = 1                     rho_a^b
    gamma theta t t = t                 Gamma_ba^c
    field X even t = t*theta            component X^a, parity optional
    function f odd = theta
    frame P even t = 1                  frame fields in order
    metric t theta = 1                  G_ab
    change shift t = t + theta*...      new coordinate in terms of the old
    inverse shift t = ...               old coordinate in terms of the new

Both chart lines come first. Omitted rho, gamma and metric entries are 0;
coordinates a change does not mention stay fixed. A key may appear once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from pyparsing import (
    Group,
    Keyword,
    Opt,
    ParseBaseException,
    Word,
    ZeroOrMore,
    alphanums,
    alphas,
)

from oddcon.algebra.expression import format_poly, parse_expression
from oddcon.algebra.grassmann import ChartSignature, GradedPoly
from oddcon.catalog.entries import CatalogEntry
from oddcon.catalog.frames import Parallelisation
from oddcon.connections.extension import Rank2Covariant
from oddcon.connections.quasi import OddQuasiConnection
from oddcon.errors import ExpressionSyntaxError, ModelError, OddconError
from oddcon.geometry.changes import CoordinateChange
from oddcon.geometry.fields import VectorField

PARITY_NAMES = {"even": 0, "odd": 1}

_name = Word(alphas + "_", alphanums + "_")
_parity = Keyword("even") | Keyword("odd")

HEADS = {
    "chart": Keyword("chart") + _parity("block") + Group(ZeroOrMore(_name))("names"),
    "rho": Keyword("rho") + _name("a") + _name("b"),
    "gamma": Keyword("gamma") + _name("b") + _name("a") + _name("c"),
    "field": Keyword("field") + _name("label") + Opt(_parity("parity")) + _name("a"),
    "function": Keyword("function") + _name("label") + Opt(_parity("parity")),
    "frame": Keyword("frame") + _name("label") + Opt(_parity("parity")) + _name("a"),
    "metric": Keyword("metric") + _name("a") + _name("b"),
    "change": Keyword("change") + _name("label") + _name("a"),
    "inverse": Keyword("inverse") + _name("label") + _name("a"),
}

# Coordinate slots of each kind; they are always the last words of the head
COORDINATE_SLOTS = {
    "rho": ("a", "b"),
    "gamma": ("b", "a", "c"),
    "metric": ("a", "b"),
    "field": ("a",),
    "frame": ("a",),
    "change": ("a",),
    "inverse": ("a",),
    "function": (),
}


@dataclass
class ModelFile:
    """Parsed model data; every value is a polynomial on `chart`."""

    chart: ChartSignature
    rho: dict[tuple[str, str], GradedPoly] = field(default_factory=dict)
    gamma: dict[tuple[str, str, str], GradedPoly] = field(default_factory=dict)
    fields: dict[str, VectorField] = field(default_factory=dict)
    functions: dict[str, GradedPoly] = field(default_factory=dict)
    frame: dict[str, VectorField] = field(default_factory=dict)
    metric: dict[tuple[str, str], GradedPoly] = field(default_factory=dict)
    changes: dict[str, tuple[dict[str, GradedPoly], dict[str, GradedPoly]]] = field(
        default_factory=dict
    )

    def connection(self) -> OddQuasiConnection:
        return OddQuasiConnection.from_mapping(self.chart, self.rho, self.gamma)

    def metric_tensor(self) -> Optional[Rank2Covariant]:
        """The metric entries as a tensor of parity 1, or 0 if only that fits."""
        if not self.metric:
            return None
        index = self.chart.index
        zero = GradedPoly.zero(self.chart)
        rows = [[zero] * self.chart.dim for _ in range(self.chart.dim)]
        for (a, b), value in self.metric.items():
            rows[index(a)][index(b)] = value
        try:
            return Rank2Covariant(self.chart, 1, rows)
        except OddconError:
            return Rank2Covariant(self.chart, 0, rows)

    def parallelisation(self) -> Optional[Parallelisation]:
        """The frame as a parallelisation once it has one field per coordinate."""
        if len(self.frame) != self.chart.dim:
            return None
        return Parallelisation.from_frame(
            self.chart, list(self.frame.values()), list(self.frame)
        )

    def coordinate_changes(self) -> dict[str, CoordinateChange]:
        changes = {}
        for label, (forward, inverse) in self.changes.items():
            images = []
            for mapping in (forward, inverse):
                images.append(
                    [
                        mapping.get(name, GradedPoly.coordinate(self.chart, name))
                        for name in self.chart.names
                    ]
                )
            changes[label] = CoordinateChange(self.chart, images[0], images[1], name=label)
        return changes


class _ModelBuilder:
    """Accumulates parsed lines and reports errors against their line numbers."""

    def __init__(self):
        self.blocks: dict[str, tuple[str, ...]] = {}
        self.model: Optional[ModelFile] = None
        self.components: dict[str, dict[str, tuple[Optional[int], dict[str, GradedPoly]]]] = {
            "field": {},
            "frame": {},
        }
        self.first_line: dict[tuple, int] = {}

    def chart(self, line: int, head) -> None:
        block = head["block"]
        if block in self.blocks:
            raise ModelError(f"chart {block} declared twice", line)
        if self.model is not None:
            raise ModelError("chart lines must come before all other lines", line)
        self.blocks[block] = tuple(head["names"])
        if len(self.blocks) == 2:
            try:
                chart = ChartSignature(self.blocks["even"], self.blocks["odd"])
            except OddconError as err:
                raise ModelError(str(err), line) from None
            self.model = ModelFile(chart)

    def require_chart(self, line: int) -> ModelFile:
        if self.model is None:
            raise ModelError("both chart lines (even and odd) must come first", line)
        return self.model

    def once(self, key: tuple, line: int) -> None:
        if key in self.first_line:
            raise ModelError(
                f"duplicate entry {' '.join(key)} (first on line {self.first_line[key]})", line
            )
        self.first_line[key] = line


def _coordinate(chart: ChartSignature, name: str, line: int, column: int) -> str:
    if name not in chart.names:
        raise ModelError(f"unknown coordinate {name!r}", line, column)
    return name


def _word_columns(text: str) -> list[int]:
    return [start + 1 for _, start, _ in _name.scan_string(text)]


def _expect_parity(value: GradedPoly, parity: int, what: str, line: int, column: int) -> None:
    if not value.has_parity(parity):
        message = f"{what} must have parity {parity}, got {format_poly(value)}"
        raise ModelError(message, line, column)


def parse_model(text: str) -> ModelFile:
    """Parse a model file.

    Raises:
        ModelError: with line and, where known, column of the first problem.
    """
    builder = _ModelBuilder()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        head_text, eq, expr_text = line.partition("=")
        if not head_text.strip():
            raise ModelError("line starts with '=' and names no entry", number, 1)
        kind = head_text.split()[0]
        if kind not in HEADS:
            raise ModelError(f"unknown entry kind {kind!r}", number, line.index(kind) + 1)
        try:
            head = HEADS[kind].parse_string(head_text, parse_all=True)
        except ParseBaseException as err:
            raise ModelError(f"malformed {kind} line: {err.msg}", number, err.col) from None
        if kind == "chart":
            if eq:
                raise ModelError("chart lines take no value", number, len(head_text) + 1)
            builder.chart(number, head)
            continue
        model = builder.require_chart(number)
        if not eq:
            raise ModelError(f"{kind} line needs '= <expression>'", number, len(line) + 1)
        column = len(head_text) + 2
        try:
            value = parse_expression(model.chart, expr_text)
        except ExpressionSyntaxError as err:
            raise ModelError(err.message, number, column + err.column - 1) from None
        value_column = column + len(expr_text) - len(expr_text.lstrip())
        slots = COORDINATE_SLOTS[kind]
        words = _word_columns(head_text)
        columns = dict(zip(slots, words[len(words) - len(slots) :]))
        _add_entry(builder, model, kind, head, value, number, value_column, columns)
    model = builder.model
    if model is None:
        raise ModelError("missing chart declaration", max(1, len(text.splitlines())))
    _finish(builder, model)
    return model


def _add_entry(builder, model, kind, head, value, line, column, columns) -> None:
    chart = model.chart

    def coordinate(key: str) -> str:
        return _coordinate(chart, head[key], line, columns[key])

    par = chart.parity
    if kind == "rho":
        a, b = (coordinate(k) for k in ("a", "b"))
        builder.once(("rho", a, b), line)
        _expect_parity(value, (par(a) + par(b) + 1) % 2, f"rho {a} {b}", line, column)
        model.rho[(a, b)] = value
    elif kind == "gamma":
        b, a, c = (coordinate(k) for k in ("b", "a", "c"))
        builder.once(("gamma", b, a, c), line)
        expected = (par(a) + par(b) + par(c) + 1) % 2
        _expect_parity(value, expected, f"gamma {b} {a} {c}", line, column)
        model.gamma[(b, a, c)] = value
    elif kind == "metric":
        a, b = (coordinate(k) for k in ("a", "b"))
        builder.once(("metric", a, b), line)
        model.metric[(a, b)] = value
    elif kind == "function":
        label = head["label"]
        builder.once(("function", label), line)
        if "parity" in head:
            _expect_parity(value, PARITY_NAMES[head["parity"]], f"function {label}", line, column)
        model.functions[label] = value
    elif kind in ("field", "frame"):
        label = head["label"]
        a = coordinate("a")
        builder.once((kind, label, a), line)
        store = builder.components[kind]
        declared = PARITY_NAMES[head["parity"]] if "parity" in head else None
        parity, comps = store.setdefault(label, (declared, {}))
        if declared is not None and parity is not None and declared != parity:
            raise ModelError(f"{kind} {label} declared with two parities", line)
        if declared is not None:
            store[label] = (declared, comps)
            parity = declared
        if parity is not None:
            _expect_parity(value, (parity + par(a)) % 2, f"{kind} {label} {a}", line, column)
        comps[a] = value
        builder.first_line.setdefault((kind, label), line)
    else:
        label = head["label"]
        a = coordinate("a")
        builder.once((kind, label, a), line)
        forward, inverse = model.changes.setdefault(label, ({}, {}))
        _expect_parity(value, par(a), f"{kind} {label} {a}", line, column)
        (forward if kind == "change" else inverse)[a] = value
        builder.first_line.setdefault(("change-name", label), line)


def _finish(builder: _ModelBuilder, model: ModelFile) -> None:
    for kind, target in (("field", model.fields), ("frame", model.frame)):
        for label, (parity, comps) in builder.components[kind].items():
            line = builder.first_line[(kind, label)]
            try:
                target[label] = VectorField.from_mapping(model.chart, comps, parity)
            except OddconError as err:
                raise ModelError(f"{kind} {label}: {err}", line) from None
    for label, (forward, inverse) in model.changes.items():
        line = builder.first_line[("change-name", label)]
        if forward and not inverse:
            raise ModelError(f"change {label} has no inverse lines", line)
        if inverse and not forward:
            raise ModelError(f"inverse {label} has no change lines", line)
    checks = (
        ("rho", model.connection, ("rho",)),
        ("metric", model.metric_tensor, ("metric",)),
        ("frame", model.parallelisation, ("frame",)),
        ("change", model.coordinate_changes, ("change-name",)),
    )
    for what, build, prefix in checks:
        try:
            build()
        except OddconError as err:
            lines = [n for key, n in builder.first_line.items() if key[: len(prefix)] == prefix]
            raise ModelError(f"invalid {what}: {err}", min(lines, default=1)) from None


def serialize_model(model: ModelFile) -> str:
    """Canonical text of a model; parse_model reads it back to an equal model."""
    chart = model.chart
    out = [
        f"chart even {' '.join(chart.even)}".rstrip(),
        f"chart odd {' '.join(chart.odd)}".rstrip(),
    ]
    for (a, b), value in model.rho.items():
        out.append(f"rho {a} {b} = {format_poly(value)}")
    for (b, a, c), value in model.gamma.items():
        out.append(f"gamma {b} {a} {c} = {format_poly(value)}")
    for label, value in model.functions.items():
        homogeneous = not value.is_zero and value.is_homogeneous()
        parity = f" {_parity_name(value.parity)}" if homogeneous else ""
        out.append(f"function {label}{parity} = {format_poly(value)}")
    for kind, group in (("field", model.fields), ("frame", model.frame)):
        for label, X in group.items():
            out.extend(_field_lines(kind, label, X))
    for (a, b), value in model.metric.items():
        out.append(f"metric {a} {b} = {format_poly(value)}")
    for label, (forward, inverse) in model.changes.items():
        for a, value in forward.items():
            out.append(f"change {label} {a} = {format_poly(value)}")
        for a, value in inverse.items():
            out.append(f"inverse {label} {a} = {format_poly(value)}")
    return "\n".join(out) + "\n"


def _parity_name(parity: int) -> str:
    return "odd" if parity else "even"


def _field_lines(kind: str, label: str, X: VectorField) -> list[str]:
    parity = f" {_parity_name(X.parity)}" if X.parity is not None else ""
    lines = [
        f"{kind} {label}{parity} {name} = {format_poly(value)}"
        for name, value in zip(X.chart.names, X.components)
        if not value.is_zero
    ]
    return lines or [f"{kind} {label}{parity} {X.chart.names[0]} = 0"]


def model_from_entry(entry: CatalogEntry) -> ModelFile:
    """The model file of a catalog entry: rho, Gamma, its frame and induced metric."""
    C = entry.connection
    chart = C.chart
    names = chart.names
    model = ModelFile(chart)
    for a, row in enumerate(C.rho.matrix):
        for b, value in enumerate(row):
            if not value.is_zero:
                model.rho[(names[a], names[b])] = value
    for b, plane in enumerate(C.gamma):
        for a, line in enumerate(plane):
            for c, value in enumerate(line):
                if not value.is_zero:
                    model.gamma[(names[b], names[a], names[c])] = value
    if entry.frame is not None:
        for label, Z in zip(entry.frame.labels, entry.frame.frame):
            model.frame[label] = Z
        metric = entry.metric
        if metric is not None:
            for a, row in enumerate(metric.matrix):
                for b, value in enumerate(row):
                    if not value.is_zero:
                        model.metric[(names[a], names[b])] = value
    return model
