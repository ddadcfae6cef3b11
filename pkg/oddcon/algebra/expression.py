"""Textual form of superfunctions.

Grammar (whitespace-insensitive):

    expr     :: term [ ('+' | '-') term ]*
    term     :: factor [ '*' factor ]*
    factor   :: '-' factor | atom
    atom     :: rational | name [ '^' integer ] | '(' expr ')'
    rational :: integer [ '/' integer ]

Names must be coordinates of the chart. Exponents are only allowed on even
coordinates and are at most MAX_EXPONENT. format_poly writes the canonical form,
which parses back to the same polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from pyparsing import (
    Literal,
    OpAssoc,
    Optional,
    ParseBaseException,
    ParseFatalException,
    ParserElement,
    Regex,
    Suppress,
    Word,
    alphanums,
    alphas,
    infix_notation,
    nums,
    one_of,
)

from oddcon.algebra.grassmann import ChartSignature, GradedPoly, Monomial
from oddcon.errors import ExpressionSyntaxError

ParserElement.enable_packrat()

# Largest exponent accepted on an even coordinate
MAX_EXPONENT = 64


class ExpressionParser:
    """Parser bound to one chart; parse actions build GradedPoly values directly."""

    def __init__(self, chart: ChartSignature):
        self.chart = chart
        rational = Regex(r"\d+(?:/\d+)?").set_parse_action(self._push_number)
        name = Word(alphas + "_", alphanums + "_")
        power = (name + Optional(Suppress("^") + Word(nums))).set_parse_action(self._push_power)
        self.bnf = infix_notation(
            rational | power,
            [
                (Literal("-"), 1, OpAssoc.RIGHT, self._negate),
                (Literal("*"), 2, OpAssoc.LEFT, self._multiply),
                (one_of("+ -"), 2, OpAssoc.LEFT, self._add),
            ],
        )

    def _push_number(self, s, loc, toks):
        num, _, den = toks[0].partition("/")
        if den and int(den) == 0:
            raise ParseFatalException(s, loc, "division by zero")
        return GradedPoly.constant(self.chart, Fraction(int(num), int(den or 1)))

    def _push_power(self, s, loc, toks):
        label = toks[0]
        if label not in self.chart.names:
            raise ParseFatalException(s, loc, f"unknown coordinate {label!r}")
        base = GradedPoly.coordinate(self.chart, label)
        if len(toks) == 1:
            return base
        if self.chart.parity(label):
            raise ParseFatalException(s, loc, f"exponent on odd coordinate {label!r}")
        exponent = int(toks[1])
        if exponent > MAX_EXPONENT:
            raise ParseFatalException(
                s, loc, f"exponent {exponent} on {label!r} exceeds {MAX_EXPONENT}"
            )
        result = GradedPoly.constant(self.chart, 1)
        for _ in range(exponent):
            result = result * base
        return result

    def _negate(self, s, loc, toks):
        return -toks[0][1]

    def _multiply(self, s, loc, toks):
        items = toks[0]
        result = items[0]
        for i in range(2, len(items), 2):
            result = result * items[i]
        return result

    def _add(self, s, loc, toks):
        items = toks[0]
        result = items[0]
        for i in range(1, len(items), 2):
            result = result + items[i + 1] if items[i] == "+" else result - items[i + 1]
        return result

    def parse(self, text: str) -> GradedPoly:
        try:
            result = self.bnf.parse_string(text, parse_all=True)
        except ParseBaseException as err:
            raise ExpressionSyntaxError(err.msg, err.col) from None
        return result[0]


@lru_cache(maxsize=None)
def _parser_for(chart: ChartSignature) -> ExpressionParser:
    return ExpressionParser(chart)


def parse_expression(chart: ChartSignature, text: str) -> GradedPoly:
    """Parse text into a polynomial on chart.

    Raises:
        ExpressionSyntaxError: with the 1-based column of the problem.
    """
    return _parser_for(chart).parse(text)


def _sort_key(mono: Monomial):
    return (mono.degree, tuple(-e for e in mono.exponents), mono.odd_indices)


def _format_monomial(chart: ChartSignature, mono: Monomial) -> list[str]:
    factors = []
    for name, power in zip(chart.even, mono.exponents):
        if power == 1:
            factors.append(name)
        elif power:
            factors.append(f"{name}^{power}")
    factors.extend(chart.odd[i] for i in mono.odd_indices)
    return factors


def format_poly(f: GradedPoly) -> str:
    """Canonical text of f: terms by ascending degree, unit coefficients elided."""
    if f.is_zero:
        return "0"
    pieces = []
    for mono in sorted(f.terms, key=_sort_key):
        coeff = f.terms[mono]
        factors = _format_monomial(f.chart, mono)
        magnitude = abs(coeff)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        if not pieces:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f"{'-' if coeff < 0 else '+'} {body}")
    return " ".join(pieces)
