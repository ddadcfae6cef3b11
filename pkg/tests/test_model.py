"""Tests for reading and writing model files."""

import pytest

from oddcon.algebra.expression import parse_expression
from oddcon.catalog.entries import LISTED, canonical_rnn, lookup
from oddcon.cli.model import model_from_entry, parse_model, serialize_model
from oddcon.errors import ModelError
from oddcon.geometry.fields import VectorField
from tests.strategies import R11

CANONICAL = """\
# canonical odd connection on R^{1|1}
chart even t
chart odd theta
rho t theta = 1
rho theta t = 1   # swap partners
"""

CORRUPTED = CANONICAL.replace("# canonical odd connection on R^{1|1}\n", "") + (
    "gamma theta t t = theta\n"
)


def _parse_error(text: str) -> ModelError:
    with pytest.raises(ModelError) as info:
        parse_model(text)
    return info.value


class TestParseModel:
    def test_canonical(self):
        model = parse_model(CANONICAL)
        assert model.chart == R11
        assert model.connection() == canonical_rnn(1)[0]
        assert model.metric_tensor() is None
        assert model.parallelisation() is None

    def test_full_model(self):
        text = CANONICAL + (
            "gamma theta t t = t\n"
            "field X odd t = theta\n"
            "field X odd theta = t^2\n"
            "function f even = 1 + t^2\n"
            "frame P even t = 1\n"
            "frame D odd theta = 1\n"
            "frame D odd t = -theta\n"
            "metric t theta = 1\n"
            "metric theta t = 1\n"
            "change shift t = t + 1\n"
            "inverse shift t = t - 1\n"
        )
        model = parse_model(text)
        t, theta = (parse_expression(R11, name) for name in ("t", "theta"))
        assert model.gamma[("theta", "t", "t")] == t
        assert model.fields["X"] == VectorField(R11, [theta, t * t])
        assert model.fields["X"].parity == 1
        assert model.functions["f"] == parse_expression(R11, "1 + t^2")
        assert model.parallelisation().labels == ("P", "D")
        assert model.metric_tensor().parity == 1
        assert set(model.coordinate_changes()) == {"shift"}

    def test_comments_and_blank_lines(self):
        text = "\n# header\n\n" + CANONICAL + "   # trailing\n"
        assert parse_model(text).connection() == canonical_rnn(1)[0]

    def test_omitted_change_coordinates_stay_fixed(self):
        text = CANONICAL + "change shift t = t + 1\ninverse shift t = t - 1\n"
        change = parse_model(text).coordinate_changes()["shift"]
        assert change.forward[1] == parse_expression(R11, "theta")
        assert change.inverse[1] == parse_expression(R11, "theta")

    def test_field_parity_inferred(self):
        model = parse_model(CANONICAL + "field Y t = t\n")
        assert model.fields["Y"] == parse_expression(R11, "t") * VectorField.basis(R11, "t")
        assert model.fields["Y"].homogeneous_parity() == 0


class TestModelErrors:
    def test_parity_violation_reports_column(self):
        err = _parse_error(CORRUPTED)
        assert str(err) == "line 5, column 19: gamma theta t t must have parity 0, got theta"
        assert (err.line, err.column) == (5, 19)

    def test_unknown_kind(self):
        err = _parse_error(CANONICAL + "torsion t t = 1\n")
        assert err.line == 6
        assert "unknown entry kind" in err.message

    def test_duplicate_entry(self):
        err = _parse_error(CANONICAL + "rho t theta = 1\n")
        assert err.line == 6
        assert "first on line 4" in err.message

    def test_chart_must_come_first(self):
        err = _parse_error("rho t theta = 1\nchart even t\nchart odd theta\n")
        assert err.line == 1

    def test_chart_declared_twice(self):
        err = _parse_error(CANONICAL + "chart even s\n")
        assert err.line == 6

    def test_unknown_coordinate(self):
        err = _parse_error(CANONICAL + "rho t x = 1\n")
        assert "unknown coordinate 'x'" in err.message
        assert (err.line, err.column) == (6, 7)

    def test_unknown_coordinate_in_middle_slot(self):
        err = _parse_error(CANONICAL + "gamma  theta y t = 0\n")
        assert (err.line, err.column) == (6, 14)
        err = _parse_error(CANONICAL + "field X odd   z = 1\n")
        assert (err.line, err.column) == (6, 15)

    def test_mixed_parity_function(self):
        err = _parse_error(CANONICAL + "function f even = 1 + t*theta\n")
        assert err.line == 6
        assert "must have parity 0" in err.message

    def test_change_without_inverse(self):
        err = _parse_error(CANONICAL + "change shift t = t + 1\n")
        assert err.line == 6
        assert "no inverse" in err.message

    def test_wrong_inverse(self):
        err = _parse_error(CANONICAL + "change shift t = t + 1\ninverse shift t = t + 1\n")
        assert "invalid change" in err.message

    def test_bad_expression(self):
        err = _parse_error(CANONICAL + "gamma theta t t = t +\n")
        assert err.line == 6
        assert err.column is not None

    def test_missing_value(self):
        assert _parse_error(CANONICAL + "gamma theta t t\n").line == 6

    def test_missing_chart(self):
        assert "chart" in _parse_error("# nothing here\n").message


class TestSerializeModel:
    @pytest.mark.parametrize("name", ["canonical-r11", "susy-r11", "weitzenbock:sheared-r22"])
    def test_parses_back(self, name):
        entry = lookup(name)
        model = parse_model(serialize_model(model_from_entry(entry)))
        assert model.connection() == entry.connection
        assert model.parallelisation().frame == entry.frame.frame
        assert model.metric_tensor() == entry.metric

    def test_text_is_stable(self):
        model = model_from_entry(lookup("susy-r11"))
        text = serialize_model(model)
        assert serialize_model(parse_model(text)) == text

    def test_listed_entries_serialize(self):
        for name in LISTED:
            assert serialize_model(model_from_entry(lookup(name))).startswith("chart even")
