"""
Tests for configuration layering: defaults, JSON file, environment variable
and command-line overrides.
"""

import json
from fractions import Fraction

import pytest

from hv_freefield.config import RunConfig, load_config_file, parse_binding, parse_bindings, resolve_config, suite_names
from hv_freefield.constants import (
    CONFIG_ENV_VAR, DEFAULT_DEGREE_BOUND, Indexing, OutputFormat, Param, SuiteName,
)
from hv_freefield.errors import ConfigurationError
from hv_freefield.scalars import param, rational


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "hv.json"
    path.write_text(json.dumps({
        "bindings": {"cL": "26", "lambda": "3/2"},
        "degree_bound": 3,
        "p_values": [1],
        "format": "json",
        "indexing": "weight",
    }), encoding="utf-8")
    return path


class TestBindings:

    def test_parse_binding(self):
        assert parse_binding("cL=26") == (Param.CL, Fraction(26))
        assert parse_binding(" lam = -3/2 ") == (Param.LAMBDA, Fraction(-3, 2))

    def test_later_binding_wins(self):
        bindings = parse_bindings(["cL=1", "cL=2"])
        assert bindings == {Param.CL: Fraction(2)}

    @pytest.mark.parametrize("text", ["cL", "foo=1", "cL=x"])
    def test_bad_binding(self, text):
        with pytest.raises(ConfigurationError):
            parse_binding(text)


class TestResolution:
    """Defaults < file < overrides."""

    def test_defaults(self):
        config = resolve_config(env={})
        assert config.degree_bound == DEFAULT_DEGREE_BOUND
        assert config.output_format is OutputFormat.TEXT
        assert config.bindings == {}

    def test_file_from_environment(self, config_file):
        config = resolve_config(env={CONFIG_ENV_VAR: str(config_file)})
        assert config.degree_bound == 3
        assert config.p_values == (1,)
        assert config.output_format is OutputFormat.JSON
        assert config.indexing is Indexing.WEIGHT
        assert config.bindings[Param.CL] == Fraction(26)

    def test_overrides_beat_file(self, config_file):
        """Flags override file values; unset flags (None) leave them alone."""
        config = resolve_config(
            str(config_file), env={},
            overrides={"degree_bound": 5, "mode_bound": None, "bindings": {Param.CL: Fraction(1)}},
        )
        assert config.degree_bound == 5
        assert config.bindings[Param.CL] == Fraction(1)
        assert config.bindings[Param.LAMBDA] == Fraction(3, 2)

    def test_bound_lambda_scalar(self, config_file):
        config = load_config_file(config_file)
        assert config.lam_scalar() == rational(3, 2)
        assert config.r_scalar() == param(Param.R)

    def test_to_dict(self, config_file):
        data = resolve_config(str(config_file), env={}).to_dict()
        assert data["bindings"] == {"cL": "26", "lambda": "3/2"}
        assert data["format"] == "json"


class TestValidation:

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"degree": 3}', encoding="utf-8")
        with pytest.raises(ConfigurationError) as exc_info:
            load_config_file(path)
        assert "degree" in str(exc_info.value)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_config_file(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            load_config_file(path)

    @pytest.mark.parametrize("kwargs", [
        {"degree_bound": 0},
        {"mode_bound": -1},
        {"p_values": ()},
        {"lam": "0"},
        {"bindings": {Param.LAMBDA: Fraction(0)}},
        {"r": "r $"},
    ])
    def test_invalid_settings(self, kwargs):
        with pytest.raises(ConfigurationError):
            RunConfig(**kwargs).validate()

    def test_bad_format_value(self, tmp_path):
        path = tmp_path / "fmt.json"
        path.write_text('{"format": "xml"}', encoding="utf-8")
        with pytest.raises(ConfigurationError) as exc_info:
            load_config_file(path)
        assert "text" in str(exc_info.value)


class TestSuiteNames:

    def test_known_names(self):
        assert suite_names(["calQ", "bjmn"]) == (SuiteName.CALQ, SuiteName.BJMN)

    def test_unknown_name(self):
        with pytest.raises(ConfigurationError):
            suite_names(["nope"])
