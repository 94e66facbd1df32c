"""
Run configuration: built-in defaults, then a JSON file (HV_FREEFIELD_CONFIG or
--config), then command-line flags.

JSON file keys mirror RunConfig fields:
    {"bindings": {"cL": "26"}, "degree_bound": 4, "mode_bound": 3,
     "p_values": [1, 2], "format": "json", "indexing": "weight"}
"""

import json
import logging
import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Optional, Tuple

from hv_freefield.constants import (
    CONFIG_ENV_VAR, DEFAULT_DEGREE_BOUND, DEFAULT_MODE_BOUND, DEFAULT_P_VALUES, Indexing, OutputFormat, Param,
    SuiteName,
)
from hv_freefield.errors import ConfigurationError, GrammarError
from hv_freefield.scalars import from_fraction, parse_rational, parse_scalar, Scalar

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    """Validated settings shared by every CLI command."""
    bindings: Dict[Param, Fraction] = field(default_factory=dict)
    degree_bound: int = DEFAULT_DEGREE_BOUND
    mode_bound: int = DEFAULT_MODE_BOUND
    p_values: Tuple[int, ...] = DEFAULT_P_VALUES
    r: str = "r"
    lam: str = "lambda"
    output_format: OutputFormat = OutputFormat.TEXT
    indexing: Indexing = Indexing.ORDINARY
    deformed: bool = False

    def validate(self) -> 'RunConfig':
        """
        Raises:
            ConfigurationError: non-positive bounds, empty p list, zero lambda
        """
        if self.degree_bound < 1:
            raise ConfigurationError(f"degree bound must be positive, got {self.degree_bound}")
        if self.mode_bound < 1:
            raise ConfigurationError(f"mode bound must be positive, got {self.mode_bound}")
        if not self.p_values:
            raise ConfigurationError("at least one p value is required")
        if self.bindings.get(Param.LAMBDA) == 0:
            raise ConfigurationError("lambda must be nonzero")
        try:
            lam = self.lam_scalar()
        except GrammarError as e:
            raise ConfigurationError(f"invalid lambda: {e}") from e
        if not lam:
            raise ConfigurationError("lambda must be nonzero")
        try:
            self.r_scalar()
        except GrammarError as e:
            raise ConfigurationError(f"invalid r: {e}") from e
        return self

    def r_scalar(self) -> Scalar:
        return self._bound_scalar(self.r)

    def lam_scalar(self) -> Scalar:
        return self._bound_scalar(self.lam)

    def _bound_scalar(self, text: str) -> Scalar:
        from hv_freefield.scalars import substitute
        return substitute(parse_scalar(text), self.bindings)

    def is_bound(self, p: Param) -> bool:
        return p in self.bindings

    def binding(self, p: Param) -> Optional[Scalar]:
        value = self.bindings.get(p)
        return None if value is None else from_fraction(value)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "bindings": {str(p): str(v) for p, v in self.bindings.items()},
            "degree_bound": self.degree_bound,
            "mode_bound": self.mode_bound,
            "p_values": list(self.p_values),
            "r": self.r,
            "lam": self.lam,
            "format": str(self.output_format),
            "indexing": str(self.indexing),
            "deformed": self.deformed,
        }


def parse_binding(text: str) -> Tuple[Param, Fraction]:
    """`cL=26`, `lambda=3/2` -> (Param, Fraction)."""
    if "=" not in text:
        raise ConfigurationError(f"binding must look like NAME=RATIONAL, got {text!r}")
    name, value = (part.strip() for part in text.split("=", 1))
    try:
        param = Param.from_name(name)
    except KeyError:
        raise ConfigurationError(f"unknown parameter {name!r} in binding {text!r}") from None
    try:
        return param, parse_rational(value)
    except GrammarError as e:
        raise ConfigurationError(f"binding {text!r}: {e.reason}") from e


def parse_bindings(items: Iterable[str]) -> Dict[Param, Fraction]:
    bindings: Dict[Param, Fraction] = {}
    for item in items:
        param, value = parse_binding(item)
        bindings[param] = value
    return bindings


def _from_mapping(data: Mapping[str, Any], base: RunConfig) -> RunConfig:
    known = {"bindings", "degree_bound", "mode_bound", "p_values", "r", "lam", "format", "indexing", "deformed"}
    unknown = set(data) - known
    if unknown:
        raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
    updates: Dict[str, Any] = {}
    if "bindings" in data:
        bindings = dict(base.bindings)
        bindings.update(parse_bindings(f"{k}={v}" for k, v in data["bindings"].items()))
        updates["bindings"] = bindings
    for key in ("degree_bound", "mode_bound"):
        if key in data:
            if not isinstance(data[key], int):
                raise ConfigurationError(f"{key} must be an integer")
            updates[key] = data[key]
    if "p_values" in data:
        updates["p_values"] = tuple(int(p) for p in data["p_values"])
    for key in ("r", "lam"):
        if key in data:
            updates[key] = str(data[key])
    if "format" in data:
        updates["output_format"] = _enum(OutputFormat, data["format"])
    if "indexing" in data:
        updates["indexing"] = _enum(Indexing, data["indexing"])
    if "deformed" in data:
        updates["deformed"] = bool(data["deformed"])
    return replace(base, **updates)


def _enum(kind, value: str):
    try:
        return kind(value)
    except ValueError:
        choices = ", ".join(str(k) for k in kind)
        raise ConfigurationError(f"invalid {kind.__name__} {value!r}; expected one of {choices}") from None


def load_config_file(path: Path, base: Optional[RunConfig] = None) -> RunConfig:
    """Overlay a JSON config file on `base` (defaults if omitted)."""
    base = base or RunConfig()
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigurationError(f"config file not found: {path}") from None
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"config file {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"config file {path} must hold a JSON object")
    log.debug(f"[CONFIG] loaded {path}")
    return _from_mapping(data, base)


def resolve_config(config_path: Optional[str] = None, env: Optional[Mapping[str, str]] = None,
                   overrides: Optional[Mapping[str, Any]] = None) -> RunConfig:
    """
    Defaults < config file (explicit path, else $HV_FREEFIELD_CONFIG) < overrides.

    Args:
        config_path: --config value
        env: environment (defaults to os.environ)
        overrides: RunConfig field values from command-line flags; None values are ignored
    """
    env = os.environ if env is None else env
    config = RunConfig()
    path = config_path or env.get(CONFIG_ENV_VAR)
    if path:
        config = load_config_file(Path(path), config)
    if overrides:
        updates = {k: v for k, v in overrides.items() if v is not None}
        if "bindings" in updates:
            merged = dict(config.bindings)
            merged.update(updates["bindings"])
            updates["bindings"] = merged
        config = replace(config, **updates)
    return config.validate()


def suite_names(names: Iterable[str]) -> Tuple[SuiteName, ...]:
    return tuple(_enum(SuiteName, name) for name in names)
