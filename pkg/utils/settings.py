# utils/settings.py
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

from dotenv import dotenv_values, load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from algebra.errors import ConfigurationError

load_dotenv()

logger = logging.getLogger(__name__)

ENV_PREFIX = "CARATHEODORY_"
ARTIFACT_VERSION = "0.1.0"
SCHEMA_VERSION = 1

DEFAULT_GROUPS = ["circle", "complex-mul", "matrix-add:2", "pos-real-mul", "real-add"]
DEFAULT_FUNCTIONS = ["const", "cube-circle", "identity", "square-matrix"]
DEFAULT_RADII = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6]


class Tolerances(BaseModel):
    """
    Numerical tolerances; every report records the one it was judged against.

    `fp` is one slack shared by every floating-point comparison. Its 1e-9
    default is looser than what the exact identities reach (the sup-metric
    triangle inequality holds to 1e-12, the Hom group laws to 1e-10 relative).
    `--tolerance fp=...` holds a run to a tighter figure.
    """

    fp: float = Field(1e-9, ge=0, description="Floating-point slack, relative to the magnitudes involved.")
    hom: float = Field(1e-9, ge=0, description="Homomorphism-law residual, relative.")
    fact: float = Field(1e-10, ge=0, description="Factorization residual, absolute part.")
    fact_rel: float = Field(1e-9, ge=0, description="Factorization residual, relative to d(f(x), e).")
    root: float = Field(1e-10, ge=0, description="n-th root round trip, relative.")
    limit: float = Field(1e-3, gt=0, description="Threshold for limits read off at the smallest radius.")
    root_limit: float = Field(1e-2, gt=0, description="Threshold for d(x^(1/n), e) at the largest n.")

    def factorization_bound(self, magnitude: float) -> float:
        return self.fact + self.fact_rel * magnitude

    def with_overrides(self, overrides: Mapping[str, float]) -> "Tolerances":
        unknown = sorted(set(overrides) - set(type(self).model_fields))
        if unknown:
            raise ConfigurationError(f"unknown tolerance name(s): {', '.join(unknown)}")
        try:
            return type(self).model_validate({**self.model_dump(), **overrides})
        except ValidationError as e:
            raise ConfigurationError(f"invalid tolerance override: {e}") from e


class SuiteConfig(BaseModel):
    """Everything a suite run depends on; a fixed config yields a byte-identical comparison section."""

    suite: str = "all"
    groups: List[str] = Field(default_factory=lambda: list(DEFAULT_GROUPS))
    functions: List[str] = Field(default_factory=lambda: list(DEFAULT_FUNCTIONS))
    seed: int = Field(0, ge=0, lt=2**64)
    samples: int = Field(10_000, ge=1, description="Samples for the axiom checks.")
    derivative_samples: int = Field(1_000, ge=1, description="Samples for factorization checks.")
    probe_count: int = Field(64, ge=1)
    probe_scale_min: float = Field(1e-2, gt=0)
    probe_scale_max: float = Field(1e2, gt=0)
    radii: List[float] = Field(default_factory=lambda: list(DEFAULT_RADII))
    uniqueness_n_max: int = Field(2**20, ge=2)
    root_n_max: int = Field(1024, ge=2)
    workers: int = Field(4, ge=1)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    out: Optional[str] = None

    @field_validator("radii")
    @classmethod
    def _positive_radii(cls, radii: List[float]) -> List[float]:
        if not radii or any(r <= 0 for r in radii):
            raise ValueError("radii must be a non-empty list of positive numbers")
        return sorted(radii, reverse=True)

    @model_validator(mode="after")
    def _probe_range(self) -> "SuiteConfig":
        if self.probe_scale_min > self.probe_scale_max:
            raise ValueError("probe_scale_min must not exceed probe_scale_max")
        return self

    def comparison_echo(self) -> Dict[str, Any]:
        """Config as echoed into the report (the output path does not affect results)."""
        return self.model_dump(mode="json", exclude={"out"})


_LIST_KEYS = {"groups", "functions", "radii"}


def _normalize(raw: Mapping[str, Any]) -> Dict[str, Any]:
    """Flattens KEY=VALUE style input (prefixed, upper-case, tolerance_<name>) to model fields."""
    values: Dict[str, Any] = {}
    tolerances: Dict[str, Any] = {}
    for key, value in raw.items():
        if value is None:
            continue
        name = key.lower()
        if name.startswith(ENV_PREFIX.lower()):
            name = name[len(ENV_PREFIX):]
        if name == "log_level":
            continue
        if name.startswith("tolerance_"):
            tolerances[name[len("tolerance_"):]] = value
            continue
        if name == "tolerances" and isinstance(value, Mapping):
            tolerances.update(value)
            continue
        if name in _LIST_KEYS and isinstance(value, str):
            value = [item.strip() for item in value.split(",") if item.strip()]
        values[name] = value
    if tolerances:
        values["tolerances"] = tolerances
    return values


def _read_config_file(path: Path) -> Dict[str, Any]:
    if not path.exists():
        raise ConfigurationError(f"config file not found: {path}")
    if path.suffix.lower() == ".json":
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"config file {path} is not valid JSON: {e}") from e
        if not isinstance(data, dict):
            raise ConfigurationError(f"config file {path} must hold a JSON object")
        return data
    return dict(dotenv_values(path))


def _from_environment() -> Dict[str, Any]:
    return {k: v for k, v in os.environ.items() if k.startswith(ENV_PREFIX)}


def parse_tolerance_flags(flags: List[str]) -> Dict[str, float]:
    """`name=value` strings from repeated --tolerance flags."""
    parsed: Dict[str, float] = {}
    for flag in flags:
        name, sep, value = flag.partition("=")
        if not sep or not name.strip():
            raise ConfigurationError(f"tolerance override must look like name=value, got '{flag}'")
        try:
            parsed[name.strip()] = float(value)
        except ValueError as e:
            raise ConfigurationError(f"tolerance '{name}' is not a number: '{value}'") from e
    return parsed


def _merge(base: Dict[str, Any], layer: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in layer.items():
        if key == "tolerances" and isinstance(merged.get(key), dict):
            merged[key] = {**merged[key], **value}
        else:
            merged[key] = value
    return merged


def load_config(
    config_path: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
    tolerance_overrides: Optional[Dict[str, float]] = None,
    use_environment: bool = True,
) -> SuiteConfig:
    """
    Builds a SuiteConfig from, in rising precedence:
    - model defaults
    - CARATHEODORY_* environment variables (a .env file is honoured)
    - the config file (JSON, or KEY=VALUE)
    - explicit overrides (CLI flags), with --tolerance values applied last
    """
    layers: List[Tuple[str, Dict[str, Any]]] = []
    if use_environment:
        layers.append(("environment", _normalize(_from_environment())))
    if config_path:
        layers.append((config_path, _normalize(_read_config_file(Path(config_path)))))
    layers.append(("flags", {k: v for k, v in (overrides or {}).items() if v is not None}))

    merged: Dict[str, Any] = {}
    for source, layer in layers:
        logger.debug(f"config layer '{source}': {sorted(layer)}")
        merged = _merge(merged, layer)

    unknown_tolerances = sorted(set(merged.get("tolerances", {})) - set(Tolerances.model_fields))
    if unknown_tolerances:
        raise ConfigurationError(f"unknown tolerance name(s): {', '.join(unknown_tolerances)}")
    unknown_keys = sorted(set(merged) - set(SuiteConfig.model_fields))
    if unknown_keys:
        raise ConfigurationError(f"unknown config key(s): {', '.join(unknown_keys)}")

    try:
        config = SuiteConfig.model_validate(merged)
    except ValidationError as e:
        raise ConfigurationError(f"invalid configuration: {e}") from e
    if tolerance_overrides:
        config = config.model_copy(update={"tolerances": config.tolerances.with_overrides(tolerance_overrides)})
    return config


def log_level_from_environment(default: str = "WARNING") -> str:
    return os.getenv(f"{ENV_PREFIX}LOG_LEVEL", default).upper()
