"""Scenario configuration: schema, defaults, parsing, and unit conversions.

All SINR arithmetic elsewhere in the package is linear; dB / dBm values live
only in this module and are converted once at the boundary.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace

import yaml


class ConfigError(ValueError):
    """Malformed or out-of-range configuration input."""


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    if x <= 0:
        raise ValueError("dB undefined for non-positive value")
    import math

    return 10.0 * math.log10(x)


def dbm_to_watts(x_dbm: float) -> float:
    return 10.0 ** ((x_dbm - 30.0) / 10.0)


@dataclass(frozen=True)
class ScenarioConfig:
    """Full experiment description; unspecified fields take the defaults below."""

    i_clusters: int = 10
    l_elements: int = 32
    t_slots: int = 100
    mc_runs: int = 500
    gamma_th_db: float = 45.0
    p_max_dbm: float = 20.0
    sigma2_dbm: float = -110.0
    gamma0_db: float = -30.0
    rician_k: float = 2.0
    d_s: float = 10.0
    d_w: float = 10.0
    d_rb: float = 150.0
    h_b: float = 10.0
    h_r: float = 10.0
    eta_rb: float = 2.2
    eta_wr: float = 2.2
    eta_sb: float = 3.5
    eta_wb: float = 3.5
    gr_samples: int = 100
    sdr_tolerance: float = 1e-6
    seed: int = 1
    los_mode: str = "steering"  # or "ones"

    def __post_init__(self):
        for name in ("i_clusters", "l_elements", "t_slots", "mc_runs", "gr_samples"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ConfigError(f"{name} must be an integer >= 1, got {v!r}")
        for name in ("d_s", "d_w", "d_rb", "h_b", "h_r"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be > 0")
        for name in ("eta_rb", "eta_wr", "eta_sb", "eta_wb"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be a positive exponent")
        if self.rician_k < 0:
            raise ConfigError("rician_k must be >= 0")
        if self.sdr_tolerance <= 0:
            raise ConfigError("sdr_tolerance must be > 0")
        if self.los_mode not in ("steering", "ones"):
            raise ConfigError(f"los_mode must be 'steering' or 'ones', got {self.los_mode!r}")
        for name in ("gamma_th_db", "p_max_dbm", "sigma2_dbm", "gamma0_db"):
            v = float(getattr(self, name))
            if not (v == v and abs(v) != float("inf")):
                raise ConfigError(f"{name} must be finite")

    # linear-scale views
    @property
    def gamma_th(self) -> float:
        return db_to_linear(self.gamma_th_db)

    @property
    def p_max_w(self) -> float:
        return dbm_to_watts(self.p_max_dbm)

    @property
    def sigma2_w(self) -> float:
        return dbm_to_watts(self.sigma2_dbm)

    @property
    def gamma0(self) -> float:
        return db_to_linear(self.gamma0_db)

    def with_overrides(self, **kwargs) -> "ScenarioConfig":
        return replace(self, **kwargs)


_FIELD_NAMES = {f.name for f in fields(ScenarioConfig)}
_INT_FIELDS = {"i_clusters", "l_elements", "t_slots", "mc_runs", "gr_samples", "seed"}


def parse_config(source) -> ScenarioConfig:
    """Parse a flat YAML mapping from a path, a Path-like, or literal text.

    An empty document yields the full default configuration.
    """
    if hasattr(source, "read_text"):
        text = source.read_text()
    elif isinstance(source, str) and os.path.exists(source) and "\n" not in source:
        with open(source) as fh:
            text = fh.read()
    else:
        text = source
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid config document: {exc}") from exc
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ConfigError(f"config must be a flat key/value mapping, got {type(doc).__name__}")
    unknown = set(doc) - _FIELD_NAMES
    if unknown:
        raise ConfigError(f"unknown config field(s): {', '.join(sorted(unknown))}")
    kwargs = {}
    for key, value in doc.items():
        if key in _INT_FIELDS:
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"field {key} must be an integer, got {value!r}")
            kwargs[key] = value
        elif key == "los_mode":
            kwargs[key] = value
        else:
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"field {key} must be numeric, got {value!r}")
            kwargs[key] = float(value)
    return ScenarioConfig(**kwargs)


def serialize_config(config: ScenarioConfig) -> str:
    """Flat YAML text such that parse_config(serialize_config(c)) == c."""
    doc = {f.name: getattr(config, f.name) for f in fields(ScenarioConfig)}
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=False)


def config_hash(config: ScenarioConfig) -> str:
    """Short stable fingerprint of a configuration, used in result metadata."""
    import hashlib

    return hashlib.sha256(serialize_config(config).encode()).hexdigest()[:12]
