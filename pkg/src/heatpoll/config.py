"""One TOML file with a section per module; every key has a default.

Unknown sections or keys are rejected so that typos fail loudly, and every
error names the offending ``section.key``.
"""

from __future__ import annotations

import copy
import datetime as dt
import os
import sys
from dataclasses import dataclass
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from heatpoll.decision.types import DEFAULT_REFERENCE, TemperatureReference
from heatpoll.engine import SimConfig
from heatpoll.network import BuildConfig, default_name_pool, read_name_pool

CONFIG_ENV = "HEATPOLL_CONFIG"


class ConfigError(ValueError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


DEFAULTS: dict = {
    "network": {
        "seed": 1940,
        "positive_trait_pct": 0.5,
        "max_family_members": 4,
        "name_pool": "",
        "age_range_rep": [25, 75],
        "age_range_member": [10, 80],
        "initial_closeness": "base",
    },
    "weather": {
        "path": "",
        "start_date": "2023-02-15",
        "days": 30,
        "time_column": "time(UTC)",
        "temp_column": "temp_air",
        "ignore_year": False,
    },
    "provider": {
        "kind": "mock",
        "base_url": "http://localhost:8000/v1",
        "model": "mistral-7b-instruct",
        "temperature": 0.7,
        "timeout_s": 60.0,
        "max_retries": 3,
        "trait_bias": False,
    },
    "simulation": {
        "days": 30,
        "cost_constant": 1.0,
        "viable_bounds": [10, 32],
        "max_workers": 1,
    },
    "reference": {k: list(v) for k, v in DEFAULT_REFERENCE.to_dict().items()},
    "run": {"root": "runs"},
    "analysis": {"model_spec": ""},
}

_TYPES = {
    "network": {
        "seed": int,
        "positive_trait_pct": (int, float),
        "max_family_members": int,
        "name_pool": str,
        "age_range_rep": list,
        "age_range_member": list,
        "initial_closeness": (str, int),
    },
    "weather": {
        "path": str,
        "start_date": (str, dt.date),
        "days": int,
        "time_column": str,
        "temp_column": str,
        "ignore_year": bool,
    },
    "provider": {
        "kind": str,
        "base_url": str,
        "model": str,
        "temperature": (int, float),
        "timeout_s": (int, float),
        "max_retries": int,
        "trait_bias": bool,
    },
    "simulation": {"days": int, "cost_constant": (int, float), "viable_bounds": list, "max_workers": int},
    "reference": {k: list for k in DEFAULTS["reference"]},
    "run": {"root": str},
    "analysis": {"model_spec": str},
}


def _merge(raw: dict) -> dict:
    out = copy.deepcopy(DEFAULTS)
    for section, body in raw.items():
        if section not in DEFAULTS:
            raise ConfigError(section, "unknown section")
        if not isinstance(body, dict):
            raise ConfigError(section, "must be a table")
        for key, value in body.items():
            name = f"{section}.{key}"
            if key not in DEFAULTS[section]:
                raise ConfigError(name, "unknown key")
            want = _TYPES[section][key]
            # bool is an int subclass; only accept it where bool is asked for
            if isinstance(value, bool) and want is not bool:
                raise ConfigError(name, f"expected {want}, got a boolean")
            if not isinstance(value, want):
                raise ConfigError(name, f"wrong type {type(value).__name__}")
            out[section][key] = value
    return out


def _parse_override(item: str) -> tuple[str, str, object]:
    if "=" not in item:
        raise ConfigError(item, "override must look like section.key=value")
    lhs, rhs = item.split("=", 1)
    if lhs.count(".") != 1:
        raise ConfigError(lhs, "override key must be section.key")
    section, key = lhs.strip().split(".")
    try:
        value = tomllib.loads(f"v = {rhs}")["v"]
    except tomllib.TOMLDecodeError:
        value = rhs
    return section, key, value


@dataclass
class AppConfig:
    raw: dict
    source: str | None = None

    def snapshot(self) -> dict:
        """Fully resolved key set, JSON-serializable."""
        snap = copy.deepcopy(self.raw)
        snap["weather"]["start_date"] = str(snap["weather"]["start_date"])
        return snap

    # typed views ------------------------------------------------------------

    def build_config(self) -> BuildConfig:
        n = self.raw["network"]
        pool = read_name_pool(n["name_pool"]) if n["name_pool"] else default_name_pool()
        try:
            return BuildConfig(
                seed=n["seed"],
                positive_trait_pct=float(n["positive_trait_pct"]),
                max_family_members=n["max_family_members"],
                name_pool=pool,
                age_range_rep=_pair("network.age_range_rep", n["age_range_rep"]),
                age_range_member=_pair("network.age_range_member", n["age_range_member"]),
                initial_closeness=n["initial_closeness"],
            )
        except ValueError as exc:
            raise _keyed("network", exc) from exc

    def reference(self) -> TemperatureReference:
        try:
            return TemperatureReference.from_mapping(self.raw["reference"])
        except (ValueError, TypeError) as exc:
            raise ConfigError("reference", str(exc)) from exc

    def sim_config(self) -> SimConfig:
        s = self.raw["simulation"]
        try:
            return SimConfig(
                days=s["days"],
                cost_constant=float(s["cost_constant"]),
                viable_bounds=_pair("simulation.viable_bounds", s["viable_bounds"]),
                reference=self.reference(),
                seed=self.raw["network"]["seed"],
                max_workers=s["max_workers"],
                positive_trait_pct=float(self.raw["network"]["positive_trait_pct"]),
            )
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise _keyed("simulation", exc) from exc

    def weather_args(self) -> dict:
        w = self.raw["weather"]
        start = w["start_date"]
        if isinstance(start, str):
            try:
                start = dt.date.fromisoformat(start)
            except ValueError as exc:
                raise ConfigError("weather.start_date", f"not an ISO date: {start!r}") from exc
        if w["days"] < self.raw["simulation"]["days"]:
            raise ConfigError("weather.days", "fewer weather days than simulation.days")
        return {
            "path": w["path"] or None,
            "start_date": start,
            "n_days": w["days"],
            "time_column": w["time_column"],
            "temp_column": w["temp_column"],
            "ignore_year": w["ignore_year"],
        }

    def provider(self):
        from heatpoll.decision import LLMProvider, MockProvider

        p = self.raw["provider"]
        bounds = _pair("simulation.viable_bounds", self.raw["simulation"]["viable_bounds"])
        if p["kind"] == "mock":
            return MockProvider(bounds, trait_bias=p["trait_bias"])
        if p["kind"] == "llm":
            if p["max_retries"] < 1:
                raise ConfigError("provider.max_retries", "must be >= 1")
            if p["timeout_s"] <= 0:
                raise ConfigError("provider.timeout_s", "must be positive")
            return LLMProvider(
                base_url=p["base_url"],
                model=p["model"],
                temperature=float(p["temperature"]),
                timeout_s=float(p["timeout_s"]),
                max_retries=p["max_retries"],
                viable_bounds=bounds,
                fallback=MockProvider(bounds, trait_bias=p["trait_bias"]),
            )
        raise ConfigError("provider.kind", f"must be 'mock' or 'llm', got {p['kind']!r}")

    def validate(self) -> None:
        """Touch every typed view except those that read files."""
        n = self.raw["network"]
        if not 0.0 <= float(n["positive_trait_pct"]) <= 1.0:
            raise ConfigError("network.positive_trait_pct", "must lie in [0, 1]")
        self.sim_config()
        self.weather_args()
        self.provider()


def _pair(key: str, value) -> tuple[int, int]:
    if not isinstance(value, (list, tuple)) or len(value) != 2 or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in value
    ):
        raise ConfigError(key, "must be a two-element integer list [min, max]")
    return int(value[0]), int(value[1])


def _keyed(section: str, exc: ValueError) -> ConfigError:
    msg = str(exc)
    key, _, rest = msg.partition(":")
    if rest and " " not in key:
        return ConfigError(f"{section}.{key}", rest.strip())
    return ConfigError(section, msg)


def resolve_path(path: str | os.PathLike | None) -> Path | None:
    if path:
        return Path(path)
    env = os.environ.get(CONFIG_ENV)
    return Path(env) if env else None


def load_config(path=None, overrides: list[str] | tuple = ()) -> AppConfig:
    """Read ``path`` (or $HEATPOLL_CONFIG, or nothing) and apply ``section.key=value`` overrides.

    A missing file raises OSError; malformed TOML or bad values raise ConfigError.
    """
    p = resolve_path(path)
    raw: dict = {}
    if p is not None:
        text = p.read_text(encoding="utf-8")
        try:
            raw = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(str(p), f"invalid TOML: {exc}") from exc
    for item in overrides:
        section, key, value = _parse_override(item)
        raw.setdefault(section, {})[key] = value
    return AppConfig(_merge(raw), str(p) if p else None)
