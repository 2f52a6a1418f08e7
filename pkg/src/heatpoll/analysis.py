"""Model specifications and their evaluation against exported run data."""

from __future__ import annotations

import io
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import pandas as pd

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from heatpoll.config import ConfigError
from heatpoll.stats import (
    PanelDataset,
    RegressionResult,
    coefficient_rows,
    cre_fit,
    fe_fit,
    format_result,
    hausman_test,
    ols_fit,
    re_fit,
    trend_slope,
)
from heatpoll.stats.report import stars
from heatpoll.store import export_network_series, export_panel

KINDS = ("trend", "ols", "fe", "re", "cre")
DATASETS = ("network", "panel")
ENTITY_COLUMN = "_entity"


class AbsentColumn(ConfigError):
    def __init__(self, model: str, column: str):
        super().__init__(f"model.{model}", f"column {column!r} is not in the data")
        self.column = column


@dataclass
class ModelSpec:
    name: str
    kind: str
    data: str = "panel"
    response: str = ""
    regressors: list[str] = field(default_factory=list)
    time_varying: list[str] = field(default_factory=list)
    time_invariant: list[str] = field(default_factory=list)
    entity: list[str] = field(default_factory=lambda: ["run_id", "agent_id"])
    time: str = "day_index"
    metrics: list[str] = field(default_factory=list)
    by: str = ""
    runs: list[str] = field(default_factory=list)
    max_day: int | None = None
    hausman: bool = False

    def __post_init__(self) -> None:
        key = f"model.{self.name}"
        if self.kind not in KINDS:
            raise ConfigError(f"{key}.kind", f"must be one of {KINDS}")
        if self.data not in DATASETS:
            raise ConfigError(f"{key}.data", f"must be one of {DATASETS}")
        if isinstance(self.entity, str):
            self.entity = [self.entity]
        if self.kind == "trend":
            if not self.metrics:
                raise ConfigError(f"{key}.metrics", "a trend model needs at least one metric")
        elif not self.response:
            raise ConfigError(f"{key}.response", "required")
        if self.kind == "ols" and not self.regressors:
            raise ConfigError(f"{key}.regressors", "required for ols")
        if self.kind in ("fe", "re", "cre") and not self.time_varying:
            raise ConfigError(f"{key}.time_varying", "panel models need a time-varying regressor")

    def columns(self) -> list[str]:
        cols = [self.response] if self.response else []
        cols += self.regressors + self.time_varying + self.time_invariant + self.metrics
        if self.kind in ("fe", "re", "cre"):
            cols += self.entity + [self.time]
        if self.kind == "trend":
            cols.append(self.time)
            if self.by:
                cols.append(self.by)
        if self.runs or self.max_day is not None:
            cols.append("run_id" if self.runs else self.time)
        return list(dict.fromkeys(cols))


def default_spec_path():
    return resources.files("heatpoll").joinpath("data/models.toml")


def load_model_specs(path=None) -> list[ModelSpec]:
    text = Path(path).read_text(encoding="utf-8") if path else default_spec_path().read_text(encoding="utf-8")
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(str(path or "models.toml"), f"invalid TOML: {exc}") from exc
    models = raw.get("model")
    if not isinstance(models, list) or not models:
        raise ConfigError("model", "expected at least one [[model]] table")
    specs, seen = [], set()
    known = set(ModelSpec.__dataclass_fields__)
    for i, m in enumerate(models):
        name = m.get("name") or f"model{i}"
        extra = set(m) - known
        if extra:
            raise ConfigError(f"model.{name}", f"unknown keys {sorted(extra)}")
        if name in seen:
            raise ConfigError(f"model.{name}", "duplicate model name")
        seen.add(name)
        specs.append(ModelSpec(**{**m, "name": name}))
    return specs


@dataclass
class AnalysisOutput:
    results: list[tuple[str, RegressionResult]] = field(default_factory=list)
    trends: list[dict] = field(default_factory=list)
    hausman: list[dict] = field(default_factory=list)
    failures: list[tuple[str, str]] = field(default_factory=list)

    def coefficient_rows(self) -> list[dict]:
        rows = []
        for label, res in self.results:
            rows += coefficient_rows(res, label)
        return rows

    def text(self) -> str:
        parts = []
        if self.trends:
            parts.append(_trend_table(self.trends))
        for label, res in self.results:
            parts.append(format_result(res, label))
        for h in self.hausman:
            parts.append(
                f"Hausman {h['model']}: H = {h['statistic']:.4f}, df = {h['df']}, p = {h['p_value']:.4g}"
                + (" (pseudo-inverse)" if h["pinv_used"] else "")
            )
        for name, msg in self.failures:
            parts.append(f"{name}: not estimated ({msg})")
        return "\n\n".join(parts) + "\n"


def _trend_table(trends: list[dict]) -> str:
    groups = list(dict.fromkeys(t["group"] for t in trends))
    metrics = list(dict.fromkeys(t["metric"] for t in trends))
    cell = {(t["metric"], t["group"]): t for t in trends}
    width = max(len(m) for m in metrics)
    head = f"{'Metric':<{width}}" + "".join(f"  {g:>26}" for g in groups)
    lines = ["Trend slopes (OLS on day, classical SEs)", head, "-" * len(head)]
    for m in metrics:
        row = f"{m:<{width}}"
        for g in groups:
            t = cell.get((m, g))
            txt = "" if t is None else f"{t['slope']:.4f} ({t['std_error']:.4f}){stars(t['p_value'])}"
            row += f"  {txt:>26}"
        lines.append(row)
    return "\n".join(lines)


def _frame(text: str) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(text), dtype={"run_id": str})


def load_frames(run_ids: list[str], root) -> dict[str, pd.DataFrame]:
    return {
        "network": _frame(export_network_series(run_ids, root=root)),
        "panel": _frame(export_panel(run_ids, root=root)),
    }


def _subset(spec: ModelSpec, df: pd.DataFrame) -> pd.DataFrame:
    missing = [c for c in spec.columns() if c not in df.columns]
    if missing:
        raise AbsentColumn(spec.name, missing[0])
    if spec.runs:
        df = df[df["run_id"].isin(spec.runs)]
    if spec.max_day is not None:
        df = df[df[spec.time] <= spec.max_day]
    return df


def fit_model(spec: ModelSpec, df: pd.DataFrame, out: AnalysisOutput) -> None:
    df = _subset(spec, df)
    if spec.kind == "trend":
        groups = df.groupby(spec.by, sort=False) if spec.by else [("all", df)]
        for g, sub in groups:
            sub = sub.sort_values(spec.time)
            for m in spec.metrics:
                slope, se, p = trend_slope(sub[spec.time].to_numpy(float), sub[m].to_numpy(float))
                out.trends.append(
                    {"model": spec.name, "group": str(g), "metric": m, "slope": slope, "std_error": se, "p_value": p}
                )
        return
    if spec.kind == "ols":
        res = ols_fit(df[spec.regressors].to_numpy(float), df[spec.response].to_numpy(float), spec.regressors)
        out.results.append((spec.name, res))
        return

    df = df.copy()
    df[ENTITY_COLUMN] = df[spec.entity].astype(str).agg(":".join, axis=1)
    panel = PanelDataset(df, ENTITY_COLUMN, spec.time, spec.response, spec.time_varying, spec.time_invariant)
    fitter = {"fe": fe_fit, "re": re_fit, "cre": cre_fit}[spec.kind]
    res = fitter(panel)
    out.results.append((spec.name, res))
    if spec.hausman:
        fe = res if spec.kind == "fe" else fe_fit(panel)
        re = res if spec.kind == "re" else re_fit(panel)
        h = hausman_test(fe, re, spec.time_varying)
        out.hausman.append(
            {"model": spec.name, "statistic": h.statistic, "df": h.df, "p_value": h.pvalue, "pinv_used": h.pinv_used}
        )


def analyze(specs: list[ModelSpec], frames: dict[str, pd.DataFrame]) -> AnalysisOutput:
    """Fit every model. Absent columns abort; estimation failures are recorded and skipped."""
    out = AnalysisOutput()
    for spec in specs:
        _subset(spec, frames[spec.data])
    for spec in specs:
        try:
            fit_model(spec, frames[spec.data], out)
        except ConfigError:
            raise
        except ValueError as exc:
            out.failures.append((spec.name, str(exc)))
    return out
