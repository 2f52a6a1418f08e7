"""Plain-text and CSV rendering of regression results with significance stars."""

from __future__ import annotations

import csv
import io
import math

from heatpoll.stats.ols import RegressionResult

STAR_LEVELS = ((0.001, "***"), (0.01, "**"), (0.05, "*"), (0.1, "†"))

COEF_COLUMNS = ["model", "term", "estimate", "std_error", "statistic", "p_value", "stars", "nobs", "rsquared"]


def stars(p: float) -> str:
    if p is None or math.isnan(p):
        return ""
    for level, mark in STAR_LEVELS:
        if p < level:
            return mark
    return ""


def coefficient_rows(res: RegressionResult, label: str | None = None) -> list[dict]:
    rows = []
    for i, name in enumerate(res.names):
        p = float(res.pvalues[i])
        rows.append(
            {
                "model": label or res.model,
                "term": name,
                "estimate": float(res.params[i]),
                "std_error": float(res.bse[i]),
                "statistic": float(res.tvalues[i]),
                "p_value": p,
                "stars": stars(p),
                "nobs": res.nobs,
                "rsquared": res.rsquared,
            }
        )
    return rows


def coefficients_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COEF_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})
    return buf.getvalue()


def _num(v: float) -> str:
    return f"{v:.3f}" if abs(v) < 1e5 else f"{v:.2e}"


def format_result(res: RegressionResult, title: str | None = None) -> str:
    stat = "z" if res.dist == "z" else "t"
    head = title or res.model
    width = max([len("Variable"), *map(len, res.names)])
    lines = [head, f"{'Variable':<{width}}  {'Estimate':>12}  {'(Std. Error)':>14}  {stat:>8}  {'p':>8}"]
    lines.append("-" * len(lines[1]))
    for i, name in enumerate(res.names):
        b, se, t, p = res.params[i], res.bse[i], res.tvalues[i], res.pvalues[i]
        if math.isnan(b):
            lines.append(f"{name:<{width}}  {'(dropped)':>12}")
            continue
        lines.append(f"{name:<{width}}  {b:>12.4f}  {'(' + format(se, '.4f') + ')':>14}  {_num(t):>8}  {p:>8.4f} {stars(p)}")
    lines.append("-" * len(lines[1]))
    lines.append(f"Observations: {res.nobs}   R^2: {res.rsquared:.4f}   ({stat}-based p-values, classical SEs)")
    lines.append("† p<.1, * p<.05, ** p<.01, *** p<.001")
    return "\n".join(lines)
