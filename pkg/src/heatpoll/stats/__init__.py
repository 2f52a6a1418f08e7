"""Econometrics: OLS, trend slopes, panel estimators and the Hausman test."""

from heatpoll.stats.distributions import InvalidDf, betainc, chi2_sf, gammaincc, student_t_sf, student_t_two_sided
from heatpoll.stats.hausman import HausmanResult, MissingCoefficient, NonPositiveDifference, hausman_test
from heatpoll.stats.linalg import RankDeficient, householder_qr
from heatpoll.stats.ols import RegressionResult, TooFewRows, ols_fit, trend_slope
from heatpoll.stats.panel import (
    DegenerateVariance,
    PanelDataset,
    PanelError,
    cre_fit,
    fe_fit,
    pooled_ols,
    re_fit,
    variance_components,
)
from heatpoll.stats.report import coefficient_rows, coefficients_csv, format_result, stars

__all__ = [
    "DegenerateVariance",
    "HausmanResult",
    "InvalidDf",
    "MissingCoefficient",
    "NonPositiveDifference",
    "PanelDataset",
    "PanelError",
    "RankDeficient",
    "RegressionResult",
    "TooFewRows",
    "betainc",
    "chi2_sf",
    "coefficient_rows",
    "coefficients_csv",
    "cre_fit",
    "fe_fit",
    "format_result",
    "gammaincc",
    "hausman_test",
    "householder_qr",
    "ols_fit",
    "pooled_ols",
    "re_fit",
    "stars",
    "student_t_sf",
    "student_t_two_sided",
    "trend_slope",
    "variance_components",
]
