"""Ordinary least squares with classical inference, and linear time trends."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from heatpoll.stats.distributions import normal_sf, student_t_two_sided
from heatpoll.stats.linalg import back_substitute, check_rank, householder_qr


class TooFewRows(ValueError):
    pass


@dataclass
class RegressionResult:
    names: list[str]
    params: np.ndarray
    bse: np.ndarray
    tvalues: np.ndarray
    pvalues: np.ndarray
    rsquared: float
    nobs: int
    model: str
    cov: np.ndarray
    df_resid: int
    # "t" or "z": reference distribution of the p-values
    dist: str = "t"
    info: dict = field(default_factory=dict)

    def __getitem__(self, name: str) -> tuple[float, float, float]:
        i = self.names.index(name)
        return float(self.params[i]), float(self.bse[i]), float(self.pvalues[i])

    def index(self, name: str) -> int:
        return self.names.index(name)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.names, map(float, self.params)))

    def summary(self, title: str | None = None) -> str:
        from heatpoll.stats.report import format_result

        return format_result(self, title)


def _test_stats(params: np.ndarray, bse: np.ndarray) -> np.ndarray:
    t = np.empty_like(params)
    for i, (b, s) in enumerate(zip(params, bse)):
        if s > 0:
            t[i] = b / s
        else:
            t[i] = 0.0 if b == 0 else np.copysign(np.inf, b)
    return t


def pvalues_for(tvalues: np.ndarray, df: float | None) -> np.ndarray:
    """Two-sided p-values; ``df=None`` means standard normal."""
    if df is None:
        return np.array([min(1.0, 2.0 * normal_sf(abs(t))) for t in tvalues])
    return np.array([student_t_two_sided(t, df) for t in tvalues])


def least_squares(X: np.ndarray, y: np.ndarray, names: Sequence[str]):
    """Rank-checked QR solve. Returns (beta, (X'X)^-1, residuals)."""
    n, k = X.shape
    if n <= k:
        raise TooFewRows(f"{n} rows for {k} coefficients")
    check_rank(X, list(names))
    Q, R = householder_qr(X)
    beta = back_substitute(R, Q.T @ y)
    Rinv = back_substitute(R, np.eye(k))
    xtx_inv = Rinv @ Rinv.T
    return beta, xtx_inv, y - X @ beta


def ols_fit(
    X,
    y,
    names: Sequence[str] | None = None,
    add_intercept: bool = True,
    model: str = "OLS",
    dist: str = "t",
) -> RegressionResult:
    """Least squares of ``y`` on ``X`` (plus a leading ``const`` column when ``add_intercept``).

    Standard errors are classical, sigma^2 (X'X)^-1 with sigma^2 = SSR / (n - k).
    With an intercept R^2 is centred; a constant response gives R^2 = 0.
    """
    y = np.asarray(y, dtype=float).ravel()
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.shape[0] != y.shape[0]:
        raise ValueError(f"X has {X.shape[0]} rows, y has {y.shape[0]}")
    names = list(names) if names is not None else [f"x{i}" for i in range(X.shape[1])]
    if len(names) != X.shape[1]:
        raise ValueError("one name per column required")
    if add_intercept:
        X = np.column_stack([np.ones(len(y)), X])
        names = ["const"] + names
    n, k = X.shape
    beta, xtx_inv, resid = least_squares(X, y, names)
    ssr = float(resid @ resid)
    df_resid = n - k
    sigma2 = ssr / df_resid
    cov = sigma2 * xtx_inv
    bse = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    tvals = _test_stats(beta, bse)
    if add_intercept:
        sst = float(((y - y.mean()) ** 2).sum())
    else:
        sst = float(y @ y)
    rsq = 0.0 if sst == 0.0 or k == 1 and add_intercept else 1.0 - ssr / sst
    return RegressionResult(
        names=names,
        params=beta,
        bse=bse,
        tvalues=tvals,
        pvalues=pvalues_for(tvals, df_resid if dist == "t" else None),
        rsquared=rsq,
        nobs=n,
        model=model,
        cov=cov,
        df_resid=df_resid,
        dist=dist,
        info={"ssr": ssr, "sigma2": sigma2},
    )


def trend_slope(t, values=None) -> tuple[float, float, float]:
    """Slope, standard error and p-value of ``value ~ const + t``.

    Accepts either a sequence of (t, value) pairs or two sequences.
    """
    if values is None:
        pairs = np.asarray(t, dtype=float)
        t, values = pairs[:, 0], pairs[:, 1]
    t = np.asarray(t, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(t) < 3:
        raise TooFewRows("a trend needs at least 3 points")
    res = ols_fit(t, values, names=["t"])
    return float(res.params[1]), float(res.bse[1]), float(res.pvalues[1])
