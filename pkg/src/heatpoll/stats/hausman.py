"""Hausman specification test comparing fixed- and random-effects estimates."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from heatpoll.stats.distributions import chi2_sf
from heatpoll.stats.ols import RegressionResult


class MissingCoefficient(KeyError):
    pass


class NonPositiveDifference(UserWarning):
    """V_FE - V_RE is not positive definite; a pseudo-inverse was used."""


@dataclass(frozen=True)
class HausmanResult:
    statistic: float
    df: int
    pvalue: float
    pinv_used: bool = False


def _block(res: RegressionResult, names: Sequence[str]) -> tuple[np.ndarray, np.ndarray]:
    missing = [n for n in names if n not in res.names]
    if missing:
        raise MissingCoefficient(f"{res.model} result lacks {missing}")
    idx = [res.names.index(n) for n in names]
    return np.asarray(res.params, dtype=float)[idx], np.asarray(res.cov, dtype=float)[np.ix_(idx, idx)]


def hausman_test(fe: RegressionResult, re: RegressionResult, common_coefs: Sequence[str]) -> HausmanResult:
    names = list(common_coefs)
    if not names:
        raise ValueError("common_coefs must name at least one coefficient")
    b_fe, v_fe = _block(fe, names)
    b_re, v_re = _block(re, names)
    if not (np.isfinite(b_fe).all() and np.isfinite(b_re).all()):
        raise ValueError("coefficients must be finite")
    diff = b_fe - b_re
    V = v_fe - v_re
    V = 0.5 * (V + V.T)
    if not diff.any():
        return HausmanResult(0.0, len(names), 1.0, False)

    pinv_used = False
    try:
        np.linalg.cholesky(V)
        H = float(diff @ np.linalg.solve(V, diff))
    except np.linalg.LinAlgError:
        pinv_used = True
        warnings.warn("V_FE - V_RE is not positive definite; using a pseudo-inverse", NonPositiveDifference, stacklevel=2)
        H = float(diff @ np.linalg.pinv(V) @ diff)
    H = max(H, 0.0)
    return HausmanResult(H, len(names), chi2_sf(H, len(names)), pinv_used)
