"""Panel estimators: within (FE), random-effects GLS and correlated random effects.

The correlated random effects (CRE) model is random-effects GLS on a design
augmented with each entity's mean of every time-varying regressor (Mundlak).
Variance components follow Swamy-Arora; for unbalanced panels the harmonic
mean of the group sizes stands in for T.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from heatpoll.stats.ols import RegressionResult, TooFewRows, _test_stats, least_squares, pvalues_for


class PanelError(ValueError):
    pass


class DegenerateVariance(UserWarning):
    pass


@dataclass
class PanelDataset:
    data: pd.DataFrame
    entity: str
    time: str
    response: str
    time_varying: list[str] = field(default_factory=list)
    time_invariant: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        cols = [self.entity, self.time, self.response, *self.time_varying, *self.time_invariant]
        missing = [c for c in cols if c not in self.data.columns]
        if missing:
            raise PanelError(f"missing columns: {missing}")
        df = self.data[cols]
        if df.isna().any().any():
            bad = [c for c in cols if df[c].isna().any()]
            raise PanelError(f"missing values in {bad}")
        if df.duplicated([self.entity, self.time]).any():
            raise PanelError("(entity, time) pairs must be unique")
        self.data = df.sort_values([self.entity, self.time], kind="mergesort").reset_index(drop=True)
        codes, uniques = pd.factorize(self.data[self.entity], sort=True)
        self.codes = codes
        self.entities = list(uniques)
        self.T = np.bincount(codes)
        for c in self.time_invariant:
            spread = self.data.groupby(self.entity)[c].nunique()
            if (spread > 1).any():
                raise PanelError(f"{c!r} varies within entity {spread.idxmax()!r}")

    @property
    def n_entities(self) -> int:
        return len(self.entities)

    @property
    def nobs(self) -> int:
        return len(self.data)

    @property
    def balanced(self) -> bool:
        return bool((self.T == self.T[0]).all())

    def y(self) -> np.ndarray:
        return self.data[self.response].to_numpy(dtype=float)

    def matrix(self, columns: list[str]) -> np.ndarray:
        if not columns:
            return np.empty((self.nobs, 0))
        return self.data[columns].to_numpy(dtype=float)

    def group_means(self, A: np.ndarray) -> np.ndarray:
        """Entity means of each column (n_entities x k)."""
        A = A.reshape(len(A), -1)
        sums = np.zeros((self.n_entities, A.shape[1]))
        np.add.at(sums, self.codes, A)
        return sums / self.T[:, None]

    def expand(self, M: np.ndarray) -> np.ndarray:
        """Broadcast entity-level rows back to observations."""
        return M[self.codes]


def _check_shape(panel: PanelDataset) -> None:
    if panel.n_entities < 2:
        raise TooFewRows("panel needs at least two entities")
    if panel.T.max() < 2:
        raise TooFewRows("panel needs at least one entity observed twice")


def _check_within(panel: PanelDataset) -> None:
    for c in panel.time_varying:
        x = panel.matrix([c])
        dev = x - panel.expand(panel.group_means(x))
        if not np.any(np.abs(dev) > 1e-12 * max(1.0, float(np.abs(x).max()))):
            raise PanelError(f"time-varying regressor {c!r} has no within-entity variation")


def fe_fit(panel: PanelDataset) -> RegressionResult:
    """Within estimator on entity-demeaned data; time-invariant regressors drop out."""
    _check_shape(panel)
    names = list(panel.time_varying)
    if not names:
        raise PanelError("fixed effects needs at least one time-varying regressor")
    _check_within(panel)
    X, y = panel.matrix(names), panel.y()
    Xw = X - panel.expand(panel.group_means(X))
    yw = y - panel.expand(panel.group_means(y))[:, 0]
    beta, xtx_inv, resid = least_squares(Xw, yw, names)
    df_resid = panel.nobs - panel.n_entities - len(names)
    if df_resid <= 0:
        raise TooFewRows("no residual degrees of freedom for the within estimator")
    ssr = float(resid @ resid)
    sigma2 = ssr / df_resid
    cov = sigma2 * xtx_inv
    bse = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    tvals = _test_stats(beta, bse)
    sst = float(yw @ yw)
    return RegressionResult(
        names=names,
        params=beta,
        bse=bse,
        tvalues=tvals,
        pvalues=pvalues_for(tvals, df_resid),
        rsquared=0.0 if sst == 0 else 1.0 - ssr / sst,
        nobs=panel.nobs,
        model="FE",
        cov=cov,
        df_resid=df_resid,
        dist="t",
        info={"sigma2_e": sigma2, "n_entities": panel.n_entities},
    )


def variance_components(panel: PanelDataset) -> dict:
    """Swamy-Arora estimates of the idiosyncratic and entity variances."""
    _check_shape(panel)
    _check_within(panel)
    tv, ti = list(panel.time_varying), list(panel.time_invariant)
    X, y = panel.matrix(tv), panel.y()
    n, N, k1 = panel.n_entities, panel.nobs, len(tv)

    yw = y - panel.expand(panel.group_means(y))[:, 0]
    if k1:
        Xw = X - panel.expand(panel.group_means(X))
        _, _, resid_w = least_squares(Xw, yw, tv)
    else:
        resid_w = yw
    df_w = N - n - k1
    if df_w <= 0:
        raise TooFewRows("no within degrees of freedom for the variance components")
    sigma2_e = float(resid_w @ resid_w) / df_w
    if sigma2_e <= 1e-24 * max(1.0, float(y @ y) / N):
        raise PanelError("idiosyncratic variance is zero: the within regression fits exactly")

    Zb = np.column_stack([np.ones(n), panel.group_means(X) if k1 else np.empty((n, 0)),
                          panel.group_means(panel.matrix(ti)) if ti else np.empty((n, 0))])
    yb = panel.group_means(y)[:, 0]
    _, _, resid_b = least_squares(Zb, yb, ["const", *tv, *ti])
    sigma2_between = float(resid_b @ resid_b) / (n - Zb.shape[1])
    t_bar = n / float(np.sum(1.0 / panel.T))
    sigma2_u = sigma2_between - sigma2_e / t_bar
    degenerate = sigma2_u < 0
    if degenerate:
        warnings.warn(f"entity variance estimate {sigma2_u:.3g} < 0 clamped to 0", DegenerateVariance, stacklevel=3)
    return {
        "sigma2_e": sigma2_e,
        "sigma2_u": max(sigma2_u, 0.0),
        "sigma2_u_raw": sigma2_u,
        "t_bar": t_bar,
        "degenerate_variance": bool(degenerate),
    }


def re_fit(panel: PanelDataset, mundlak: bool = False, theta=None) -> RegressionResult:
    """Random-effects GLS by quasi-demeaning, optionally with Mundlak means (CRE).

    ``theta`` overrides the estimated quasi-demeaning factor: a scalar for all
    entities or one value per entity. theta = 0 is pooled OLS; theta = 1 is the
    within transform, under which columns that vanish (constant, entity means,
    time-invariant regressors) are dropped and reported as NaN.
    P-values are normal-based.
    """
    _check_shape(panel)
    tv, ti = list(panel.time_varying), list(panel.time_invariant)
    X, Z, y = panel.matrix(tv), panel.matrix(ti), panel.y()
    blocks, names = [np.ones((panel.nobs, 1)), X], ["const", *tv]
    if mundlak:
        blocks.append(panel.expand(panel.group_means(X)))
        names += [f"{c}_mean" for c in tv]
    blocks.append(Z)
    names += ti
    W = np.column_stack(blocks)

    info: dict = {"n_entities": panel.n_entities, "balanced": panel.balanced}
    if theta is None:
        vc = variance_components(panel)
        info.update(vc)
        th = 1.0 - np.sqrt(vc["sigma2_e"] / (vc["sigma2_e"] + panel.T * vc["sigma2_u"]))
    else:
        th = np.broadcast_to(np.asarray(theta, dtype=float), (panel.n_entities,)).copy()
        if ((th < 0) | (th > 1)).any():
            raise ValueError("theta must lie in [0, 1]")
    info["theta"] = th

    th_rows = th[panel.codes]
    Ws = W - th_rows[:, None] * panel.expand(panel.group_means(W))
    ys = y - th_rows * panel.expand(panel.group_means(y))[:, 0]

    norms_before = np.linalg.norm(W, axis=0)
    keep = np.linalg.norm(Ws, axis=0) > 1e-12 * np.maximum(norms_before, 1.0)
    if not keep.all() and theta is None:
        dropped = [n for n, k in zip(names, keep) if not k]
        raise PanelError(f"columns vanish after quasi-demeaning: {dropped}")
    kept_names = [n for n, k in zip(names, keep) if k]
    beta_k, xtx_inv, resid = least_squares(Ws[:, keep], ys, kept_names)
    df_resid = panel.nobs - len(kept_names)
    sigma2 = float(resid @ resid) / df_resid
    cov_k = sigma2 * xtx_inv

    k = len(names)
    beta = np.full(k, np.nan)
    cov = np.full((k, k), np.nan)
    idx = np.flatnonzero(keep)
    beta[idx] = beta_k
    cov[np.ix_(idx, idx)] = cov_k
    bse = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    tvals = np.full(k, np.nan)
    tvals[idx] = _test_stats(beta_k, bse[idx])
    pvals = np.full(k, np.nan)
    pvals[idx] = pvalues_for(tvals[idx], None)
    if not keep.all():
        info["dropped"] = [n for n, kk in zip(names, keep) if not kk]

    fitted = W[:, keep] @ beta_k
    if np.std(fitted) > 0 and np.std(y) > 0:
        rsq = float(np.corrcoef(y, fitted)[0, 1] ** 2)
    else:
        rsq = 0.0
    info["sigma2"] = sigma2
    return RegressionResult(
        names=names,
        params=beta,
        bse=bse,
        tvalues=tvals,
        pvalues=pvals,
        rsquared=rsq,
        nobs=panel.nobs,
        model="CRE" if mundlak else "RE-GLS",
        cov=cov,
        df_resid=df_resid,
        dist="z",
        info=info,
    )


def cre_fit(panel: PanelDataset, theta=None) -> RegressionResult:
    return re_fit(panel, mundlak=True, theta=theta)


def pooled_ols(panel: PanelDataset, mundlak: bool = False) -> RegressionResult:
    """Pooled OLS on the (optionally Mundlak-augmented) design, for comparison."""
    return re_fit(panel, mundlak=mundlak, theta=0.0)
