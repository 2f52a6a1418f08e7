import warnings

import numpy as np
import pandas as pd
import pytest

from heatpoll.stats import (
    DegenerateVariance,
    PanelDataset,
    PanelError,
    RankDeficient,
    cre_fit,
    fe_fit,
    ols_fit,
    re_fit,
    variance_components,
)

from oracles import within_oracle
from synthetic import panel, synth, zero_effect_panel


def test_balanced_flag():
    assert panel(synth()).balanced
    assert not panel(synth(drop=7)).balanced


def test_duplicate_entity_time_rejected():
    df = synth()
    with pytest.raises(PanelError):
        panel(pd.concat([df, df.iloc[:1]]))


def test_time_invariant_must_not_vary():
    df = synth()
    df.loc[0, "z"] = 1 - df.loc[0, "z"]
    with pytest.raises(PanelError, match="z"):
        panel(df)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_fe_matches_oracle(seed):
    df = synth(seed)
    fe = fe_fit(panel(df))
    oracle = within_oracle(df["e"], df[["x1", "x2"]].to_numpy(), df["y"].to_numpy())
    assert fe.params == pytest.approx(oracle, abs=1e-10)
    assert fe.model == "FE"


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_cre_equals_within_on_balanced_panels(seed):
    df = synth(seed)
    cre = cre_fit(panel(df))
    oracle = within_oracle(df["e"], df[["x1", "x2"]].to_numpy(), df["y"].to_numpy())
    assert [cre["x1"][0], cre["x2"][0]] == pytest.approx(oracle, abs=1e-6)
    assert cre.model == "CRE" and cre.dist == "z"
    assert "x1_mean" in cre.names


def test_theta_one_is_within():
    df = synth(4, drop=5)
    p = panel(df)
    forced = cre_fit(p, theta=1.0)
    fe = fe_fit(p)
    assert [forced["x1"][0], forced["x2"][0]] == pytest.approx(list(fe.params), abs=1e-10)
    assert np.isnan(forced["z"][0])


def test_theta_zero_is_pooled_ols():
    df = synth(5)
    p = panel(df)
    pooled = cre_fit(p, theta=0.0)
    g = df.groupby("e")[["x1", "x2"]].transform("mean")
    X = np.column_stack([df["x1"], df["x2"], g["x1"], g["x2"], df["z"]])
    ref = ols_fit(X, df["y"], names=["x1", "x2", "x1_mean", "x2_mean", "z"])
    assert pooled.params == pytest.approx(ref.params, abs=1e-10)


def test_zero_entity_variance_equals_pooled():
    df = zero_effect_panel()
    p = PanelDataset(df, "e", "t", "y", ["x"], ["z"])
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        cre = cre_fit(p)
    assert cre.info["degenerate_variance"] or cre.info["sigma2_u"] == 0.0
    assert any(issubclass(w.category, DegenerateVariance) for w in caught) or not cre.info["degenerate_variance"]
    assert np.all(cre.info["theta"] == 0.0)
    xm = df.groupby("e")["x"].transform("mean")
    ref = ols_fit(np.column_stack([df["x"], xm, df["z"]]), df["y"], names=["x", "x_mean", "z"])
    assert cre.params == pytest.approx(ref.params, abs=1e-6)


def test_monte_carlo_recovers_time_invariant_effect():
    hits = 0
    for rep in range(100):
        df = synth(1000 + rep, n=60, T=5, corr=0.0)
        est, se, _ = cre_fit(panel(df))["z"]
        hits += abs(est - 5.0) <= 3 * se
    assert hits >= 95


def test_unbalanced_variance_components():
    vc = variance_components(panel(synth(6, n=300, corr=0.0, drop=200)))
    assert vc["sigma2_e"] == pytest.approx(1.0, rel=0.1)
    assert vc["sigma2_u"] == pytest.approx(1.0, rel=0.3)
    assert vc["t_bar"] < 6


def test_re_without_mundlak():
    df = synth(7, corr=0.0)
    re = re_fit(panel(df))
    assert re.model == "RE-GLS" and "x1_mean" not in re.names
    assert re["x1"][0] == pytest.approx(2.0, abs=0.15)
    assert all(0.0 <= p <= 1.0 for p in re.pvalues)


def test_shape_preconditions():
    df = synth(n=1)
    with pytest.raises(ValueError):
        cre_fit(panel(df))
    df = synth(T=1)
    with pytest.raises(ValueError):
        cre_fit(panel(df))


def test_collinear_regressor_named():
    df = synth(8)
    df["z2"] = 2 * df["z"]
    with pytest.raises(RankDeficient) as exc:
        cre_fit(panel(df, ti=("z", "z2")))
    assert exc.value.column == "z2"


def test_no_within_variation_is_reported():
    df = synth(9)
    df["x1"] = df.groupby("e")["x1"].transform("mean")
    with pytest.raises(PanelError, match="x1"):
        fe_fit(panel(df))


def test_deterministic():
    df = synth(10)
    a, b = cre_fit(panel(df)), cre_fit(panel(df.sample(frac=1.0, random_state=3)))
    assert a.params == pytest.approx(b.params, abs=1e-12)
