"""Simulated panels with known parameters."""

import numpy as np
import pandas as pd

from heatpoll.stats import PanelDataset


def synth(seed=0, n=40, T=6, effect_sd=1.0, corr=0.8, dummy_effect=5.0, drop=0):
    """y = 1 + 2 x1 - 0.5 x2 + dummy_effect z + a_i + e, with x1 correlated with a_i by ``corr``."""
    rng = np.random.default_rng(seed)
    e = np.repeat(np.arange(n), T)
    t = np.tile(np.arange(T), n)
    a = rng.normal(scale=effect_sd, size=n)
    z = (rng.random(n) < 0.5).astype(float)
    x1 = rng.normal(size=n * T) + corr * a[e]
    x2 = rng.normal(size=n * T)
    y = 1.0 + 2.0 * x1 - 0.5 * x2 + dummy_effect * z[e] + a[e] + rng.normal(size=n * T)
    df = pd.DataFrame({"e": e, "t": t, "y": y, "x1": x1, "x2": x2, "z": z[e]})
    if drop:
        df = df.drop(index=rng.choice(len(df), size=drop, replace=False))
    return df


def panel(df, tv=("x1", "x2"), ti=("z",)):
    return PanelDataset(df, "e", "t", "y", list(tv), list(ti))


def zero_effect_panel(seed=0, n=30, T=5):
    """Idiosyncratic noise demeaned within entity, so the between residual variance is nil."""
    rng = np.random.default_rng(seed)
    e = np.repeat(np.arange(n), T)
    x = rng.normal(size=n * T)
    z = np.repeat((rng.random(n) < 0.5).astype(float), T)
    u = rng.normal(size=n * T)
    u -= pd.Series(u).groupby(e).transform("mean").to_numpy()
    y = 2.0 + 1.5 * x + 3.0 * z + u
    return pd.DataFrame({"e": e, "t": np.tile(np.arange(T), n), "y": y, "x": x, "z": z})
