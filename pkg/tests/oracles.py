"""Reference values computed independently of the package under test."""

import json
from fractions import Fraction
from pathlib import Path

import mpmath as mp
import numpy as np

T_TABLE = json.loads((Path(__file__).parent / "data" / "t_pvalues.json").read_text())["cases"]


def t_two_sided(t, df, dps=40):
    with mp.workdps(dps):
        x = mp.mpf(df) / (df + mp.mpf(t) ** 2)
        return float(mp.betainc(mp.mpf(df) / 2, mp.mpf(1) / 2, 0, x, regularized=True))


def chi2_sf_series(x, k, terms=200, dps=50):
    """Upper chi-squared tail from the power series of the lower incomplete gamma.

    P(a, z) = z^a e^-z sum_n z^n / Gamma(a + n + 1), a = k/2, z = x/2.
    """
    with mp.workdps(dps):
        a, z = mp.mpf(k) / 2, mp.mpf(x) / 2
        total = mp.mpf(0)
        for n in range(terms):
            total += z**n / mp.gamma(a + n + 1)
        return float(1 - z**a * mp.e ** (-z) * total)


def simple_slope(t, y):
    """Closed-form simple-regression slope in exact rational arithmetic."""
    t = [Fraction(v) for v in t]
    y = [Fraction(v) for v in y]
    tm, ym = sum(t) / len(t), sum(y) / len(y)
    return float(sum((a - tm) * (b - ym) for a, b in zip(t, y)) / sum((a - tm) ** 2 for a in t))


def within_oracle(entity, X, y):
    """OLS on entity-demeaned data via numpy's lstsq."""
    entity = np.asarray(entity)
    Xd, yd = np.array(X, float), np.array(y, float)
    for e in np.unique(entity):
        m = entity == e
        Xd[m] -= Xd[m].mean(axis=0)
        yd[m] -= yd[m].mean()
    return np.linalg.lstsq(Xd, yd, rcond=None)[0]
