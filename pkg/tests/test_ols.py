import numpy as np
import pytest

from heatpoll.stats import RankDeficient, TooFewRows, householder_qr, ols_fit, trend_slope

from oracles import simple_slope, t_two_sided


def test_exact_fit():
    x = np.arange(10.0)
    r = ols_fit(x, 3 + 2 * x, names=["x"])
    assert r.names == ["const", "x"]
    assert r.params == pytest.approx([3.0, 2.0], abs=1e-9)
    assert np.all(r.bse < 1e-9)
    assert r.rsquared == pytest.approx(1.0, abs=1e-9)
    assert r.model == "OLS"


def test_constant_response_intercept_only():
    r = ols_fit(np.empty((6, 0)), np.full(6, 4.2), names=[])
    assert r.params[0] == pytest.approx(4.2) and r.rsquared == 0.0


def test_duplicate_column():
    x = np.arange(8.0)
    with pytest.raises(RankDeficient) as exc:
        ols_fit(np.column_stack([x, x]), x**2, names=["a", "b"])
    assert exc.value.column == "b"


def test_too_few_rows():
    with pytest.raises(TooFewRows):
        ols_fit(np.arange(2.0), [1.0, 2.0])


def noisy(seed=0, n=60):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, 3)) * [1.0, 10.0, 0.1]
    y = 1.0 + X @ [0.5, -0.2, 3.0] + rng.normal(size=n)
    return X, y


def test_residuals_orthogonal_to_design():
    X, y = noisy()
    r = ols_fit(X, y)
    D = np.column_stack([np.ones(len(y)), X])
    resid = y - D @ r.params
    assert np.max(np.abs(D.T @ resid)) <= 1e-8 * max(1.0, np.abs(D).max() * np.abs(y).max())


def test_matches_independent_solution():
    X, y = noisy(1)
    r = ols_fit(X, y)
    D = np.column_stack([np.ones(len(y)), X])
    beta = np.linalg.lstsq(D, y, rcond=None)[0]
    assert r.params == pytest.approx(beta, rel=1e-10)
    s2 = np.sum((y - D @ beta) ** 2) / (len(y) - 4)
    se = np.sqrt(np.diag(s2 * np.linalg.inv(D.T @ D)))
    assert r.bse == pytest.approx(se, rel=1e-8)
    for t, p in zip(r.tvalues, r.pvalues):
        assert p == pytest.approx(t_two_sided(t, len(y) - 4), abs=1e-10)


def test_rescaling_invariance():
    X, y = noisy(2)
    a = ols_fit(X, y)
    scale = np.array([1e3, 1e-2, 7.0])
    b = ols_fit(X * scale, y)
    D = np.column_stack([np.ones(len(y)), X])
    assert D @ a.params == pytest.approx(np.column_stack([np.ones(len(y)), X * scale]) @ b.params, rel=1e-9)
    assert a.rsquared == pytest.approx(b.rsquared, rel=1e-12)
    assert b.params[1:] == pytest.approx(a.params[1:] / scale, rel=1e-9)
    assert b.pvalues == pytest.approx(a.pvalues, rel=1e-7, abs=1e-15)


def test_qr_reconstructs():
    A = np.random.default_rng(3).normal(size=(9, 4))
    Q, R = householder_qr(A)
    assert Q @ R == pytest.approx(A, abs=1e-13)
    assert Q.T @ Q == pytest.approx(np.eye(4), abs=1e-13)
    assert np.allclose(R, np.triu(R))


def test_trend_examples():
    slope, se, p = trend_slope([(0, 1), (1, 2), (2, 3), (3, 4)])
    assert slope == pytest.approx(1.0, abs=1e-12) and p < 0.001
    assert trend_slope(range(5), [3.0] * 5)[0] == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(TooFewRows):
        trend_slope([(0, 1), (1, 2)])


def test_trend_matches_closed_form(full_graph, weather):
    from heatpoll.decision import MockProvider
    from heatpoll.engine import SimConfig, run_simulation

    res = run_simulation(SimConfig(days=15), full_graph, weather, MockProvider(trait_bias=True))
    t = [n.day_index for n in res.network]
    for metric in ("avg_friend_weight", "cost", "avg_happiness"):
        y = [getattr(n, metric) for n in res.network]
        assert trend_slope(t, y)[0] == pytest.approx(simple_slope(t, y), rel=1e-9, abs=1e-12)


def test_summary_has_stars():
    x = np.arange(30.0)
    y = 0.5 * x + np.sin(x)
    text = ols_fit(x, y, names=["day"]).summary()
    assert "day" in text and "***" in text
