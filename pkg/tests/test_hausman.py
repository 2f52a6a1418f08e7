import numpy as np
import pytest

from heatpoll.stats import HausmanResult, MissingCoefficient, NonPositiveDifference, RegressionResult, hausman_test

from oracles import chi2_sf_series


def result(names, params, cov, model):
    k = len(names)
    z = np.zeros(k)
    return RegressionResult(list(names), np.array(params, float), np.sqrt(np.diag(cov)), z, z, 0.0, 100, model, np.array(cov, float), 90)


def test_identical_estimates():
    fe = result(["x"], [1.5], [[2.0]], "FE")
    re = result(["x"], [1.5], [[1.0]], "RE-GLS")
    assert hausman_test(fe, re, ["x"]) == HausmanResult(0.0, 1, 1.0, False)


def test_one_dimensional_case():
    fe = result(["x"], [3.0], [[2.0]], "FE")
    re = result(["x"], [1.0], [[1.0]], "RE-GLS")
    h = hausman_test(fe, re, ["x"])
    assert h.statistic == pytest.approx(4.0, abs=1e-12) and h.df == 1
    assert h.pvalue == pytest.approx(chi2_sf_series(4.0, 1), abs=1e-6)
    assert h.pvalue == pytest.approx(0.0455, abs=5e-5)


def test_mismatched_names():
    fe = result(["x"], [3.0], [[2.0]], "FE")
    re = result(["w"], [1.0], [[1.0]], "RE-GLS")
    with pytest.raises(MissingCoefficient):
        hausman_test(fe, re, ["x"])


def test_non_positive_difference_uses_pinv():
    fe = result(["a", "b"], [1.0, 2.0], [[1.0, 0.0], [0.0, 1.0]], "FE")
    re = result(["a", "b"], [0.0, 2.5], [[0.5, 0.0], [0.0, 1.0]], "RE-GLS")
    with pytest.warns(NonPositiveDifference):
        h = hausman_test(fe, re, ["a", "b"])
    assert h.pinv_used and h.statistic == pytest.approx(2.0)
    assert h.df == 2


def test_subset_of_coefficients():
    fe = result(["a", "b"], [1.0, 2.0], [[2.0, 0.1], [0.1, 2.0]], "FE")
    re = result(["const", "a", "b"], [9.0, 0.0, 2.0], [[5, 0, 0], [0, 1.0, 0.1], [0, 0.1, 1.0]], "RE-GLS")
    assert hausman_test(fe, re, ["a"]).statistic == pytest.approx(1.0)
