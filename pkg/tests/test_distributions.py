import math

import pytest

from heatpoll.stats.distributions import (
    InvalidDf,
    betainc,
    chi2_sf,
    gammaincc,
    normal_sf,
    student_t_sf,
    student_t_two_sided,
)

from oracles import T_TABLE, chi2_sf_series, t_two_sided


@pytest.mark.parametrize("case", T_TABLE, ids=lambda c: f"t={c['t']},df={c['df']}")
def test_t_table(case):
    assert student_t_two_sided(case["t"], case["df"]) == pytest.approx(case["p_two_sided"], abs=1e-10)


@pytest.mark.parametrize("t,df", [(0.3, 4.5), (7.5, 3), (2.2, 1e4), (1.0, 1e6), (-4.0, 17)])
def test_t_against_mpmath(t, df):
    assert student_t_two_sided(t, df) == pytest.approx(t_two_sided(t, df), abs=1e-10)


def test_t_symmetry_and_limits():
    for df in (1, 5, 1e6):
        assert student_t_sf(0.0, df) == 0.5
        assert student_t_sf(1.3, df) + student_t_sf(-1.3, df) == pytest.approx(1.0, abs=1e-14)
    assert student_t_sf(1.96, 1e7) == pytest.approx(0.025, abs=1e-3)
    assert student_t_sf(1.96, 1e7) == pytest.approx(normal_sf(1.96), abs=1e-6)
    assert student_t_two_sided(math.inf, 3) == 0.0


def test_t_pvalues_monotone():
    for df in (2, 30):
        ps = [student_t_two_sided(t / 4, df) for t in range(0, 40)]
        assert all(a > b for a, b in zip(ps, ps[1:]))


@pytest.mark.parametrize("x,k", [(4.0, 1), (0.5, 1), (3.0, 2), (10.0, 5), (25.0, 10), (1.0, 30)])
def test_chi2_against_series(x, k):
    assert chi2_sf(x, k) == pytest.approx(chi2_sf_series(x, k), abs=1e-10)


def test_chi2_edges():
    assert chi2_sf(0.0, 3) == 1.0
    assert chi2_sf(2.0, 2) == pytest.approx(math.exp(-1.0), abs=1e-15)
    assert chi2_sf(4.0, 1) == pytest.approx(math.erfc(math.sqrt(2.0)), abs=1e-15)


def test_invalid_inputs():
    with pytest.raises(InvalidDf):
        student_t_sf(1.0, 0.5)
    with pytest.raises(InvalidDf):
        chi2_sf(1.0, 0)
    with pytest.raises(ValueError):
        chi2_sf(-1.0, 2)


def test_betainc_gammaincc_basics():
    assert betainc(1, 1, 0.3) == pytest.approx(0.3, abs=1e-15)
    assert betainc(2, 3, 0.0) == 0.0 and betainc(2, 3, 1.0) == 1.0
    assert betainc(2.5, 4, 0.4) + betainc(4, 2.5, 0.6) == pytest.approx(1.0, abs=1e-14)
    assert gammaincc(1.0, 2.0) == pytest.approx(math.exp(-2.0), abs=1e-15)
