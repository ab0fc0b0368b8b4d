import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special, stats

from bipartite_rsl.distributions import GeometricMixture, sample_degrees
from bipartite_rsl.errors import InsufficientTail
from bipartite_rsl.tailfit import (
    MIN_TAIL,
    Verdict,
    _se_loglik,
    fit_power_law_mle,
    fit_stretched_exponential,
    golden_section_max,
    ks_against_cdf,
    ks_two_sample,
    power_law_cdf,
    sample_discrete_power_law,
    scan_k_min,
)
from bipartite_rsl.zeta import hurwitz_zeta


@pytest.mark.parametrize("s", [1.01, 1.5, 2.0, 2.5, 3.7, 6.0, 10.0])
@pytest.mark.parametrize("q", [1, 2, 5, 19, 20, 21, 48, 170, 1000, 123456])
def test_hurwitz_zeta_against_scipy(s, q):
    assert hurwitz_zeta(s, q) == pytest.approx(special.zeta(s, q), rel=1e-10)


def test_hurwitz_zeta_domain():
    with pytest.raises(ValueError):
        hurwitz_zeta(1.0, 1)
    with pytest.raises(ValueError):
        hurwitz_zeta(2.0, 0)


def test_golden_section_finds_quadratic_max():
    assert golden_section_max(lambda x: -(x - 3.3) ** 2, 1.01, 10.0) == pytest.approx(3.3, abs=1e-7)
    assert golden_section_max(lambda x: x, 1.01, 10.0) == 10.0


def test_zeta_sampler_matches_pmf():
    x = sample_discrete_power_law(2.5, 3, 200_000, 0)
    assert x.min() == 3
    k = np.arange(3, 13)
    emp = np.array([(x == kk).mean() for kk in k])
    model = k**-2.5 / special.zeta(2.5, 3)
    assert np.allclose(emp, model, atol=4 * np.sqrt(model / x.size))


def test_power_law_mle_recovers_gamma():
    x = sample_discrete_power_law(2.5, 1, 10**5, 1)
    fit = fit_power_law_mle(x, 1)
    assert 2.45 <= fit.gamma <= 2.55
    assert not fit.at_bound


def test_power_law_mle_matches_grid_oracle():
    x = sample_discrete_power_law(2.2, 5, 5000, 2)
    tail = x[x >= 5]
    grid = np.linspace(1.5, 3.5, 20001)
    ll = [-g * np.log(tail).sum() - tail.size * np.log(special.zeta(g, 5)) for g in grid]
    oracle = grid[int(np.argmax(ll))]
    assert fit_power_law_mle(x, 5).gamma == pytest.approx(oracle, abs=2e-4)


def test_power_law_ks_matches_brute_force():
    x = sample_discrete_power_law(2.3, 4, 3000, 3)
    fit = fit_power_law_mle(x, 4)
    tail = np.sort(x[x >= 4])
    ks_grid = np.arange(4, tail.max() + 1)
    ecdf = np.searchsorted(tail, ks_grid, side="right") / tail.size
    model = 1 - np.array([special.zeta(fit.gamma, k + 1) for k in ks_grid]) / special.zeta(fit.gamma, 4)
    assert fit.ks == pytest.approx(np.max(np.abs(ecdf - model)), abs=1e-9)


def test_ks_against_cdf_accounts_for_gaps():
    # values 1 and 5 only: the largest gap sits just below 5
    values, counts = np.array([1, 5]), np.array([1, 1])
    cdf = power_law_cdf(2.0, 1, 5)
    d = ks_against_cdf(values, counts, cdf, 1)
    assert d == pytest.approx(max(abs(0.5 - cdf[0]), abs(0.5 - cdf[3]), abs(1 - cdf[4])))


def test_insufficient_tail():
    with pytest.raises(InsufficientTail):
        fit_power_law_mle([5] * (MIN_TAIL - 1), 1)
    with pytest.raises(InsufficientTail):
        fit_stretched_exponential([5] * (MIN_TAIL - 1), 1)


def test_degenerate_sequence_flagged():
    fit = fit_power_law_mle([7] * 50, 7)
    assert fit.at_bound
    report = scan_k_min([7] * 50)
    assert report.verdict is Verdict.INCONCLUSIVE


def test_se_loglik_matches_direct_formula():
    values = np.array([3.0, 4.0, 9.0, 20.0])
    counts = np.array([2.0, 1.0, 1.0, 3.0])
    scale, shape, k_min = 6.0, 0.7, 3

    def surv(k):
        return math.exp(-((k / scale) ** shape))

    direct = sum(c * math.log((surv(v) - surv(v + 1)) / surv(k_min)) for v, c in zip(values, counts))
    assert _se_loglik(math.log(scale), shape, values, counts, k_min) == pytest.approx(direct, rel=1e-12)


def test_se_discretisation_normalised():
    scale, shape, k_min = 12.0, 0.5, 4
    k = np.arange(k_min, 200_000, dtype=float)
    s = np.exp(-((k / scale) ** shape))
    s1 = np.exp(-(((k + 1) / scale) ** shape))
    assert np.sum((s - s1) / math.exp(-((k_min / scale) ** shape))) == pytest.approx(1.0, abs=1e-9)


def test_stretched_exp_fixed_shape_recovers_exponential():
    p = 0.1
    x = sample_degrees(GeometricMixture.single(p), 10**5, 4).degrees
    fit = fit_stretched_exponential(x, 1, fix_shape=1.0)
    assert fit.params.shape == 1.0
    assert fit.params.scale == pytest.approx(-1 / math.log(1 - p), rel=0.03)


def test_bic_prefers_stretched_exp_on_geometric():
    x = sample_degrees(GeometricMixture.single(0.1), 10**5, 5).degrees
    pl = fit_power_law_mle(x, 1)
    se = fit_stretched_exponential(x, 1)
    assert se.bic < pl.bic


def test_bic_prefers_power_law_on_zeta():
    x = sample_discrete_power_law(2.2, 1, 10**5, 6)
    pl = fit_power_law_mle(x, 1)
    se = fit_stretched_exponential(x, 1)
    assert pl.bic < se.bic


def test_scan_pure_power_law():
    x = sample_discrete_power_law(2.5, 1, 10**4, 7)
    r = scan_k_min(x)
    assert r.verdict is Verdict.POWER_LAW
    assert r.k_min <= 3
    assert r.data_fraction > 0.9
    assert r.gamma > 1


def test_scan_geometric():
    x = sample_degrees(GeometricMixture.single(0.1), 10**4, 8).degrees
    r = scan_k_min(x)
    assert r.verdict is Verdict.STRETCHED_EXPONENTIAL


def test_scan_data_fraction_is_exact_count():
    x = sample_degrees(GeometricMixture.single(0.1), 5000, 9).degrees
    r = scan_k_min(x)
    assert r.data_fraction == np.count_nonzero(x >= r.k_min) / x.size
    if r.ks_optimal_k_min is not None:
        assert r.ks_optimal_data_fraction == np.count_nonzero(x >= r.ks_optimal_k_min) / x.size


def test_scan_small_input_inconclusive():
    r = scan_k_min([1, 2, 1])
    assert r.verdict is Verdict.INCONCLUSIVE
    assert r.k_min is None
    assert scan_k_min([]).verdict is Verdict.INCONCLUSIVE


def test_ks_optimal_fields_on_power_law():
    x = sample_discrete_power_law(2.5, 1, 10**4, 10)
    r = scan_k_min(x)
    assert r.ks_optimal_gamma == pytest.approx(2.5, abs=0.15)
    assert r.ks_optimal_ks <= r.ks_power_law + 1e-12


@given(st.lists(st.integers(0, 200), min_size=1, max_size=200), st.integers(1, 200), st.integers(1, 200))
def test_tail_count_monotone(xs, a, b):
    lo, hi = sorted((a, b))
    x = np.array(xs)
    assert np.count_nonzero(x >= hi) <= np.count_nonzero(x >= lo)


def test_ks_two_sample_examples():
    assert ks_two_sample([1, 2, 3], [1, 2, 3]) == 0.0
    assert ks_two_sample([1, 1, 1], [10, 10, 10]) == 1.0
    with pytest.raises(ValueError):
        ks_two_sample([], [1])


@given(st.lists(st.integers(0, 50), min_size=1, max_size=60), st.lists(st.integers(0, 50), min_size=1, max_size=60))
@settings(max_examples=200)
@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_ks_two_sample_symmetric_and_matches_scipy(a, b):
    d = ks_two_sample(a, b)
    assert d == ks_two_sample(b, a)
    assert 0.0 <= d <= 1.0
    assert d == pytest.approx(stats.ks_2samp(a, b, method="asymp").statistic, abs=1e-12)
