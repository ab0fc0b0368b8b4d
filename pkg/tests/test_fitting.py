import numpy as np
import pytest
from scipy import optimize

from bipartite_rsl.distributions import GeometricMixture, mixture_pmf, sample_degrees
from bipartite_rsl.errors import EmptyInput, NonConvergence
from bipartite_rsl.fitting import (
    EmpiricalPMF,
    FitOptions,
    _jacobian,
    _residuals,
    fit_geometric_mixture,
    fit_single_geometric,
    mixture_residual_norm,
)


def exact_pmf(mix, k_max=600):
    k = np.arange(0, k_max)
    m = mixture_pmf(mix, k, normalized=True)
    return EmpiricalPMF(k, m / m.sum(), 10**6)


def test_empirical_pmf_from_degrees():
    pmf = EmpiricalPMF.from_degrees([1, 1, 3])
    assert pmf.support.tolist() == [1, 3]
    assert pmf.mass.tolist() == pytest.approx([2 / 3, 1 / 3])
    assert pmf.total_count == 3
    assert pmf.cdf([0, 1, 2, 3]).tolist() == pytest.approx([0, 2 / 3, 2 / 3, 1])


def test_empirical_pmf_invariants():
    with pytest.raises(ValueError):
        EmpiricalPMF([2, 1], [0.5, 0.5], 2)
    with pytest.raises(ValueError):
        EmpiricalPMF([1, 2], [0.5, 0.4], 2)


def test_single_geometric_point_mass():
    assert fit_single_geometric(EmpiricalPMF.from_degrees([1] * 10)).p == 0.5


def test_single_geometric_from_samples():
    d = sample_degrees(GeometricMixture.single(0.25), 10**6, 0)
    assert 0.245 <= fit_single_geometric(EmpiricalPMF.from_degrees(d)).p <= 0.255


def test_single_geometric_empty():
    with pytest.raises(EmptyInput):
        fit_single_geometric(EmpiricalPMF.from_degrees([]))


def test_two_component_recovery():
    truth = GeometricMixture.from_arrays([0.7, 0.3], [0.9, 0.1])
    res = fit_geometric_mixture(exact_pmf(truth), 2)
    assert res.converged
    p = res.mixture.ps
    a = res.mixture.weights
    assert p.tolist() == sorted(p.tolist())
    assert p == pytest.approx([0.1, 0.9], abs=0.02)
    assert a == pytest.approx([0.3, 0.7], abs=0.05)
    assert 0 <= res.ks_statistic < 1e-6


def test_one_component_on_exact_geometric():
    res = fit_geometric_mixture(exact_pmf(GeometricMixture.single(0.3), 200), 1)
    assert res.mixture.ps[0] == pytest.approx(0.3, abs=0.01)


def test_single_and_mixture_agree_on_geometric_data():
    d = sample_degrees(GeometricMixture.single(0.2), 10**5, 1)
    pmf = EmpiricalPMF.from_degrees(d)
    assert fit_geometric_mixture(pmf, 1).mixture.ps[0] == pytest.approx(fit_single_geometric(pmf).p, abs=0.02)


def test_four_component_fit_on_sampled_mixture():
    truth = GeometricMixture.from_arrays([0.094, 0.178, 0.311, 0.562], [0.046, 0.184, 0.528, 0.940])
    d = sample_degrees(truth, 200_000, 2)
    res = fit_geometric_mixture(EmpiricalPMF.from_degrees(d), 4)
    assert res.ks_statistic < 0.05
    assert res.mixture.ps[0] == pytest.approx(0.046, rel=0.1)


def test_support_size_precondition():
    with pytest.raises(ValueError):
        fit_geometric_mixture(EmpiricalPMF.from_degrees([0, 1, 2]), 2)


def test_jacobian_matches_finite_differences():
    k = np.arange(0, 40, dtype=float)
    target = np.zeros_like(k)
    x = np.array([0.2, 0.7, 1.0, 0.4, 0.5, 0.1])
    jac = _jacobian(x, k, target, 3)
    fd = optimize.approx_fprime(x, lambda z: _residuals(z, k, target, 3)[7], 1e-7)
    assert jac[7] == pytest.approx(fd, abs=1e-5)
    # p = 1 with k = 1: derivative of (1-p) p is 1 - 2p = -1
    assert jac[1, 2] == pytest.approx(-0.1)


def test_permutation_invariance():
    truth = GeometricMixture.from_arrays([0.5, 0.3, 0.2], [0.8, 0.3, 0.05])
    pmf = exact_pmf(truth)
    init = ((0.9, 0.3), (0.2, 0.3), (0.01, 0.3))
    a = fit_geometric_mixture(pmf, 3, FitOptions(restarts=1, initial=init))
    b = fit_geometric_mixture(pmf, 3, FitOptions(restarts=1, initial=init[::-1]))
    assert a.residual_norm == pytest.approx(b.residual_norm, abs=1e-9)


def test_residual_never_increases_with_budget():
    truth = GeometricMixture.from_arrays([0.6, 0.4], [0.7, 0.05])
    pmf = exact_pmf(truth)
    init = ((0.3, 0.5), (0.9, 0.5))
    norms = []
    for budget in range(1, 25):
        opts = FitOptions(restarts=1, initial=init, max_nfev=budget)
        try:
            res = fit_geometric_mixture(pmf, 2, opts)
        except NonConvergence as exc:
            res = exc.best
        norms.append(res.residual_norm)
    assert all(b <= a + 1e-15 for a, b in zip(norms, norms[1:]))


def test_non_convergence_carries_best_effort():
    truth = GeometricMixture.from_arrays([0.6, 0.4], [0.7, 0.05])
    with pytest.raises(NonConvergence) as info:
        fit_geometric_mixture(exact_pmf(truth), 2, FitOptions(restarts=2, max_nfev=1))
    assert info.value.best is not None
    assert np.isfinite(info.value.best.residual_norm)


def test_tiny_weights_dropped():
    res = fit_geometric_mixture(exact_pmf(GeometricMixture.single(0.4), 200), 3, FitOptions(seed=3))
    assert len(res.mixture.components) + res.dropped == 3
    assert all(c.weight >= 1e-8 for c in res.mixture.components)


def test_residual_helper():
    truth = GeometricMixture.single(0.5)
    pmf = exact_pmf(truth, 80)
    assert mixture_residual_norm(truth, pmf) < 1e-12
