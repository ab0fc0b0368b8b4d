"""Fit a geometric (by moments) or a geometric mixture (bounded least squares) to a degree histogram."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .degrees import as_degree_array
from .distributions import GeometricMixture, GeometricParams, mixture_pmf, p_from_mean
from .errors import EmptyInput, NonConvergence
from .seeding import make_rng

P_LOWER = 1e-6
DROP_WEIGHT = 1e-8


@dataclass(frozen=True, eq=False)
class EmpiricalPMF:
    """Relative frequency of each observed degree; unobserved degrees are absent."""

    support: np.ndarray
    mass: np.ndarray
    total_count: int

    def __post_init__(self):
        support = np.asarray(self.support, dtype=np.int64)
        mass = np.asarray(self.mass, dtype=float)
        if support.shape != mass.shape:
            raise ValueError("support and mass must have equal length")
        if support.size:
            if np.any(np.diff(support) <= 0):
                raise ValueError("support must be strictly ascending")
            if np.any(mass <= 0) or abs(mass.sum() - 1.0) > 1e-9:
                raise ValueError("masses must be positive and sum to one")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "mass", mass)

    @classmethod
    def from_degrees(cls, degrees) -> "EmpiricalPMF":
        arr = as_degree_array(degrees)
        if arr.size == 0:
            return cls(np.array([], dtype=np.int64), np.array([]), 0)
        values, counts = np.unique(arr, return_counts=True)
        return cls(values, counts / arr.size, int(arr.size))

    def mean(self) -> float:
        return float(np.dot(self.support, self.mass))

    def cdf(self, k) -> np.ndarray:
        """P(X <= k) for integer ``k``."""
        idx = np.searchsorted(self.support, np.asarray(k), side="right")
        cum = np.concatenate(([0.0], np.cumsum(self.mass)))
        return cum[idx]


@dataclass(frozen=True)
class FitOptions:
    restarts: int = 16
    gtol: float = 1e-8
    xtol: float = 1e-10
    max_nfev: int = 5000
    seed: int = 0
    # optional explicit starting point, as (p, weight) pairs; used as the first restart
    initial: tuple | None = None


@dataclass(frozen=True)
class MixtureFitResult:
    mixture: GeometricMixture
    residual_norm: float
    ks_statistic: float
    iterations: int
    converged: bool
    dropped: int = 0
    restarts_converged: int = 0


def fit_single_geometric(pmf: EmpiricalPMF) -> GeometricParams:
    """Method of moments: p = 1 / (1 + mean)."""
    if pmf.support.size == 0:
        raise EmptyInput("empirical PMF has no mass")
    return p_from_mean(pmf.mean())


def mixture_ks(mix: GeometricMixture, pmf: EmpiricalPMF) -> float:
    """KS distance between the normalised mixture CDF and the empirical CDF."""
    ks = np.arange(0, int(pmf.support.max()) + 1)
    return float(min(1.0, np.max(np.abs(mix.cdf(ks) - pmf.cdf(ks)))))


def _residuals(x, k, target, n_comp):
    p, a = x[:n_comp], x[n_comp:]
    return (a * p) @ ((1.0 - p)[:, None] ** k[None, :]) - target


def _jacobian(x, k, target, n_comp):
    p, a = x[:n_comp], x[n_comp:]
    q = (1.0 - p)[:, None]
    pow_k = q ** k[None, :]
    # d/dp of (1-p)^k p = (1-p)^k - k p (1-p)^(k-1); the k = 0 column is just 1
    pow_km1 = np.where(k[None, :] > 0, q ** np.maximum(k - 1.0, 0.0)[None, :], 0.0)
    d_p = a[:, None] * (pow_k - k[None, :] * p[:, None] * pow_km1)
    d_a = p[:, None] * pow_k
    return np.vstack([d_p, d_a]).T


def _starts(n_comp: int, options: FitOptions):
    rng = make_rng(options.seed)
    starts = []
    if options.initial is not None:
        init = np.asarray(options.initial, dtype=float)
        starts.append(np.concatenate([init[:, 0], init[:, 1]]))
    for _ in range(max(options.restarts - len(starts), 0)):
        p0 = 10.0 ** rng.uniform(-3.0, 0.0, n_comp)
        a0 = rng.uniform(0.0, 1.0, n_comp)
        a0 = a0 / a0.sum()
        starts.append(np.concatenate([p0, a0]))
    return starts


def _solve(x0, k, target, n_comp, options):
    lower = np.concatenate([np.full(n_comp, P_LOWER), np.zeros(n_comp)])
    upper = np.concatenate([np.ones(n_comp), np.full(n_comp, np.inf)])
    x0 = np.clip(x0, lower, upper)
    return optimize.least_squares(
        _residuals, x0, jac=_jacobian, bounds=(lower, upper), method="trf",
        gtol=options.gtol, xtol=options.xtol, ftol=None, max_nfev=options.max_nfev,
        args=(k, target, n_comp),
    )


def fit_geometric_mixture(pmf: EmpiricalPMF, k_components: int, options: FitOptions = FitOptions()) -> MixtureFitResult:
    """Least-squares fit of sum a_i (1-p_i)^k p_i to the empirical mass at each observed degree.

    Bounds: P_LOWER <= p_i <= 1, a_i >= 0. The best of all restarts wins; components are
    returned in ascending p and those with weight below DROP_WEIGHT are removed.
    Raises NonConvergence (carrying the best result) when no restart meets gtol/xtol.
    """
    if k_components < 1:
        raise ValueError("k_components must be at least 1")
    if pmf.support.size == 0:
        raise EmptyInput("empirical PMF has no mass")
    if pmf.support.size < 2 * k_components:
        raise ValueError(f"need at least {2 * k_components} distinct degrees, have {pmf.support.size}")
    k = pmf.support.astype(float)
    target = pmf.mass
    best = None
    n_ok = 0
    for x0 in _starts(k_components, options):
        res = _solve(x0, k, target, k_components, options)
        ok = res.status in (1, 3, 4)
        n_ok += ok
        key = (not ok, res.cost)
        if best is None or key < best[0]:
            best = (key, res, ok)
    _, res, ok = best
    result = _package(res, k_components, pmf, ok, n_ok)
    if not ok:
        raise NonConvergence("no restart met the gradient or step tolerance", best=result)
    return result


def _package(res, n_comp, pmf, ok, n_ok) -> MixtureFitResult:
    p, a = res.x[:n_comp], res.x[n_comp:]
    keep = a >= DROP_WEIGHT
    if not np.any(keep):
        keep = a == a.max()
    order = np.argsort(p[keep], kind="stable")
    mixture = GeometricMixture.from_arrays(a[keep][order], p[keep][order])
    return MixtureFitResult(
        mixture=mixture,
        residual_norm=float(np.linalg.norm(res.fun)),
        ks_statistic=mixture_ks(mixture, pmf),
        iterations=int(res.nfev),
        converged=bool(ok),
        dropped=int(np.count_nonzero(~keep)),
        restarts_converged=int(n_ok),
    )


def mixture_residual_norm(mix: GeometricMixture, pmf: EmpiricalPMF) -> float:
    return float(np.linalg.norm(mixture_pmf(mix, pmf.support) - pmf.mass))
