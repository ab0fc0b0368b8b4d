"""Scale-free diagnostics: discrete power-law MLE, stretched-exponential fit, k_min scan, KS."""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import optimize

from .degrees import as_degree_array
from .errors import InsufficientTail, NonConvergence
from .seeding import make_rng
from .zeta import hurwitz_zeta

MIN_TAIL = 10
GAMMA_BOUNDS = (1.01, 10.0)
BIC_TIE = 2.0
# a scale-free verdict needs the power-law region to cover this many decades
MIN_DECADES = 2.0
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class Verdict(str, enum.Enum):
    POWER_LAW = "PowerLaw"
    STRETCHED_EXPONENTIAL = "StretchedExponential"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class StretchedExpParams:
    """Survival function exp(-(k / scale) ** shape)."""

    scale: float
    shape: float

    def __post_init__(self):
        if not (self.scale > 0 and self.shape > 0):
            raise ValueError("scale and shape must be positive")


@dataclass(frozen=True)
class PowerLawFit:
    gamma: float
    ks: float
    loglik: float
    bic: float
    n_tail: int
    at_bound: bool


@dataclass(frozen=True)
class StretchedExpFit:
    params: StretchedExpParams
    loglik: float
    bic: float
    n_tail: int


@dataclass(frozen=True)
class TailFitReport:
    gamma: float | None
    k_min: int | None
    data_fraction: float
    ks_power_law: float | None
    bic_power_law: float | None
    bic_stretched_exp: float | None
    verdict: Verdict
    n_total: int = 0
    n_tail: int = 0
    stretched_exp: StretchedExpParams | None = None
    steps: int = 0
    span_decades: float = 0.0
    bic_favors_power_law: bool = False
    # the k_min with the smallest power-law KS distance, reported alongside the scan
    ks_optimal_k_min: int | None = None
    ks_optimal_gamma: float | None = None
    ks_optimal_data_fraction: float | None = None
    ks_optimal_ks: float | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict.value
        return d


class _Histogram:
    """Sorted distinct degree values with counts; tails are suffixes."""

    def __init__(self, degrees):
        arr = as_degree_array(degrees)
        self.values, self.counts = np.unique(arr, return_counts=True)
        self.total = int(arr.size)
        pos = np.where(self.values > 0, self.values, 1).astype(float)
        logs = self.counts * np.log(pos)
        self._log_suffix = np.concatenate((np.cumsum(logs[::-1])[::-1], [0.0]))
        self._count_suffix = np.concatenate((np.cumsum(self.counts[::-1])[::-1], [0]))

    def start(self, k_min: int) -> int:
        return int(np.searchsorted(self.values, k_min, side="left"))

    def n_tail(self, k_min: int) -> int:
        return int(self._count_suffix[self.start(k_min)])

    def tail(self, k_min: int):
        i = self.start(k_min)
        n = int(self._count_suffix[i])
        if k_min < 1:
            raise ValueError("k_min must be at least 1")
        if n < MIN_TAIL:
            raise InsufficientTail(f"{n} observations at or above k_min={k_min}, need {MIN_TAIL}")
        return self.values[i:], self.counts[i:], n, float(self._log_suffix[i])


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-9) -> float:
    """Maximise a unimodal ``f`` on [lo, hi]."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    # the interior golden search never evaluates the endpoints themselves
    return max((lo, x, hi), key=f)


def power_law_cdf(gamma: float, k_min: int, k_max: int) -> np.ndarray:
    """P(X <= k) for k = k_min..k_max under the zeta-normalised power law."""
    ks = np.arange(k_min, k_max + 1, dtype=float)
    return np.cumsum(ks**-gamma) / hurwitz_zeta(gamma, k_min)


def ks_against_cdf(values, counts, model_cdf: np.ndarray, k_min: int) -> float:
    """Sup distance over integers between a tail ECDF and a model CDF tabulated from k_min.

    ``values`` are the distinct tail values (ascending) and ``counts`` their multiplicities.
    """
    ecdf = np.cumsum(counts) / np.sum(counts)
    before = np.concatenate(([0.0], ecdf[:-1]))
    idx = np.asarray(values) - k_min
    at = np.abs(ecdf - model_cdf[idx])
    # just below each observed value the ECDF is still at its previous level
    prev_model = np.where(idx > 0, model_cdf[np.maximum(idx - 1, 0)], 0.0)
    below = np.abs(before - prev_model)
    return float(min(1.0, max(at.max(), below.max())))


def _power_law(hist: _Histogram, k_min: int) -> PowerLawFit:
    values, counts, n, log_sum = hist.tail(k_min)

    def ll(g):
        return -g * log_sum - n * math.log(hurwitz_zeta(g, k_min))

    gamma = golden_section_max(ll, *GAMMA_BOUNDS)
    at_bound = gamma >= GAMMA_BOUNDS[1] - 1e-6 or gamma <= GAMMA_BOUNDS[0] + 1e-6
    loglik = ll(gamma)
    cdf = power_law_cdf(gamma, k_min, int(values[-1]))
    ks = ks_against_cdf(values, counts, cdf, k_min)
    return PowerLawFit(gamma, ks, loglik, math.log(n) - 2.0 * loglik, n, at_bound)


def fit_power_law_mle(degrees, k_min: int) -> PowerLawFit:
    """Discrete power-law MLE on observations >= k_min, with the KS distance of the fit.

    gamma maximises -gamma * sum(log k) - n * log(zeta(gamma, k_min)) over GAMMA_BOUNDS.
    """
    return _power_law(_Histogram(degrees), k_min)


def _se_loglik(log_scale, shape, values, counts, k_min):
    scale = math.exp(log_scale)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        lo = (values / scale) ** shape
        hi = ((values + 1.0) / scale) ** shape
        log_mass = -lo + np.log(-np.expm1(-(hi - lo)))
        total = float(np.sum(counts * log_mass)) + counts.sum() * (k_min / scale) ** shape
    return total if math.isfinite(total) else -math.inf


_NM = {"xatol": 1e-9, "fatol": 1e-10, "maxiter": 4000}


def _stretched_exp(hist: _Histogram, k_min: int, fix_shape=None, start=None) -> StretchedExpFit:
    values, counts, n, _ = hist.tail(k_min)
    values = values.astype(float)
    counts = counts.astype(float)
    mean = float(np.dot(values, counts) / n)

    if fix_shape is not None:
        def nll1(x):
            return -_se_loglik(x[0], fix_shape, values, counts, k_min)

        best = None
        for s0 in (math.log(max(mean - k_min, 0.5)), math.log(mean)):
            res = optimize.minimize(nll1, [s0], method="Nelder-Mead", options=_NM)
            if best is None or res.fun < best.fun:
                best = res
        if not math.isfinite(best.fun):
            raise NonConvergence("stretched exponential likelihood is not finite")
        ll = -best.fun
        return StretchedExpFit(StretchedExpParams(math.exp(best.x[0]), fix_shape), ll, math.log(n) - 2.0 * ll, n)

    def nll(x):
        return -_se_loglik(x[0], math.exp(x[1]), values, counts, k_min)

    starts = []
    if start is not None:
        starts.append((math.log(start.scale), math.log(start.shape)))
        shapes = (0.3, 1.0)
    else:
        shapes = (0.1, 0.3, 0.6, 1.0, 2.0)
    for shape0 in shapes:
        # scale guess: mean excess for exponential-like tails, a fraction of k_min otherwise
        scale0 = max(mean - k_min, 0.5) if shape0 >= 1.0 else max(k_min, 1) * 0.5
        starts.append((math.log(scale0), math.log(shape0)))
    best = None
    for x0 in starts:
        res = optimize.minimize(nll, list(x0), method="Nelder-Mead", options=_NM)
        if best is None or res.fun < best.fun:
            best = res
    if not math.isfinite(best.fun):
        raise NonConvergence("stretched exponential likelihood is not finite")
    ll = -best.fun
    params = StretchedExpParams(math.exp(best.x[0]), math.exp(best.x[1]))
    return StretchedExpFit(params, ll, 2.0 * math.log(n) - 2.0 * ll, n)


def fit_stretched_exponential(degrees, k_min: int, fix_shape: float | None = None,
                              start: StretchedExpParams | None = None) -> StretchedExpFit:
    """Maximum-likelihood stretched exponential on the tail.

    P(k) = (S(k) - S(k+1)) / S(k_min) with S(k) = exp(-(k/scale)^shape). BIC counts two
    parameters, or one when ``fix_shape`` pins the shape.
    """
    return _stretched_exp(_Histogram(degrees), k_min, fix_shape, start)


def compare(pl: PowerLawFit, se: StretchedExpFit) -> Verdict:
    delta = se.bic - pl.bic
    if pl.at_bound:
        return Verdict.INCONCLUSIVE
    if abs(delta) < BIC_TIE:
        return Verdict.INCONCLUSIVE
    return Verdict.POWER_LAW if delta > 0 else Verdict.STRETCHED_EXPONENTIAL


def ks_optimal_k_min(degrees):
    """k_min minimising the power-law KS distance over observed values (tails of MIN_TAIL or more).

    Returns (k_min, PowerLawFit, data_fraction) or None when no tail is large enough.
    """
    hist = degrees if isinstance(degrees, _Histogram) else _Histogram(degrees)
    best = None
    for k_min in hist.values[hist.values >= 1]:
        k_min = int(k_min)
        n = hist.n_tail(k_min)
        if n < MIN_TAIL:
            break
        pl = _power_law(hist, k_min)
        if best is None or pl.ks < best[1].ks:
            best = (k_min, pl, n / hist.total)
    return best


def scan_k_min(degrees) -> TailFitReport:
    """Raise k_min over observed degree values until BIC prefers the power law.

    The reported gamma, k_min and data fraction come from the first k_min at which
    the power law wins. The verdict is PowerLaw only when that tail also spans
    MIN_DECADES decades; a power law confined to a sliver of the range is not scale free.
    """
    hist = _Histogram(degrees)
    total = hist.total
    empty = TailFitReport(None, None, 0.0, None, None, None, Verdict.INCONCLUSIVE, total)
    if total == 0:
        return empty
    k_max = int(hist.values[-1])
    last = None
    steps = 0
    se_won = False
    pl_won = False
    warm = None
    for k_min in hist.values[hist.values >= 1]:
        k_min = int(k_min)
        n_tail = hist.n_tail(k_min)
        if n_tail < MIN_TAIL:
            break
        steps += 1
        try:
            pl = _power_law(hist, k_min)
            se = _stretched_exp(hist, k_min, start=warm)
        except NonConvergence:
            last = (k_min, n_tail, None, None)
            continue
        warm = se.params
        verdict = compare(pl, se)
        last = (k_min, n_tail, pl, se)
        if verdict is Verdict.STRETCHED_EXPONENTIAL:
            se_won = True
        elif verdict is Verdict.POWER_LAW:
            pl_won = True
            break
    if last is None:
        return empty
    k_min, n_tail, pl, se = last
    span = math.log10(k_max / k_min)
    if pl_won and span >= MIN_DECADES:
        verdict = Verdict.POWER_LAW
    elif se_won:
        verdict = Verdict.STRETCHED_EXPONENTIAL
    else:
        verdict = Verdict.INCONCLUSIVE
    ks_opt = ks_optimal_k_min(hist)
    return TailFitReport(
        gamma=None if pl is None else pl.gamma,
        k_min=k_min,
        data_fraction=n_tail / total,
        ks_power_law=None if pl is None else pl.ks,
        bic_power_law=None if pl is None else pl.bic,
        bic_stretched_exp=None if se is None else se.bic,
        verdict=verdict,
        n_total=total,
        n_tail=n_tail,
        stretched_exp=None if se is None else se.params,
        steps=steps,
        span_decades=span,
        bic_favors_power_law=pl_won,
        ks_optimal_k_min=None if ks_opt is None else ks_opt[0],
        ks_optimal_gamma=None if ks_opt is None else ks_opt[1].gamma,
        ks_optimal_data_fraction=None if ks_opt is None else ks_opt[2],
        ks_optimal_ks=None if ks_opt is None else ks_opt[1].ks,
    )


def ks_two_sample(a, b) -> float:
    """Two-sided KS distance between the empirical CDFs of two samples."""
    a = np.sort(as_degree_array(a))
    b = np.sort(as_degree_array(b))
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be non-empty")
    grid = np.union1d(a, b)
    fa = np.searchsorted(a, grid, side="right") / a.size
    fb = np.searchsorted(b, grid, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))


def sample_discrete_power_law(gamma: float, k_min: int, n: int, rng_seed=None,
                              table_size: int = 1_000_000) -> np.ndarray:
    """Inverse-CDF sampling from the zeta-normalised power law on k >= k_min.

    Exact over a tabulated range; the residual tail beyond it uses the continuous
    approximation with a half-integer offset.
    """
    rng = make_rng(rng_seed)
    cdf = power_law_cdf(gamma, k_min, k_min + table_size - 1)
    u = rng.random(n)
    idx = np.searchsorted(cdf, u, side="right")
    out = (k_min + idx).astype(np.int64)
    beyond = idx >= cdf.size
    if np.any(beyond):
        edge = k_min + table_size - 0.5
        # survival beyond the table, rescaled to the conditional uniform
        r = (1.0 - u[beyond]) / (1.0 - cdf[-1])
        out[beyond] = np.floor(edge * r ** (-1.0 / (gamma - 1.0)) + 0.5).astype(np.int64)
    return out
