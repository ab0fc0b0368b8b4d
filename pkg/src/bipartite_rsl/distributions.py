"""Geometric distribution on k = 0, 1, 2, ... and weighted mixtures of geometrics."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .degrees import DegreeSequence, NodeClass
from .seeding import make_rng


@dataclass(frozen=True)
class GeometricParams:
    """Success probability ``p`` of each Bernoulli trial."""

    p: float

    def __post_init__(self):
        if not (0.0 < self.p <= 1.0):
            raise ValueError(f"p must lie in (0, 1], got {self.p}")


@dataclass(frozen=True)
class MixtureComponent:
    weight: float
    params: GeometricParams

    def __post_init__(self):
        if not self.weight >= 0:
            raise ValueError(f"weight must be non-negative, got {self.weight}")

    @property
    def p(self) -> float:
        return self.params.p


@dataclass(frozen=True)
class GeometricMixture:
    """Weighted geometric components. Weights are kept as fitted and normalised on demand."""

    components: tuple[MixtureComponent, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a mixture needs at least one component")
        if not any(c.weight > 0 for c in comps):
            raise ValueError("at least one component must have positive weight")
        object.__setattr__(self, "components", comps)

    @classmethod
    def single(cls, p: float) -> "GeometricMixture":
        return cls((MixtureComponent(1.0, GeometricParams(p)),))

    @classmethod
    def from_arrays(cls, weights, ps) -> "GeometricMixture":
        return cls(tuple(MixtureComponent(float(a), GeometricParams(float(p))) for a, p in zip(weights, ps)))

    @property
    def weights(self) -> np.ndarray:
        return np.array([c.weight for c in self.components], dtype=float)

    @property
    def ps(self) -> np.ndarray:
        return np.array([c.p for c in self.components], dtype=float)

    @property
    def normalized_weights(self) -> np.ndarray:
        w = self.weights
        return w / w.sum()

    def mean(self) -> float:
        """Mean of the normalised mixture."""
        return float(np.sum(self.normalized_weights * (1.0 - self.ps) / self.ps))

    def variance(self) -> float:
        w, p = self.normalized_weights, self.ps
        second = np.sum(w * (1.0 - p) * (2.0 - p) / p**2)
        return float(second - self.mean() ** 2)

    def cdf(self, k) -> np.ndarray:
        """Normalised CDF P(X <= k)."""
        k = np.asarray(k, dtype=float)
        tails = (1.0 - self.ps)[:, None] ** (k.reshape(-1) + 1.0)[None, :]
        out = 1.0 - self.normalized_weights @ tails
        return out.reshape(k.shape)

    def to_dict(self) -> dict:
        return {"components": [{"p": c.p, "weight": c.weight} for c in self.components]}

    @classmethod
    def from_dict(cls, data: dict) -> "GeometricMixture":
        comps = data["components"]
        return cls.from_arrays([c["weight"] for c in comps], [c["p"] for c in comps])


def geometric_pmf(params: GeometricParams, k):
    """(1 - p)^k * p; vectorised over ``k``."""
    k = np.asarray(k)
    if np.any(k < 0):
        raise ValueError("k must be non-negative")
    out = (1.0 - params.p) ** k * params.p
    return float(out) if out.ndim == 0 else out


def geometric_mean(params: GeometricParams) -> float:
    return (1.0 - params.p) / params.p


def p_from_mean(mu: float) -> GeometricParams:
    if mu < 0:
        raise ValueError("mean must be non-negative")
    return GeometricParams(1.0 / (1.0 + mu))


def mixture_pmf(mix: GeometricMixture, k, normalized: bool = False):
    """Sum of a_i (1 - p_i)^k p_i, optionally divided by the total weight."""
    k = np.asarray(k)
    if np.any(k < 0):
        raise ValueError("k must be non-negative")
    w = mix.normalized_weights if normalized else mix.weights
    p = mix.ps
    kk = k.reshape(-1).astype(float)
    out = (w * p) @ ((1.0 - p)[:, None] ** kk[None, :])
    out = out.reshape(k.shape)
    return float(out) if out.ndim == 0 else out


def sample_geometric(p, u) -> np.ndarray:
    """Inverse-CDF draw of failures before the first success for uniforms ``u`` in (0, 1]."""
    p = np.broadcast_to(np.asarray(p, dtype=float), np.shape(u))
    out = np.zeros(np.shape(u), dtype=np.int64)
    live = p < 1.0
    if np.any(live):
        out[live] = np.floor(np.log(u[live]) / np.log1p(-p[live])).astype(np.int64)
    return out


def sample_degrees(mix: GeometricMixture, n: int, rng_seed=None, class_label=NodeClass.ACTOR,
                   shift: int = 0) -> DegreeSequence:
    """Draw ``n`` degrees: pick a component by weight, then a geometric count.

    ``shift`` is added to every draw (1 gives the support-from-one variant).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    rng = make_rng(rng_seed)
    w = mix.normalized_weights
    if len(w) == 1:
        comp = np.zeros(n, dtype=np.int64)
    else:
        comp = rng.choice(len(w), size=n, p=w)
    u = 1.0 - rng.random(n)  # (0, 1]
    draws = sample_geometric(mix.ps[comp], u)
    return DegreeSequence(draws + shift, class_label)
