"""Bipartite multigraph and the stub-matching configuration model.

Left nodes are movies, right nodes are actors. Node identity is positional.
"""
from __future__ import annotations

import enum
from dataclasses import asdict, dataclass

import numpy as np

from .degrees import DegreeSequence, NodeClass
from .distributions import GeometricMixture, sample_degrees
from .seeding import make_rng, stage_seed


class BalancePolicy(str, enum.Enum):
    TRIM_RANDOM = "trim-random"
    RESAMPLE_LAST = "resample-last"
    PAD = "pad"


@dataclass(frozen=True)
class BalanceAudit:
    policy: str
    left_stubs: int
    right_stubs: int
    trimmed: int = 0
    padded: int = 0
    side: str | None = None  # side that was adjusted

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True, eq=False)
class BipartiteGraph:
    n_left: int
    n_right: int
    left: np.ndarray  # movie index of each link
    right: np.ndarray  # actor index of each link
    audit: BalanceAudit | None = None

    def __post_init__(self):
        left = np.asarray(self.left, dtype=np.int64)
        right = np.asarray(self.right, dtype=np.int64)
        if left.shape != right.shape or left.ndim != 1:
            raise ValueError("link endpoint arrays must be 1-D and equal length")
        if left.size:
            if left.min() < 0 or left.max() >= self.n_left:
                raise ValueError("movie index out of range")
            if right.min() < 0 or right.max() >= self.n_right:
                raise ValueError("actor index out of range")
        left.setflags(write=False)
        right.setflags(write=False)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @classmethod
    def empty(cls, n_left: int, n_right: int) -> "BipartiteGraph":
        return cls(n_left, n_right, np.array([], dtype=np.int64), np.array([], dtype=np.int64))

    @property
    def n_links(self) -> int:
        return int(self.left.size)

    def link_multiset(self) -> list[tuple[int, int]]:
        return sorted(zip(self.left.tolist(), self.right.tolist()))


def degree_sequence(graph: BipartiteGraph, side) -> DegreeSequence:
    """Per-node link counts on one side; multi-edges count with multiplicity."""
    side = NodeClass(side)
    if side is NodeClass.MOVIE:
        return DegreeSequence(np.bincount(graph.left, minlength=graph.n_left), side)
    return DegreeSequence(np.bincount(graph.right, minlength=graph.n_right), side)


def _stubs(degrees: np.ndarray) -> np.ndarray:
    return np.repeat(np.arange(degrees.size, dtype=np.int64), degrees)


def _remove_random_stubs(degrees, count, rng):
    stubs = _stubs(degrees)
    drop = rng.choice(stubs.size, size=count, replace=False)
    return degrees - np.bincount(stubs[drop], minlength=degrees.size)


def _remove_from_last(degrees, count):
    out = degrees.copy()
    i = out.size - 1
    while count > 0:
        take = min(out[i], count)
        out[i] -= take
        count -= take
        i -= 1
    return out


def _pad_random(degrees, count, rng):
    return degrees + np.bincount(rng.integers(0, degrees.size, size=count), minlength=degrees.size)


def balance_degrees(left: np.ndarray, right: np.ndarray, policy: BalancePolicy, rng):
    """Make stub totals equal. Returns (left, right, audit).

    trim-random drops uniformly random stubs from the surplus side; resample-last absorbs
    the difference in the surplus side's last nodes; pad adds stubs to uniformly random
    nodes of the deficient side.
    """
    policy = BalancePolicy(policy)
    tl, tr = int(left.sum()), int(right.sum())
    diff = tl - tr
    audit = dict(policy=policy.value, left_stubs=tl, right_stubs=tr)
    if diff == 0:
        return left, right, BalanceAudit(**audit)
    surplus_is_left = diff > 0
    gap = abs(diff)
    if policy is BalancePolicy.PAD:
        if surplus_is_left:
            right = _pad_random(right, gap, rng)
        else:
            left = _pad_random(left, gap, rng)
        side = NodeClass.ACTOR if surplus_is_left else NodeClass.MOVIE
        return left, right, BalanceAudit(**audit, padded=gap, side=side.value)
    shrink = _remove_random_stubs if policy is BalancePolicy.TRIM_RANDOM else None
    if surplus_is_left:
        left = shrink(left, gap, rng) if shrink else _remove_from_last(left, gap)
    else:
        right = shrink(right, gap, rng) if shrink else _remove_from_last(right, gap)
    side = NodeClass.MOVIE if surplus_is_left else NodeClass.ACTOR
    return left, right, BalanceAudit(**audit, trimmed=gap, side=side.value)


def configuration_link(left: DegreeSequence, right: DegreeSequence, rng_seed=None,
                       balance=BalancePolicy.TRIM_RANDOM) -> BipartiteGraph:
    """Uniform random perfect matching of movie stubs to actor stubs.

    Stubs are laid out node by node on both sides and the actor stub array is shuffled.
    Multi-edges are kept. The balance policy runs first if stub totals differ.
    """
    rng = make_rng(rng_seed)
    ld = np.asarray(getattr(left, "degrees", left), dtype=np.int64)
    rd = np.asarray(getattr(right, "degrees", right), dtype=np.int64)
    if ld.size == 0 or rd.size == 0:
        raise ValueError("both degree sequences must be non-empty")
    ld, rd, audit = balance_degrees(ld, rd, balance, rng)
    left_stubs = _stubs(ld)
    right_stubs = rng.permutation(_stubs(rd))
    return BipartiteGraph(ld.size, rd.size, left_stubs, right_stubs, audit)


def generate_network(movie_dist: GeometricMixture, actor_dist: GeometricMixture, n_movies: int,
                     n_actors: int, rng_seed: int = 0, balance=BalancePolicy.TRIM_RANDOM,
                     shift=0) -> BipartiteGraph:
    """Sample both degree sequences and link them.

    ``shift`` is added to every sampled degree; pass a (movie, actor) pair to shift the
    sides differently.
    """
    if n_movies < 1 or n_actors < 1:
        raise ValueError("node counts must be at least 1")
    movie_shift, actor_shift = (shift, shift) if np.isscalar(shift) else shift
    movies = sample_degrees(movie_dist, n_movies, stage_seed(rng_seed, "movie_degrees"),
                            NodeClass.MOVIE, shift=int(movie_shift))
    actors = sample_degrees(actor_dist, n_actors, stage_seed(rng_seed, "actor_degrees"),
                            NodeClass.ACTOR, shift=int(actor_shift))
    return configuration_link(movies, actors, stage_seed(rng_seed, "matching"), balance)
