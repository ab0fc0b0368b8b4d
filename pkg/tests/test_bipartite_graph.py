from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipartite_rsl import defaults
from bipartite_rsl.bipartite_graph import (
    BalancePolicy,
    BipartiteGraph,
    configuration_link,
    degree_sequence,
    generate_network,
)
from bipartite_rsl.degrees import DegreeSequence, NodeClass
from bipartite_rsl.distributions import GeometricMixture


def movies(*d):
    return DegreeSequence(list(d), NodeClass.MOVIE)


def actors(*d):
    return DegreeSequence(list(d), NodeClass.ACTOR)


def test_forced_matching():
    g = configuration_link(movies(2), actors(1, 1), 0)
    assert g.link_multiset() == [(0, 0), (0, 1)]
    assert degree_sequence(g, "movie").degrees.tolist() == [2]
    assert degree_sequence(g, "actor").degrees.tolist() == [1, 1]


def test_trim_random_surplus():
    g = configuration_link(movies(3), actors(1, 1, 1, 1), 5, BalancePolicy.TRIM_RANDOM)
    right = degree_sequence(g, "actor").degrees
    assert g.n_links == 3
    assert sorted(right.tolist()) == [0, 1, 1, 1]
    assert g.audit.trimmed == 1 and g.audit.side == "actor"


def test_resample_last_and_pad():
    g = configuration_link(movies(3), actors(1, 1, 1, 1), 5, BalancePolicy.RESAMPLE_LAST)
    assert degree_sequence(g, "actor").degrees.tolist() == [1, 1, 1, 0]
    g = configuration_link(movies(3), actors(1, 1, 1, 1), 5, BalancePolicy.PAD)
    assert degree_sequence(g, "movie").degrees.tolist() == [4]
    assert g.audit.padded == 1


def test_empty_graph_degrees():
    g = BipartiteGraph.empty(2, 3)
    assert degree_sequence(g, NodeClass.MOVIE).degrees.tolist() == [0, 0]
    assert degree_sequence(g, NodeClass.ACTOR).degrees.tolist() == [0, 0, 0]


def test_graph_rejects_bad_index():
    with pytest.raises(ValueError):
        BipartiteGraph(1, 1, [0], [1])


def test_multi_edges_counted_with_multiplicity():
    g = BipartiteGraph(1, 1, [0, 0], [0, 0])
    assert degree_sequence(g, "actor").degrees.tolist() == [2]


@given(st.lists(st.integers(0, 6), min_size=1, max_size=30), st.integers(0, 2**32 - 1))
@settings(max_examples=100)
def test_conserves_degrees_when_totals_match(left, seed):
    total = sum(left)
    rng = np.random.default_rng(seed)
    n_right = max(1, total)
    right = np.bincount(rng.integers(0, n_right, size=total), minlength=n_right)
    g = configuration_link(movies(*left), actors(*right.tolist()), seed)
    assert degree_sequence(g, "movie").degrees.tolist() == left
    assert degree_sequence(g, "actor").degrees.tolist() == right.tolist()
    assert g.n_links == total


@given(st.lists(st.integers(0, 6), min_size=1, max_size=20), st.lists(st.integers(0, 6), min_size=1, max_size=20),
       st.sampled_from(list(BalancePolicy)), st.integers(0, 1000))
@settings(max_examples=150)
def test_balanced_totals_equal_link_count(left, right, policy, seed):
    g = configuration_link(movies(*left), actors(*right), seed, policy)
    lt = degree_sequence(g, "movie").total
    rt = degree_sequence(g, "actor").total
    assert lt == rt == g.n_links
    assert g.audit.trimmed + g.audit.padded == abs(sum(left) - sum(right))


def test_same_seed_same_links():
    a = configuration_link(movies(3, 2, 5), actors(4, 4, 2), 42)
    b = configuration_link(movies(3, 2, 5), actors(4, 4, 2), 42)
    assert a.link_multiset() == b.link_multiset()
    assert np.array_equal(a.right, b.right)


def test_matching_uniformity():
    counts = Counter()
    for seed in range(10_000):
        g = configuration_link(movies(1, 1), actors(1, 1), seed)
        counts[tuple(g.right.tolist())] += 1
    assert set(counts) == {(0, 1), (1, 0)}
    for c in counts.values():
        assert abs(c / 10_000 - 0.5) <= 0.02


def test_generate_degenerate_is_empty():
    g = generate_network(GeometricMixture.single(1.0), GeometricMixture.single(1.0), 1, 1, 0)
    assert g.n_links == 0
    assert g.n_left == 1 and g.n_right == 1


def test_generate_deterministic():
    a = generate_network(defaults.movie_distribution(), defaults.actor_mixture(), 50, 150, 7)
    b = generate_network(defaults.movie_distribution(), defaults.actor_mixture(), 50, 150, 7)
    assert a.link_multiset() == b.link_multiset()


def expected_trim_fraction(movie_mean, actor_mean, n_movies, n_actors):
    """Oracle: |difference of expected stub totals| over the larger expected total."""
    lt, rt = movie_mean * n_movies, actor_mean * n_actors
    return abs(lt - rt) / max(lt, rt)


def test_trim_fraction_follows_expected_totals():
    movie, actor = defaults.movie_distribution(), defaults.actor_mixture()
    n_m, n_a = 1000, 10_000
    g = generate_network(movie, actor, n_m, n_a, 11)
    total = g.audit.left_stubs + g.audit.right_stubs
    observed = g.audit.trimmed / max(g.audit.left_stubs, g.audit.right_stubs)
    oracle = expected_trim_fraction(movie.mean(), actor.mean(), n_m, n_a)
    assert observed == pytest.approx(oracle, abs=0.03)
    # with counts in the ratio of the two means the totals nearly balance
    n_a_balanced = round(n_m * movie.mean() / actor.mean())
    g = generate_network(movie, actor, n_m, n_a_balanced, 11)
    assert g.audit.trimmed / (g.audit.left_stubs + g.audit.right_stubs) < 0.05
    assert total > 0


def test_shifted_generation_keeps_degrees_positive():
    g = generate_network(defaults.movie_distribution(True), defaults.actor_mixture(), 200, 600, 3,
                         balance=BalancePolicy.PAD, shift=1)
    assert degree_sequence(g, "movie").degrees.min() >= 1
    assert degree_sequence(g, "actor").degrees.min() >= 1
