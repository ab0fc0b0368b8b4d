"""Reference parameters for the actor-movie model."""
from .distributions import GeometricMixture

# movies: one geometric; p = 1/(1+11.5) on k >= 0, or p = 1/11.5 on k >= 1
MOVIE_P = 0.08
MOVIE_P_SHIFTED = 0.087
# actors: four geometric components (weights as fitted, not normalised)
ACTOR_P = (0.046, 0.184, 0.528, 0.940)
ACTOR_WEIGHTS = (0.094, 0.178, 0.311, 0.562)

# Node counts used when no reference network is supplied. The ratio matches the two
# mean degrees (11.5 actors per movie, 3.8 movies per actor); the absolute size is nominal.
NOMINAL_N_MOVIES = 100_000
NOMINAL_N_ACTORS = 302_632


def actor_mixture() -> GeometricMixture:
    return GeometricMixture.from_arrays(ACTOR_WEIGHTS, ACTOR_P)


def movie_distribution(shifted: bool = False) -> GeometricMixture:
    return GeometricMixture.single(MOVIE_P_SHIFTED if shifted else MOVIE_P)
