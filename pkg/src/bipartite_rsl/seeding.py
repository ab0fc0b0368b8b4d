"""Root-seed expansion so every pipeline stage gets its own reproducible stream."""
from __future__ import annotations

import numpy as np

# Stage counters are part of the reproducibility contract; append, never reorder.
STAGES = ("movie_degrees", "actor_degrees", "balance", "matching", "fit", "relink")


def stage_seed(root: int, stage: str) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(root), STAGES.index(stage)])


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
