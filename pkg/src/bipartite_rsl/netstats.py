"""Mean, population variance and variance-to-mean ratio of a degree sequence."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .degrees import as_degree_array
from .errors import EmptyInput, UndefinedVMR


@dataclass(frozen=True)
class DegreeStats:
    mean: float
    variance: float
    vmr: float | None

    def to_dict(self) -> dict:
        return asdict(self)


def compute_stats(degrees, allow_undefined_vmr: bool = False) -> DegreeStats:
    """Population statistics with compensated (fsum) accumulation.

    Raises UndefinedVMR for an all-zero sequence unless ``allow_undefined_vmr``,
    in which case vmr is None.
    """
    arr = as_degree_array(degrees).astype(float)
    n = arr.size
    if n == 0:
        raise EmptyInput("no degrees")
    mean = math.fsum(arr) / n
    variance = math.fsum((arr - mean) ** 2) / n
    if mean == 0:
        if allow_undefined_vmr:
            return DegreeStats(mean, variance, None)
        raise UndefinedVMR("variance-to-mean ratio is undefined for mean 0")
    return DegreeStats(mean, variance, variance / mean)
