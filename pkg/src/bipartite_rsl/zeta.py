"""Hurwitz zeta by direct summation plus an Euler-Maclaurin tail."""
from __future__ import annotations

import math

import numpy as np

# B_{2m} / (2m)! for m = 1..8
_BERNOULLI_RATIOS = (
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
)
_SHIFT_TO = 20.0


def hurwitz_zeta(s: float, q: float) -> float:
    """sum_{j>=0} (q + j)^(-s) for s > 1, q > 0; relative error well below 1e-10."""
    if s <= 1.0:
        raise ValueError("s must exceed 1")
    if q <= 0.0:
        raise ValueError("q must be positive")
    n_direct = max(0, math.ceil(_SHIFT_TO - q))
    head = 0.0
    if n_direct:
        head = float(np.sum((q + np.arange(n_direct, dtype=float)) ** -s))
    a = q + n_direct
    tail = a ** (1.0 - s) / (s - 1.0) + 0.5 * a**-s
    # rising factorial s (s+1) ... (s+2m-2), updated two factors per term
    rising = s
    power = a ** (-s - 1.0)
    for m, ratio in enumerate(_BERNOULLI_RATIOS, start=1):
        term = ratio * rising * power
        tail += term
        if abs(term) < 1e-17 * tail:
            break
        rising *= (s + 2 * m - 1) * (s + 2 * m)
        power /= a * a
    return head + tail
