"""Glue used by the CLI: degree analysis rows and fit documents."""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .bipartite_graph import BipartiteGraph, degree_sequence
from .degrees import NodeClass, as_degree_array
from .distributions import GeometricMixture
from .errors import NonConvergence
from .fitting import EmpiricalPMF, FitOptions, fit_geometric_mixture, fit_single_geometric, mixture_ks
from .io_formats import write_ccdf
from .netstats import compute_stats
from .projection import project_actor_degrees
from .tailfit import scan_k_min

CONVENTIONS = {
    "geometric_support": "k >= 0 failures before first success; shift adds a constant to sampled degrees",
    "p_from_mean": "p = 1/(1+mean)",
    "mixture_objective": "plain PMF least squares over observed degrees, bounded trust-region reflective",
    "k_min_scan": "steps over observed degree values, stops at first decisive BIC win for the power law",
    "power_law_verdict": "BIC win and tail spanning at least 2 decades",
    "stretched_exponential": "S(k) = exp(-(k/scale)^shape), P(k) = (S(k) - S(k+1)) / S(k_min)",
    "bic_tie": "|delta BIC| < 2 is inconclusive",
    "projection": "distinct co-actors; repeated co-appearances count once",
    "variance": "population (divide by n)",
}


def analyze_degrees(name: str, degrees) -> dict:
    arr = as_degree_array(degrees)
    row = {"name": name, "n": int(arr.size)}
    if arr.size == 0:
        row.update(mean=None, variance=None, vmr=None, zero_fraction=None, verdict="Inconclusive")
        return row
    stats = compute_stats(arr, allow_undefined_vmr=True)
    row.update(stats.to_dict())
    row["zero_fraction"] = float(np.count_nonzero(arr == 0) / arr.size)
    row["max_degree"] = int(arr.max())
    tail = scan_k_min(arr).to_dict()
    se = tail.pop("stretched_exp")
    row.update(tail)
    row["stretched_exp"] = se
    return row


def graph_degrees(graph: BipartiteGraph) -> dict:
    return {
        "movie": degree_sequence(graph, NodeClass.MOVIE).degrees,
        "actor": degree_sequence(graph, NodeClass.ACTOR).degrees,
        "projection": project_actor_degrees(graph).degrees,
    }


def write_ccdfs(degrees: dict, directory, prefix: str) -> list[str]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for key, arr in degrees.items():
        path = out / f"{prefix}_{key}_ccdf.csv"
        write_ccdf(arr, path)
        written.append(str(path))
    return written


def fit_document(degrees, side: str, k_components: int, options: FitOptions, shift: int) -> dict:
    """Fit one side's degrees; the returned dict is the fit file consumed by ``generate``.

    With ``shift`` > 0, nodes whose degree is below the shift are left out of the fit.
    """
    arr = as_degree_array(degrees)
    excluded = int(np.count_nonzero(arr < shift))
    arr = arr[arr >= shift] - shift
    pmf = EmpiricalPMF.from_degrees(arr)
    mean = pmf.mean()
    doc = {
        "side": side,
        "shift": shift,
        "k_components": k_components,
        "n": int(arr.size),
        "excluded_below_shift": excluded,
        "moments": {
            "mean": mean + shift,
            "p_one_over_one_plus_mean": 1.0 / (1.0 + mean),
            "p_one_over_mean": (1.0 / (mean + shift)) if mean + shift > 0 else None,
        },
    }
    if k_components == 1:
        mix = GeometricMixture.single(fit_single_geometric(pmf).p)
        doc.update(method="moments", mixture=mix.to_dict(), ks=mixture_ks(mix, pmf),
                   converged=True)
        return doc
    try:
        res = fit_geometric_mixture(pmf, k_components, options)
    except NonConvergence as exc:
        res = exc.best
    doc.update(
        method="least_squares",
        mixture=res.mixture.to_dict(),
        ks=res.ks_statistic,
        residual_norm=res.residual_norm,
        converged=res.converged,
        iterations=res.iterations,
        dropped=res.dropped,
        restarts=options.restarts,
        seed=options.seed,
    )
    return doc
