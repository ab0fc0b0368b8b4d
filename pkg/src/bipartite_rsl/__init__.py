"""Bipartite randomly stopped linking: geometric-mixture degree models, configuration-model
linking, actor-actor projection and power-law tail diagnostics."""
from .bipartite_graph import BalancePolicy, BipartiteGraph, configuration_link, degree_sequence, generate_network
from .degrees import DegreeSequence, NodeClass
from .distributions import (
    GeometricMixture,
    GeometricParams,
    MixtureComponent,
    geometric_mean,
    geometric_pmf,
    mixture_pmf,
    p_from_mean,
    sample_degrees,
)
from .fitting import EmpiricalPMF, FitOptions, MixtureFitResult, fit_geometric_mixture, fit_single_geometric
from .netstats import DegreeStats, compute_stats
from .projection import ProjectedDegrees, project_actor_degrees, project_edge_list
from .tailfit import (
    TailFitReport,
    Verdict,
    fit_power_law_mle,
    fit_stretched_exponential,
    ks_two_sample,
    scan_k_min,
)

__version__ = "0.1.0"
