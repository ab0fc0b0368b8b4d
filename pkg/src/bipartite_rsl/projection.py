"""Actor-actor projection of the bipartite graph."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .bipartite_graph import BipartiteGraph
from .errors import OutputTooLarge

DEFAULT_PAIR_CAP = 50_000_000
# actor rows per block; bounds peak memory of the co-appearance product
_BLOCK = 20_000


@dataclass(frozen=True, eq=False)
class ProjectedDegrees:
    """Number of distinct co-actors of every actor."""

    degrees: np.ndarray

    def __len__(self):
        return int(self.degrees.size)


def _incidence(graph: BipartiteGraph) -> sparse.csr_matrix:
    """Actor x movie 0/1 matrix; repeated links collapse to one."""
    data = np.ones(graph.n_links, dtype=np.int32)
    m = sparse.csr_matrix((data, (graph.right, graph.left)), shape=(graph.n_right, graph.n_left))
    m.sum_duplicates()
    m.data[:] = 1
    return m


def _blocks(graph: BipartiteGraph):
    inc = _incidence(graph)
    inc_t = inc.T.tocsr()
    for start in range(0, graph.n_right, _BLOCK):
        stop = min(start + _BLOCK, graph.n_right)
        co = (inc[start:stop] @ inc_t).tocsr()
        yield start, stop, co


def project_actor_degrees(graph: BipartiteGraph) -> ProjectedDegrees:
    """degrees[i] = number of distinct actors j != i sharing at least one movie with i."""
    out = np.zeros(graph.n_right, dtype=np.int64)
    for start, stop, co in _blocks(graph):
        counts = np.diff(co.indptr).astype(np.int64)
        # an actor with any movie sees itself once on the diagonal
        has_self = co.diagonal(k=start) > 0 if co.shape[1] else np.zeros(stop - start, bool)
        out[start:stop] = counts - has_self
    return ProjectedDegrees(out)


def project_edge_list(graph: BipartiteGraph, cap: int = DEFAULT_PAIR_CAP) -> list[tuple[int, int]]:
    """Each unordered co-appearing actor pair once, as (i, j) with i < j, sorted."""
    n_pairs = int(project_actor_degrees(graph).degrees.sum()) // 2
    if n_pairs > cap:
        raise OutputTooLarge(f"projection has {n_pairs} pairs, cap is {cap}")
    pairs = []
    for start, _, co in _blocks(graph):
        coo = co.tocoo()
        rows = coo.row.astype(np.int64) + start
        cols = coo.col.astype(np.int64)
        keep = rows < cols
        pairs.append(np.stack([rows[keep], cols[keep]], axis=1))
    if not pairs:
        return []
    arr = np.concatenate(pairs)
    arr = arr[np.lexsort((arr[:, 1], arr[:, 0]))]
    return [tuple(p) for p in arr.tolist()]
