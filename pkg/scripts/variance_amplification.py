"""Variance-to-mean ratio of each degree distribution and of the projection, across network sizes.

    python3 scripts/variance_amplification.py --scales 0.01 0.05 0.1
"""
import argparse

from bipartite_rsl import defaults
from bipartite_rsl.bipartite_graph import degree_sequence, generate_network
from bipartite_rsl.netstats import compute_stats
from bipartite_rsl.projection import project_actor_degrees


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scales", type=float, nargs="+", default=[0.01, 0.05, 0.1])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print("scale  shift  VMR(movie)  VMR(actor)  VMR(projection)  ratio")
    for scale in args.scales:
        for shift in (0, 1):
            g = generate_network(defaults.movie_distribution(shifted=bool(shift)), defaults.actor_mixture(),
                                 round(defaults.NOMINAL_N_MOVIES * scale), round(defaults.NOMINAL_N_ACTORS * scale),
                                 args.seed, shift=shift)
            vm = compute_stats(degree_sequence(g, "movie")).vmr
            va = compute_stats(degree_sequence(g, "actor")).vmr
            vp = compute_stats(project_actor_degrees(g)).vmr
            print(f"{scale:5.3f}  {shift:5d}  {vm:10.2f}  {va:10.2f}  {vp:15.1f}  {vp / max(vm, va):5.1f}")


if __name__ == "__main__":
    main()
