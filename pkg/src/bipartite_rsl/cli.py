"""Command-line front end: analyze, relink, generate, fit."""
from __future__ import annotations

import argparse
import json
import sys

from . import defaults
from .bipartite_graph import BalancePolicy, configuration_link, generate_network
from .degrees import DegreeSequence, NodeClass
from .distributions import GeometricMixture
from .fitting import FitOptions
from .io_formats import read_network, render_table, report_json
from .pipeline import CONVENTIONS, analyze_degrees, fit_document, graph_degrees, write_ccdfs
from .seeding import stage_seed
from .tailfit import ks_two_sample

ROW_NAMES = {
    "movie": "Actors per Movie",
    "actor": "Movies per Actor",
    "projection": "Actor-Actor Degree",
}


def _load(args):
    return read_network(args.input, fmt=args.format, movies_first=not args.actors_first)


def _base_report(command, args, **extra):
    report = {"command": command, "seed": args.seed, "conventions": CONVENTIONS}
    report.update(extra)
    report.setdefault("rows", [])
    report.setdefault("comparisons", [])
    return report


def cmd_analyze(args) -> dict:
    net = _load(args)
    degs = graph_degrees(net.graph)
    report = _base_report("analyze", args, input=args.input,
                          n_movies=net.graph.n_left, n_actors=net.graph.n_right, n_links=net.graph.n_links)
    for key in ("movie", "actor", "projection"):
        report["rows"].append(analyze_degrees(f"Real Network: {ROW_NAMES[key]}", degs[key]))
    if args.ccdf_dir:
        report["ccdf_files"] = write_ccdfs(degs, args.ccdf_dir, "real")
    return report


def cmd_relink(args) -> dict:
    net = _load(args)
    g = net.graph
    degs = graph_degrees(g)
    relinked = configuration_link(
        DegreeSequence(degs["movie"], NodeClass.MOVIE), DegreeSequence(degs["actor"], NodeClass.ACTOR),
        stage_seed(args.seed, "relink"), BalancePolicy(args.balance),
    )
    new = graph_degrees(relinked)
    report = _base_report("relink", args, input=args.input, balance=relinked.audit.to_dict(),
                          n_movies=g.n_left, n_actors=g.n_right, n_links=g.n_links)
    report["rows"].append(analyze_degrees("Real Network: Actor-Actor Degree", degs["projection"]))
    report["rows"].append(analyze_degrees("Relinked Network: Actor-Actor Degree", new["projection"]))
    report["comparisons"].append({
        "a": "relinked projection", "b": "real projection",
        "ks": ks_two_sample(new["projection"], degs["projection"]),
    })
    if args.ccdf_dir:
        report["ccdf_files"] = write_ccdfs(degs, args.ccdf_dir, "real") + \
            write_ccdfs(new, args.ccdf_dir, "relinked")
    return report


def _side_params(path, default_mix, default_shift):
    if not path:
        return default_mix, default_shift, None
    with open(path) as fh:
        doc = json.load(fh)
    return GeometricMixture.from_dict(doc["mixture"]), int(doc.get("shift", 0)), path


def cmd_generate(args) -> dict:
    shift = 1 if args.shift_degrees else 0
    movie_mix, movie_shift, movie_src = _side_params(
        args.movie_fit, defaults.movie_distribution(shifted=bool(shift)), shift)
    actor_mix, actor_shift, actor_src = _side_params(args.actor_fit, defaults.actor_mixture(), shift)
    ref = read_network(args.reference, fmt=args.format, movies_first=not args.actors_first) \
        if args.reference else None
    n_movies = args.n_movies or (ref.graph.n_left if ref else defaults.NOMINAL_N_MOVIES)
    n_actors = args.n_actors or (ref.graph.n_right if ref else defaults.NOMINAL_N_ACTORS)
    n_movies = max(1, round(n_movies * args.scale))
    n_actors = max(1, round(n_actors * args.scale))
    g = generate_network(movie_mix, actor_mix, n_movies, n_actors, args.seed,
                         BalancePolicy(args.balance), shift=(movie_shift, actor_shift))
    degs = graph_degrees(g)
    report = _base_report(
        "generate", args, balance=g.audit.to_dict(), n_movies=n_movies, n_actors=n_actors,
        scale=args.scale, n_links=g.n_links, reference=args.reference,
        parameters={
            "movie": {**movie_mix.to_dict(), "shift": movie_shift, "source": movie_src},
            "actor": {**actor_mix.to_dict(), "shift": actor_shift, "source": actor_src},
        },
    )
    generated = {
        "movie": "Geometric Fit: Actors per Movie",
        "actor": "Mixture of Geometric Fit: Movies per Actor",
        "projection": "Randomly Stopped Linking Network: Actor-Actor Degree",
    }
    real = graph_degrees(ref.graph) if ref else None
    for key in ("movie", "actor", "projection"):
        if real is not None:
            report["rows"].append(analyze_degrees(f"Real Network: {ROW_NAMES[key]}", real[key]))
        report["rows"].append(analyze_degrees(generated[key], degs[key]))
        if real is not None and real[key].size and degs[key].size:
            report["comparisons"].append({
                "a": f"generated {key}", "b": f"real {key}", "ks": ks_two_sample(degs[key], real[key]),
            })
    if args.ccdf_dir:
        report["ccdf_files"] = write_ccdfs(degs, args.ccdf_dir, "generated")
    return report


def cmd_fit(args) -> dict:
    net = _load(args)
    degs = graph_degrees(net.graph)
    options = FitOptions(restarts=args.restarts, gtol=args.gtol, xtol=args.xtol,
                         seed=int(stage_seed(args.seed, "fit").generate_state(1)[0]))
    doc = fit_document(degs[args.side], args.side, args.components, options, 1 if args.shift_degrees else 0)
    doc["input"] = args.input
    doc["root_seed"] = args.seed
    return doc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bipartite-rsl", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("input", help="Pajek two-mode .net file or two-column edge list")
        p.add_argument("--format", choices=["auto", "pajek", "edges"], default="auto")
        p.add_argument("--actors-first", action="store_true",
                       help="Pajek first mode holds actors rather than movies")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default="-", help="report path; '-' writes JSON to stdout")

    p = sub.add_parser("analyze", help="degree statistics and tail fits of both sides and the projection")
    common(p)
    p.add_argument("--ccdf-dir")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("relink", help="rewire the input with the configuration model and analyse")
    common(p)
    p.add_argument("--balance", choices=[b.value for b in BalancePolicy], default="trim-random")
    p.add_argument("--ccdf-dir")
    p.set_defaults(func=cmd_relink)

    p = sub.add_parser("generate", help="synthesise a network from geometric degree distributions")
    common(p, needs_input=False)
    p.add_argument("--movie-fit", help="fit file for the movie side (default: reference geometric)")
    p.add_argument("--actor-fit", help="fit file for the actor side (default: reference 4-component mixture)")
    p.add_argument("--reference", help="real network; sets node counts and adds its rows to the report")
    p.add_argument("--n-movies", type=int)
    p.add_argument("--n-actors", type=int)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--shift-degrees", action="store_true",
                   help="support starts at 1: sampled degrees are 1 + geometric, movie p = 0.087")
    p.add_argument("--balance", choices=[b.value for b in BalancePolicy], default="trim-random")
    p.add_argument("--ccdf-dir")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("fit", help="fit a geometric mixture to one side's degrees")
    common(p)
    p.add_argument("--side", choices=["movie", "actor"], required=True)
    p.add_argument("--components", type=int, default=1)
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--gtol", type=float, default=1e-8)
    p.add_argument("--xtol", type=float, default=1e-10)
    p.add_argument("--shift-degrees", action="store_true",
                   help="subtract 1 from every degree before fitting")
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
        text = report_json(report)
        if args.out == "-":
            sys.stdout.write(text)
        else:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            if "rows" in report:
                sys.stdout.write(render_table(report))
    except Exception as exc:  # noqa: BLE001 - every failure maps to exit status 1
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
