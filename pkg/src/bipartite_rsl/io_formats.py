"""Network file readers and report / plot-data writers."""
from __future__ import annotations

import csv
import json
import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bipartite_graph import BipartiteGraph
from .degrees import as_degree_array
from .errors import ModeViolation, ParseError


@dataclass(frozen=True)
class LabeledBipartiteNetwork:
    graph: BipartiteGraph
    left_labels: tuple  # movies
    right_labels: tuple  # actors

    def __post_init__(self):
        if len(self.left_labels) != self.graph.n_left or len(self.right_labels) != self.graph.n_right:
            raise ValueError("label counts must match node counts")


# ---------------------------------------------------------------- Pajek

_VERTEX = re.compile(r'^\s*(\d+)(?:\s+(?:"((?:[^"\\]|\\.)*)"|(\S+)))?')
_EDGE_SECTIONS = {"*edges": "pairs", "*arcs": "pairs", "*edgeslist": "lists", "*arcslist": "lists"}


def _lines(path):
    with open(path, encoding="utf-8", errors="replace", newline=None) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip().rstrip("\r")
            if not line or line.startswith("%"):
                continue
            yield lineno, line


def read_pajek_bipartite(path, movies_first: bool = True) -> LabeledBipartiteNetwork:
    """Parse a two-mode Pajek ``.net`` file.

    The ``*Vertices N N1`` header marks vertices 1..N1 as the first mode. With
    ``movies_first`` the first mode is movies (left side), otherwise actors.
    Edge lines may carry a trailing weight, which is ignored; each line is one link.
    """
    n_total = n_first = None
    labels: list[str] = []
    left_ends: list[int] = []
    right_ends: list[int] = []
    section = None

    def place(v, lineno):
        if not 1 <= v <= n_total:
            raise ParseError(f"vertex {v} out of range 1..{n_total}", lineno)
        return v <= n_first

    def add_link(u, v, lineno):
        fu, fv = place(u, lineno), place(v, lineno)
        if fu == fv:
            raise ModeViolation(f"link {u}-{v} joins two vertices of the same mode", lineno)
        first, second = (u, v) if fu else (v, u)
        a, b = first - 1, second - n_first - 1
        if movies_first:
            left_ends.append(a)
            right_ends.append(b)
        else:
            left_ends.append(b)
            right_ends.append(a)

    for lineno, line in _lines(path):
        if line.startswith("*"):
            head = line.split()
            key = head[0].lower()
            if key == "*vertices":
                try:
                    n_total = int(head[1])
                    n_first = int(head[2])
                except (IndexError, ValueError):
                    raise ParseError("expected '*Vertices N N1' declaring a two-mode partition", lineno)
                if not 0 <= n_first <= n_total:
                    raise ParseError("mode boundary outside vertex range", lineno)
                labels = [str(i) for i in range(1, n_total + 1)]
                section = "vertices"
            elif key in _EDGE_SECTIONS:
                if n_total is None:
                    raise ParseError("edge section before *Vertices", lineno)
                section = _EDGE_SECTIONS[key]
            else:
                raise ParseError(f"unsupported section {head[0]}", lineno)
            continue
        if section is None:
            raise ParseError("data before any section header", lineno)
        if section == "vertices":
            m = _VERTEX.match(line)
            if not m:
                raise ParseError(f"bad vertex line: {line!r}", lineno)
            v = int(m.group(1))
            place(v, lineno)
            label = m.group(2) if m.group(2) is not None else m.group(3)
            if label is not None:
                labels[v - 1] = label
            continue
        parts = line.split()
        try:
            ids = [int(x) for x in (parts[:2] if section == "pairs" else parts)]
        except ValueError:
            raise ParseError(f"bad edge line: {line!r}", lineno)
        if len(ids) < 2:
            raise ParseError(f"edge line needs two vertices: {line!r}", lineno)
        for other in ids[1:]:
            add_link(ids[0], other, lineno)

    if n_total is None:
        raise ParseError("missing *Vertices header")
    first_labels, second_labels = tuple(labels[:n_first]), tuple(labels[n_first:])
    n_a, n_b = n_first, n_total - n_first
    if movies_first:
        graph = BipartiteGraph(n_a, n_b, left_ends, right_ends)
        return LabeledBipartiteNetwork(graph, first_labels, second_labels)
    graph = BipartiteGraph(n_b, n_a, left_ends, right_ends)
    return LabeledBipartiteNetwork(graph, second_labels, first_labels)


def write_pajek_bipartite(network: LabeledBipartiteNetwork, path) -> None:
    g = network.graph
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"*Vertices {g.n_left + g.n_right} {g.n_left}\n")
        for i, lab in enumerate(network.left_labels + network.right_labels, start=1):
            fh.write(f'{i} "{lab}"\n')
        fh.write("*Edges\n")
        for u, v in zip(g.left.tolist(), g.right.tolist()):
            fh.write(f"{u + 1} {v + g.n_left + 1}\n")


# ---------------------------------------------------------------- edge lists

def _split(line):
    if "\t" in line:
        return [p.strip() for p in line.split("\t") if p.strip()]
    if "," in line:
        return [p.strip() for p in line.split(",")]
    return line.split()


def read_edge_list(path) -> LabeledBipartiteNetwork:
    """Two columns per line, movie id then actor id.

    Tab, comma or whitespace separated (checked in that order). Ids are interned in
    order of first appearance; blank lines and ``#`` comments are skipped.
    """
    movies: dict[str, int] = {}
    actors: dict[str, int] = {}
    left, right = [], []
    with open(path, encoding="utf-8", errors="replace") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = _split(line)
            if len(parts) != 2 or not all(parts):
                raise ParseError(f"expected two columns, got {line!r}", lineno)
            left.append(movies.setdefault(parts[0], len(movies)))
            right.append(actors.setdefault(parts[1], len(actors)))
    graph = BipartiteGraph(len(movies), len(actors), left, right)
    return LabeledBipartiteNetwork(graph, tuple(movies), tuple(actors))


def write_edge_list(network: LabeledBipartiteNetwork, path) -> None:
    """Tab-separated labels, one link per line. Isolated nodes are not representable."""
    g = network.graph
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for u, v in zip(g.left.tolist(), g.right.tolist()):
            fh.write(f"{network.left_labels[u]}\t{network.right_labels[v]}\n")


def write_pairs(pairs, path, labels=None) -> None:
    """Two-column projected edge list."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for i, j in pairs:
            if labels is not None:
                i, j = labels[i], labels[j]
            fh.write(f"{i}\t{j}\n")


def read_network(path, fmt: str = "auto", movies_first: bool = True) -> LabeledBipartiteNetwork:
    if fmt == "auto":
        fmt = "pajek" if Path(path).suffix.lower() in {".net", ".paj"} else "edges"
    if fmt == "pajek":
        return read_pajek_bipartite(path, movies_first=movies_first)
    if fmt == "edges":
        return read_edge_list(path)
    raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------- plot data

def ccdf_points(degrees):
    """(k, fraction of positive-degree nodes with degree >= k) over observed positive k."""
    arr = as_degree_array(degrees)
    pos = arr[arr > 0]
    if pos.size == 0:
        return np.array([], dtype=np.int64), np.array([])
    values, counts = np.unique(pos, return_counts=True)
    at_least = np.cumsum(counts[::-1])[::-1]
    return values, at_least / pos.size


def write_ccdf(degrees, path) -> None:
    values, ccdf = ccdf_points(degrees)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["degree", "ccdf"])
        for k, c in zip(values.tolist(), ccdf.tolist()):
            w.writerow([k, repr(c)])


def write_pmf(degrees, path, model=None) -> None:
    """Empirical PMF over observed degrees; ``model`` maps an int array of k to probabilities."""
    arr = as_degree_array(degrees)
    values, counts = np.unique(arr, return_counts=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["degree", "pmf"] + (["model"] if model is not None else []))
        mod = model(values) if model is not None else None
        for i, (k, c) in enumerate(zip(values.tolist(), counts.tolist())):
            row = [k, repr(c / arr.size)]
            if mod is not None:
                row.append(repr(float(mod[i])))
            w.writerow(row)


# ---------------------------------------------------------------- reports

def _clean(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.generic):
        return _clean(obj.item())
    return obj


def report_json(report: dict) -> str:
    return json.dumps(_clean(report), indent=2) + "\n"


def write_report(report: dict, path) -> None:
    """One JSON document; ``report['rows']`` holds one entry per analysed distribution."""
    text = report_json(report)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _fmt(value, spec):
    return "-" if value is None else format(value, spec)


def render_table(report: dict) -> str:
    """Plain-text table with the power-law fit and distribution statistics columns."""
    header = ("Network", "gamma", "k_min", "Data Fraction", "Variance", "Mean", "VMR", "KS", "Verdict")
    rows = [header]
    for r in report.get("rows", []):
        frac = r.get("data_fraction")
        rows.append((
            r["name"],
            _fmt(r.get("gamma"), ".1f"),
            _fmt(r.get("k_min"), "d"),
            "-" if r.get("k_min") is None else f"{100 * frac:.1f}%",
            _fmt(r.get("variance"), ".1f"),
            _fmt(r.get("mean"), ".1f"),
            _fmt(r.get("vmr"), ".1f"),
            _fmt(r.get("ks_power_law"), ".3f"),
            r.get("verdict", "-"),
        ))
    widths = [max(len(str(row[i])) for row in rows) for i in range(len(header))]
    lines = []
    for n, row in enumerate(rows):
        cells = [str(c).ljust(widths[0]) if i == 0 else str(c).rjust(widths[i]) for i, c in enumerate(row)]
        lines.append(" | ".join(cells))
        if n == 0:
            lines.append("-+-".join("-" * w for w in widths))
    for c in report.get("comparisons", []):
        lines.append(f"KS({c['a']} vs {c['b']}) = {c['ks']:.4f}")
    return "\n".join(lines) + "\n"
