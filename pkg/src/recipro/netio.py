"""Edge-list ingestion and per-network analysis records.

Input format: one edge ``u v`` per line, whitespace separated, ``#`` starts
a comment line. Self-loops and repeated edges are dropped. Labels are
renumbered densely in order of first appearance; a self-loop line does
not introduce a label.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .bounds import upper_bound
from .core import Digraph, bi_sequence, degree_summary, rho
from .errors import EmptyGraph, MalformedLine
from .rewire import AuditReport, greedy_rewire, structural_audit

CSV_HEADER = (
    "name", "nodes", "edges", "rho", "reciprocity", "beta", "bound_ratio", "nu",
    "reciprocity_over_bound", "rewired_rho", "rewired_reciprocity",
    "rewired_over_bound", "ga_acyclic", "min_graphic", "max_graphic",
)


class LabelMap:
    """Bijection between original labels and dense node ids."""

    def __init__(self, labels: Sequence[str] = ()):
        self._labels: list[str] = []
        self._ids: dict[str, int] = {}
        for lab in labels:
            self.intern(lab)

    def intern(self, label: str) -> int:
        i = self._ids.get(label)
        if i is None:
            i = self._ids[label] = len(self._labels)
            self._labels.append(label)
        return i

    def id_of(self, label: str) -> int:
        return self._ids[label]

    def label_of(self, node: int) -> str:
        return self._labels[node]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self._labels)

    def __len__(self):
        return len(self._labels)

    def __eq__(self, other):
        return isinstance(other, LabelMap) and self._labels == other._labels


@dataclass
class ParseStats:
    lines: int = 0
    comments: int = 0
    blank: int = 0
    self_loops: int = 0
    duplicates: int = 0
    edges: int = 0


def parse_edge_list(lines: Iterable[str]) -> tuple[Digraph, LabelMap, ParseStats]:
    labels = LabelMap()
    stats = ParseStats()
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(lines, 1):
        stats.lines += 1
        line = raw.strip()
        if not line:
            stats.blank += 1
            continue
        if line.startswith("#"):
            stats.comments += 1
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise MalformedLine(lineno, raw.rstrip("\r\n"))
        a, b = tokens
        if a == b:
            stats.self_loops += 1
            continue
        e = (labels.intern(a), labels.intern(b))
        if e in seen:
            stats.duplicates += 1
            continue
        seen.add(e)
        edges.append(e)
    stats.edges = len(edges)
    return Digraph(len(labels), edges), labels, stats


def read_edge_list(path: str | Path) -> tuple[Digraph, LabelMap, ParseStats]:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_edge_list(fh)


def _emission_order(g: Digraph) -> list[tuple[int, int]]:
    # Introduce node ids in increasing order so a re-parse assigns the same ids.
    incident = [[] for _ in range(g.n)]
    for u, v in g.edges():
        incident[u].append((u, v))
        incident[v].append((u, v))
    seen: set[int] = set()
    done: set[tuple[int, int]] = set()
    order = []
    for k in range(g.n):
        if k in seen or not incident[k]:
            continue
        back = sorted(e for e in incident[k] if (e[0] if e[1] == k else e[1]) in seen)
        if back:
            first = back[0]
        elif (k, k + 1) in incident[k]:
            first = (k, k + 1)
        else:
            first = min(incident[k])
        fresh = [x for x in first if x not in seen]
        seen.update(fresh)
        order.append(first)
        done.add(first)
        # edges whose endpoints are now all known introduce nothing new
        for e in sorted({e for x in fresh for e in incident[x]
                         if e not in done and e[0] in seen and e[1] in seen}):
            order.append(e)
            done.add(e)
    return order


def serialize_edge_list(g: Digraph, labels: LabelMap | None = None) -> str:
    """Edge-list text that parses back to the same labelled edges.

    Edges are ordered so that node ids are introduced in increasing order
    wherever the graph allows it, in which case re-parsing also reproduces
    the ids. Isolated nodes cannot be expressed in the format and are omitted.
    """
    buf = io.StringIO()
    name = labels.label_of if labels is not None else str
    for u, v in _emission_order(g):
        buf.write(f"{name(u)} {name(v)}\n")
    return buf.getvalue()


def format_ratio(x: Fraction | None) -> str:
    """Nine decimals, round-half-even; undefined ratios render as ``nan``."""
    if x is None:
        return "nan"
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return format(d.quantize(Decimal("1e-9"), rounding=ROUND_HALF_EVEN), "f")


@dataclass(frozen=True)
class AnalysisRecord:
    name: str
    nodes: int
    edges: int
    rho: int
    reciprocity: Fraction
    beta: int
    bound_ratio: Fraction
    nu: int
    reciprocity_over_bound: Fraction | None
    rewired_rho: int
    rewired_reciprocity: Fraction
    rewired_over_bound: Fraction | None
    ga_acyclic: bool
    min_graphic: bool
    max_graphic: bool

    def as_row(self) -> list[str]:
        out = []
        for col in CSV_HEADER:
            val = getattr(self, col)
            if isinstance(val, bool):
                out.append("true" if val else "false")
            elif isinstance(val, Fraction) or val is None:
                out.append(format_ratio(val))
            else:
                out.append(str(val))
        return out


def build_record(name: str, g: Digraph, rewired: Digraph, audit: AuditReport) -> AnalysisRecord:
    if g.m == 0:
        raise EmptyGraph(f"{name}: graph has no edges")
    bs = bi_sequence(g)
    s = degree_summary(bs)
    ub = upper_bound(bs)
    r0, r1 = rho(g), rho(rewired)
    m = g.m
    return AnalysisRecord(
        name=name,
        nodes=g.n,
        edges=m,
        rho=r0,
        reciprocity=Fraction(r0, m),
        beta=s.beta,
        bound_ratio=Fraction(s.beta, m),
        nu=s.nu,
        reciprocity_over_bound=Fraction(r0, s.beta) if s.beta else None,
        rewired_rho=r1,
        rewired_reciprocity=Fraction(r1, m),
        rewired_over_bound=Fraction(r1, s.beta) if s.beta else None,
        ga_acyclic=audit.ga_acyclic,
        min_graphic=ub.min_graphic,
        max_graphic=ub.max_graphic,
    )


def analyze_graph(name: str, g: Digraph, sample_budget: int = 10_000) -> AnalysisRecord:
    """Rewire, audit and summarize one network."""
    if g.m == 0:
        raise EmptyGraph(f"{name}: graph has no edges")
    rewired, _ = greedy_rewire(g)
    return build_record(name, g, rewired, structural_audit(rewired, sample_budget))
