"""Graphicality tests (Erdos-Gallai, Fulkerson-Chen-Anstee) and witnesses.

The ``*_violation`` functions report where a test fails: ``None`` when the
input is graphic, ``0`` for a parity/sum failure, otherwise the 1-based
index ``k`` of the first violated inequality in the sorted order the test
uses.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from .core import BiSequence, Digraph
from .errors import InvalidDegree, NotGraphic


@dataclass(frozen=True)
class UndirectedGraph:
    n: int
    adj: tuple[tuple[int, ...], ...]

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]


def _check_nonneg(seq):
    for x in seq:
        if x < 0:
            raise InvalidDegree(f"negative degree {x}")


def erdos_gallai_violation(d: Sequence[int]) -> int | None:
    _check_nonneg(d)
    if sum(d) % 2:
        return 0
    d = sorted(d, reverse=True)
    n = len(d)
    prefix = [0]
    for x in d:
        prefix.append(prefix[-1] + x)
    # c = number of entries >= k; nonincreasing in k
    c = n
    for k in range(1, n + 1):
        while c > 0 and d[c - 1] < k:
            c -= 1
        big = max(c, k)
        rhs = k * (k - 1) + k * (big - k) + (prefix[n] - prefix[big])
        if prefix[k] > rhs:
            return k
    return None


def erdos_gallai(d: Sequence[int]) -> bool:
    """True iff ``d`` is the degree sequence of a simple undirected graph."""
    return erdos_gallai_violation(d) is None


def fca_order(bs: BiSequence) -> list[int]:
    """Node order used by the FCA test: d+ descending, then d- descending."""
    return sorted(range(bs.n), key=lambda i: (-bs.d_plus[i], -bs.d_minus[i], i))


def fulkerson_chen_anstee_violation(bs: BiSequence) -> int | None:
    if sum(bs.d_plus) != sum(bs.d_minus):
        return 0
    order = fca_order(bs)
    dp = [bs.d_plus[i] for i in order]
    dm = [bs.d_minus[i] for i in order]
    n = len(dp)
    lhs = 0
    for k in range(1, n + 1):
        lhs += dp[k - 1]
        rhs = sum(min(x, k - 1) for x in dm[:k]) + sum(min(x, k) for x in dm[k:])
        if lhs > rhs:
            return k
    return None


def fulkerson_chen_anstee(bs: BiSequence) -> bool:
    """True iff ``bs`` is the bi-sequence of a simple digraph."""
    return fulkerson_chen_anstee_violation(bs) is None


def realize_undirected(d: Sequence[int]) -> UndirectedGraph:
    """Havel-Hakimi witness: node ``i`` gets degree ``d[i]``."""
    d = list(d)
    if not erdos_gallai(d):
        raise NotGraphic(f"{d} is not graphic")
    n = len(d)
    adj = [set() for _ in range(n)]
    residual = d[:]
    while True:
        v = max(range(n), key=lambda i: (residual[i], -i), default=None)
        if v is None or residual[v] == 0:
            break
        k = residual[v]
        residual[v] = 0
        targets = heapq.nsmallest(
            k, (i for i in range(n) if i != v and residual[i] > 0),
            key=lambda i: (-residual[i], i))
        if len(targets) < k:
            raise AssertionError("Havel-Hakimi stalled on a graphic sequence")
        for u in targets:
            residual[u] -= 1
            adj[v].add(u)
            adj[u].add(v)
    return UndirectedGraph(n, tuple(tuple(sorted(a)) for a in adj))


def realize_digraph(bs: BiSequence) -> Digraph:
    """Kleitman-Wang witness realizing ``bs`` index for index.

    The pivot is the node of largest residual out-degree (ties: larger
    residual in-degree, then smaller index). It is joined to the nodes of
    largest residual in-degree; ties among targets go to larger residual
    out-degree, then smaller index.
    """
    if not fulkerson_chen_anstee(bs):
        raise NotGraphic(f"{bs} is not digraphic")
    n = bs.n
    out_res = list(bs.d_plus)
    in_res = list(bs.d_minus)
    edges = []
    while True:
        v = max(range(n), key=lambda i: (out_res[i], in_res[i], -i), default=None)
        if v is None or out_res[v] == 0:
            break
        k = out_res[v]
        out_res[v] = 0
        targets = heapq.nsmallest(
            k, (i for i in range(n) if i != v and in_res[i] > 0),
            key=lambda i: (-in_res[i], -out_res[i], i))
        if len(targets) < k:
            raise AssertionError("Kleitman-Wang stalled on a digraphic bi-sequence")
        for u in targets:
            in_res[u] -= 1
            edges.append((v, u))
    return Digraph(n, edges)
