"""Digraph model, symmetric/anti-symmetric split, and degree bi-sequences.

Reciprocity is counted in edges: a mutual pair ``u <-> v`` contributes two
to ``rho``, and ``reciprocity = rho / m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import EmptyGraph, InvalidDegree, InvalidGraph, NodeOutOfRange, UnbalancedSums

Edge = tuple[int, int]
EdgeSet = frozenset  # frozenset[Edge]


class Digraph:
    """Immutable simple digraph on nodes ``0 .. n-1``."""

    __slots__ = ("_n", "_succ", "_pred", "_m", "_sorted_succ")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise InvalidGraph(f"negative node count {n}")
        succ = [set() for _ in range(n)]
        pred = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise NodeOutOfRange(f"edge ({u}, {v}) outside [0, {n})")
            if u == v:
                raise InvalidGraph(f"self-loop at {u}")
            if v in succ[u]:
                raise InvalidGraph(f"duplicate edge ({u}, {v})")
            succ[u].add(v)
            pred[v].add(u)
            m += 1
        self._init(n, succ, pred, m)

    def _init(self, n, succ, pred, m):
        self._n = n
        self._succ = tuple(frozenset(s) for s in succ)
        self._pred = tuple(frozenset(p) for p in pred)
        self._m = m
        self._sorted_succ = [None] * n

    @classmethod
    def _trusted(cls, n, succ, pred) -> "Digraph":
        # Caller guarantees simplicity and succ/pred consistency.
        g = cls.__new__(cls)
        g._init(n, succ, pred, sum(len(s) for s in succ))
        return g

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]]) -> "Digraph":
        n = len(rows)
        return cls(n, ((i, j) for i in range(n) for j in range(n) if rows[i][j]))

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    def _check(self, v):
        if not 0 <= v < self._n:
            raise NodeOutOfRange(f"node {v} outside [0, {self._n})")

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self._n and v in self._succ[u]

    def successors(self, v: int) -> tuple[int, ...]:
        """Out-neighbors of ``v`` in ascending order."""
        self._check(v)
        s = self._sorted_succ[v]
        if s is None:
            s = self._sorted_succ[v] = tuple(sorted(self._succ[v]))
        return s

    def predecessors(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return tuple(sorted(self._pred[v]))

    def out_degree(self, v: int) -> int:
        self._check(v)
        return len(self._succ[v])

    def in_degree(self, v: int) -> int:
        self._check(v)
        return len(self._pred[v])

    def out_degrees(self) -> list[int]:
        return [len(s) for s in self._succ]

    def in_degrees(self) -> list[int]:
        return [len(p) for p in self._pred]

    def edges(self) -> Iterator[Edge]:
        """All edges in lexicographic order."""
        for u in range(self._n):
            for v in self.successors(u):
                yield (u, v)

    def edge_set(self) -> frozenset:
        return frozenset(self.edges())

    def to_matrix(self) -> list[list[int]]:
        rows = [[0] * self._n for _ in range(self._n)]
        for u, v in self.edges():
            rows[u][v] = 1
        return rows

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._n == other._n and self._succ == other._succ

    def __hash__(self):
        return hash((self._n, self._succ))

    def __repr__(self):
        return f"Digraph(n={self._n}, edges={list(self.edges())})"


@dataclass(frozen=True)
class BiSequence:
    d_plus: tuple[int, ...]
    d_minus: tuple[int, ...]

    def __init__(self, d_plus: Sequence[int], d_minus: Sequence[int]):
        d_plus = tuple(int(x) for x in d_plus)
        d_minus = tuple(int(x) for x in d_minus)
        if len(d_plus) != len(d_minus):
            raise InvalidDegree(f"length mismatch: {len(d_plus)} vs {len(d_minus)}")
        if any(x < 0 for x in d_plus + d_minus):
            raise InvalidDegree("negative degree")
        object.__setattr__(self, "d_plus", d_plus)
        object.__setattr__(self, "d_minus", d_minus)

    def __len__(self):
        return len(self.d_plus)

    @property
    def n(self) -> int:
        return len(self.d_plus)

    @property
    def balanced_sums(self) -> bool:
        return sum(self.d_plus) == sum(self.d_minus)

    def min_seq(self) -> tuple[int, ...]:
        return tuple(min(a, b) for a, b in zip(self.d_plus, self.d_minus))

    def max_seq(self) -> tuple[int, ...]:
        return tuple(max(a, b) for a, b in zip(self.d_plus, self.d_minus))

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.d_plus, self.d_minus))


@dataclass(frozen=True)
class DegreeSummary:
    epsilon: int
    beta: int
    nu: int
    min_seq: tuple[int, ...]
    max_seq: tuple[int, ...]


def decompose(g: Digraph) -> tuple[frozenset, frozenset]:
    """Split the edges of ``g`` into (reciprocated, unreciprocated) sets."""
    sym, anti = [], []
    for u, v in g.edges():
        (sym if g.has_edge(v, u) else anti).append((u, v))
    return frozenset(sym), frozenset(anti)


def rho(g: Digraph) -> int:
    """Number of reciprocated edges (each mutual pair counts twice)."""
    return sum(1 for u, v in g.edges() if g.has_edge(v, u))


def reciprocity(g: Digraph) -> Fraction:
    if g.m == 0:
        raise EmptyGraph("reciprocity undefined for a graph with no edges")
    return Fraction(rho(g), g.m)


def bi_sequence(g: Digraph) -> BiSequence:
    return BiSequence(g.out_degrees(), g.in_degrees())


def degree_summary(bs: BiSequence) -> DegreeSummary:
    if not bs.balanced_sums:
        raise UnbalancedSums(f"sum(d+)={sum(bs.d_plus)} != sum(d-)={sum(bs.d_minus)}")
    lo, hi = bs.min_seq(), bs.max_seq()
    twice_nu = sum(abs(a - b) for a, b in zip(bs.d_plus, bs.d_minus))
    # equal sums make the total imbalance even
    return DegreeSummary(
        epsilon=sum(bs.d_plus),
        beta=sum(lo),
        nu=twice_nu // 2,
        min_seq=lo,
        max_seq=hi,
    )
