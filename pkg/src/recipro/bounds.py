"""Upper bound on reciprocity, achievability conditions and exact special cases.

Also holds the encoding of 3-color tomography instances as bi-sequences
whose bound is achieved exactly when the instance is feasible, plus the
decoder that turns a bound-achieving digraph back into a color matrix.

Lower-bound certificates (``packing_lower_bound``) are counted in edges,
like ``rho``: packing an undirected graph with degrees ``d0`` into the
realization yields ``sum(d0)`` reciprocated edges (one mutual pair per
undirected edge, two edges per pair).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import BiSequence, Digraph, degree_summary, rho
from .errors import (
    DimensionMismatch,
    InvalidInstance,
    NegativeResidual,
    NotBoundAchieving,
    UnbalancedSums,
)
from .graphicality import erdos_gallai, fulkerson_chen_anstee

WHITE, BLACK, GRAY = "w", "b", "g"


@dataclass(frozen=True)
class BoundReport:
    beta: int
    epsilon: int
    min_graphic: bool
    max_graphic: bool
    sufficient_holds: bool = False
    exact_value: int | None = None
    gap_candidates: frozenset | None = None

    @property
    def necessary_holds(self) -> bool:
        return self.min_graphic and self.max_graphic


def _require_balanced(bs):
    if not bs.balanced_sums:
        raise UnbalancedSums(f"sum(d+)={sum(bs.d_plus)} != sum(d-)={sum(bs.d_minus)}")


def upper_bound(bs: BiSequence) -> BoundReport:
    """beta together with the two necessary conditions for reaching it."""
    s = degree_summary(bs)
    return BoundReport(
        beta=s.beta,
        epsilon=s.epsilon,
        min_graphic=erdos_gallai(s.min_seq),
        max_graphic=erdos_gallai(s.max_seq),
    )


def degree_spread_ok(big: int, small: int, support: int) -> bool:
    """Exact test of ``big < sqrt(small*support + (small-1/2)**2) + 3/2 - small``.

    Scaled by 2: ``2*big - 3 + 2*small < sqrt(4*small*support + (2*small-1)**2)``.
    """
    lhs = 2 * big - 3 + 2 * small
    if lhs < 0:
        return True
    return lhs * lhs < 4 * small * support + (2 * small - 1) ** 2


def _packing_condition(bs, d0):
    support = [i for i in range(bs.n) if bs.d_plus[i] > 0 or bs.d_minus[i] > 0]
    if not support:
        return True
    spans = [bs.d_plus[i] + bs.d_minus[i] - d0[i] for i in support]
    return degree_spread_ok(max(spans), min(spans), len(support))


def packing_lower_bound(d0: Sequence[int], bs: BiSequence) -> int | None:
    """Certified lower bound ``sum(d0)`` on max reciprocity, or None.

    Requires ``d0`` graphic, the residual ``(d+ - d0, d- - d0)`` graphic and
    the degree-spread condition over the non-isolated nodes, where the spread
    of node i is ``d+_i + d-_i - d0_i``.
    """
    d0 = tuple(d0)
    if len(d0) != bs.n:
        raise DimensionMismatch(f"d0 has length {len(d0)}, bi-sequence has {bs.n}")
    res_plus = [a - z for a, z in zip(bs.d_plus, d0)]
    res_minus = [b - z for b, z in zip(bs.d_minus, d0)]
    if any(x < 0 for x in res_plus + res_minus) or any(z < 0 for z in d0):
        raise NegativeResidual("d0 must satisfy 0 <= d0 <= min(d+, d-) elementwise")
    if not erdos_gallai(d0):
        return None
    if not fulkerson_chen_anstee(BiSequence(res_plus, res_minus)):
        return None
    if not _packing_condition(bs, d0):
        return None
    return sum(d0)


def sufficient_condition(bs: BiSequence) -> bool:
    """True when beta is guaranteed to be achieved.

    The all-zero bi-sequence is accepted: beta = 0 is met by the empty graph.
    """
    _require_balanced(bs)
    return packing_lower_bound(bs.min_seq(), bs) is not None


def balanced_exact(bs: BiSequence) -> int | None:
    """Exact maximum reciprocity of a perfectly balanced bi-sequence."""
    s = degree_summary(bs)
    if s.nu != 0:
        return None
    return s.epsilon if s.epsilon % 2 == 0 else s.epsilon - 3


def nu1_gap_candidates(bs: BiSequence) -> frozenset | None:
    """Possible values of ``epsilon - rho_max`` when nu = 1, else None."""
    s = degree_summary(bs)
    if s.nu != 1:
        return None
    diffs = sorted(a - b for a, b in zip(bs.d_plus, bs.d_minus) if a != b)
    # nu = 1 with equal sums forces exactly one +1 node and one -1 node
    assert diffs == [-1, 1], diffs
    return frozenset({2, 4}) if s.epsilon % 2 == 0 else frozenset({1, 5})


def bound_report(bs: BiSequence) -> BoundReport:
    """upper_bound plus every exact/sufficient shortcut that applies."""
    base = upper_bound(bs)
    return BoundReport(
        beta=base.beta,
        epsilon=base.epsilon,
        min_graphic=base.min_graphic,
        max_graphic=base.max_graphic,
        sufficient_holds=sufficient_condition(bs),
        exact_value=balanced_exact(bs),
        gap_candidates=nu1_gap_candidates(bs),
    )


@dataclass(frozen=True)
class TomographyInstance:
    """Row/column white and black counts of an ``n x m`` 3-color grid."""

    n: int
    m: int
    r_w: tuple[int, ...]
    r_b: tuple[int, ...]
    s_w: tuple[int, ...]
    s_b: tuple[int, ...]

    def __init__(self, r_w, r_b, s_w, s_b):
        r_w, r_b, s_w, s_b = (tuple(int(x) for x in v) for v in (r_w, r_b, s_w, s_b))
        n, m = len(r_w), len(s_w)
        if len(r_b) != n or len(s_b) != m:
            raise InvalidInstance("row/column count vectors have mismatched lengths")
        if n == 0 or m == 0:
            raise InvalidInstance("grid must have at least one row and one column")
        if any(x < 0 for x in r_w + r_b + s_w + s_b):
            raise InvalidInstance("negative count")
        if any(w + b > m for w, b in zip(r_w, r_b)):
            raise InvalidInstance("a row asks for more colored cells than columns")
        if any(w + b > n for w, b in zip(s_w, s_b)):
            raise InvalidInstance("a column asks for more colored cells than rows")
        if sum(r_w) != sum(s_w) or sum(r_b) != sum(s_b):
            raise InvalidInstance("row and column totals differ for some color")
        for name, val in (("n", n), ("m", m), ("r_w", r_w), ("r_b", r_b),
                          ("s_w", s_w), ("s_b", s_b)):
            object.__setattr__(self, name, val)

    def satisfied_by(self, grid: Sequence[Sequence[str]]) -> bool:
        if len(grid) != self.n or any(len(row) != self.m for row in grid):
            return False
        for i, row in enumerate(grid):
            if row.count(WHITE) != self.r_w[i] or row.count(BLACK) != self.r_b[i]:
                return False
        for j in range(self.m):
            col = [grid[i][j] for i in range(self.n)]
            if col.count(WHITE) != self.s_w[j] or col.count(BLACK) != self.s_b[j]:
                return False
        return True


def tomography_to_bisequence(inst: TomographyInstance) -> tuple[BiSequence, int]:
    """Encode ``inst`` on ``n + m`` nodes; rows first, then columns.

    Returns the bi-sequence and its beta, ``n(n-1) + 2*sum(r_w)``.
    """
    n = inst.n
    d_plus = [w + b + n - 1 for w, b in zip(inst.r_w, inst.r_b)] + list(inst.s_w)
    d_minus = [w + n - 1 for w in inst.r_w] + [w + b for w, b in zip(inst.s_w, inst.s_b)]
    return BiSequence(d_plus, d_minus), n * (n - 1) + 2 * sum(inst.r_w)


def decode_tomography_solution(g: Digraph, inst: TomographyInstance) -> list[list[str]]:
    """Read the color grid off a bound-achieving realization of the encoding."""
    bs, target = tomography_to_bisequence(inst)
    n, m = inst.n, inst.m
    if g.n != n + m:
        raise NotBoundAchieving(f"digraph has {g.n} nodes, encoding has {n + m}")
    if tuple(g.out_degrees()) != bs.d_plus or tuple(g.in_degrees()) != bs.d_minus:
        raise NotBoundAchieving("digraph does not realize the encoded bi-sequence")
    if rho(g) != target:
        raise NotBoundAchieving(f"rho = {rho(g)} < beta = {target}")
    for i in range(n):
        for k in range(n):
            if i != k and not g.has_edge(i, k):
                raise NotBoundAchieving(f"row block misses edge ({i}, {k})")
    for j in range(n, n + m):
        for k in range(n, n + m):
            if g.has_edge(j, k):
                raise NotBoundAchieving(f"column block has edge ({j}, {k})")
    grid = []
    for i in range(n):
        row = []
        for j in range(m):
            fwd, back = g.has_edge(i, n + j), g.has_edge(n + j, i)
            if back and not fwd:
                raise NotBoundAchieving(f"column {j} -> row {i} edge is unreciprocated")
            row.append(WHITE if back else BLACK if fwd else GRAY)
        grid.append(row)
    if not inst.satisfied_by(grid):
        raise NotBoundAchieving("decoded grid violates the instance counts")
    return grid


def encode_tomography_solution(grid: Sequence[Sequence[str]], inst: TomographyInstance) -> Digraph:
    """Build the bound-achieving realization from a feasible grid."""
    if not inst.satisfied_by(grid):
        raise InvalidInstance("grid does not satisfy the instance")
    n, m = inst.n, inst.m
    edges = [(i, k) for i in range(n) for k in range(n) if i != k]
    for i in range(n):
        for j in range(m):
            if grid[i][j] in (WHITE, BLACK):
                edges.append((i, n + j))
            if grid[i][j] == WHITE:
                edges.append((n + j, i))
    return Digraph(n + m, edges)
