"""Exhaustive ground truth for small instances.

``max_reciprocity_exact`` and ``count_realizations`` walk the node pairs
``(i, j), i < j`` in lexicographic order. Each pair takes one of four
states, tried in the order both edges, ``i -> j`` only, ``j -> i`` only,
neither; that is the row-major order of the adjacency cells ``(i, j)`` then
``(j, i)`` with 1 tried before 0. Once every pair touching node ``i`` is
fixed, what is left is an unconstrained realization problem on nodes
``> i`` with the residual degrees, so results are memoized on
``(i, residuals)``.

Pruning inside a subproblem uses ``sum(min(out_res, in_res))`` over the
remaining nodes. It is admissible: every reciprocated edge leaving ``v``
in a completion consumes one unit of both residuals of ``v``, so no
completion can beat it. A branch is skipped only when its gain plus this
bound cannot exceed the best completion already found for the same
subproblem, so memoized values stay exact.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations

from .core import BiSequence, Digraph, rho
from .errors import BudgetExhausted, NotGraphic, TooLarge
from .graphicality import fulkerson_chen_anstee, realize_digraph
from .bounds import GRAY, TomographyInstance

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleLimits:
    max_nodes: int = 10
    max_edges: int = 20
    max_expansions: int = 10**8

    def __post_init__(self):
        if min(self.max_nodes, self.max_edges, self.max_expansions) <= 0:
            raise ValueError("oracle limits must be positive")


class _OutOfBudget(Exception):
    pass


def _check_instance(bs, limits):
    if not fulkerson_chen_anstee(bs):
        raise NotGraphic(f"{bs} is not digraphic")
    if bs.n > limits.max_nodes:
        raise TooLarge(f"n = {bs.n} exceeds max_nodes = {limits.max_nodes}")
    eps = sum(bs.d_plus)
    if eps > limits.max_edges:
        raise TooLarge(f"epsilon = {eps} exceeds max_edges = {limits.max_edges}")


class _Search:
    def __init__(self, n, limits):
        self.n = n
        self.budget = limits.max_expansions
        self.expansions = 0
        self.memo = {}

    def tick(self):
        self.expansions += 1
        if self.expansions > self.budget:
            raise _OutOfBudget

    def row_choices(self, i, out_res, in_res):
        """Yield (out_targets, in_sources, next_out, next_in) for node ``i``.

        ``out_res``/``in_res`` hold residuals of nodes ``i .. n-1``.
        """
        n = self.n
        need_out, need_in = out_res[0], in_res[0]
        k = n - i - 1
        if need_out > k or need_in > k:
            return
        # state per partner j: (i->j, j->i)
        states = ((1, 1), (1, 0), (0, 1), (0, 0))
        picks = []

        def rec(pos, left_out, left_in):
            self.tick()
            remaining = k - pos
            if left_out > remaining or left_in > remaining:
                return
            if pos == k:
                yield tuple(picks)
                return
            j = pos + 1  # offset of partner within the residual slice
            for fwd, back in states:
                if fwd > left_out or back > left_in:
                    continue
                if fwd and in_res[j] == 0 or back and out_res[j] == 0:
                    continue
                picks.append((fwd, back))
                yield from rec(pos + 1, left_out - fwd, left_in - back)
                picks.pop()

        for choice in rec(0, need_out, need_in):
            nxt_out = [out_res[p + 1] - back for p, (_, back) in enumerate(choice)]
            nxt_in = [in_res[p + 1] - fwd for p, (fwd, _) in enumerate(choice)]
            outs = [i + 1 + p for p, (fwd, _) in enumerate(choice) if fwd]
            ins = [i + 1 + p for p, (_, back) in enumerate(choice) if back]
            yield outs, ins, nxt_out, nxt_in

    def feasible_tail(self, out_res, in_res):
        return fulkerson_chen_anstee(BiSequence(out_res, in_res))

    def best(self, i, out_res, in_res):
        """(max reciprocated edges, edge tuple) or None if infeasible."""
        key = (i, tuple(out_res), tuple(in_res))
        if key in self.memo:
            return self.memo[key]
        if i == self.n:
            result = (0, ())
            self.memo[key] = result
            return result
        bound = sum(min(a, b) for a, b in zip(out_res, in_res))
        result = None
        for outs, ins, nxt_out, nxt_in in self.row_choices(i, out_res, in_res):
            gain = 2 * len(set(outs) & set(ins))
            child_bound = sum(min(a, b) for a, b in zip(nxt_out, nxt_in))
            if result is not None and gain + child_bound <= result[0]:
                continue
            if not self.feasible_tail(nxt_out, nxt_in):
                continue
            sub = self.best(i + 1, nxt_out, nxt_in)
            if sub is None:
                continue
            total = gain + sub[0]
            if result is None or total > result[0]:
                edges = tuple((i, j) for j in outs) + tuple((j, i) for j in ins) + sub[1]
                result = (total, edges)
                if total == bound:
                    break
        self.memo[key] = result
        return result

    def count(self, i, out_res, in_res):
        key = (i, tuple(out_res), tuple(in_res))
        if key in self.memo:
            return self.memo[key]
        if i == self.n:
            return 1
        total = 0
        for _, _, nxt_out, nxt_in in self.row_choices(i, out_res, in_res):
            if self.feasible_tail(nxt_out, nxt_in):
                total += self.count(i + 1, nxt_out, nxt_in)
        self.memo[key] = total
        return total


def max_reciprocity_exact(bs: BiSequence, limits: OracleLimits = OracleLimits()
                          ) -> tuple[int, Digraph]:
    """Maximum number of reciprocated edges over all realizations of ``bs``.

    Raises BudgetExhausted (carrying a lower bound and its witness) when the
    expansion budget runs out.
    """
    _check_instance(bs, limits)
    search = _Search(bs.n, limits)
    try:
        found = search.best(0, list(bs.d_plus), list(bs.d_minus))
    except _OutOfBudget:
        witness = realize_digraph(bs)
        raise BudgetExhausted(
            f"expansion budget {limits.max_expansions} exhausted",
            rho_lower=rho(witness), witness=witness) from None
    if found is None:
        raise AssertionError(f"search found no realization of digraphic {bs}")
    value, edges = found
    log.debug("oracle %s: rho_max=%d after %d expansions", bs, value, search.expansions)
    return value, Digraph(bs.n, edges)


def count_realizations(bs: BiSequence, limits: OracleLimits = OracleLimits()) -> int:
    """Number of labeled simple digraphs with bi-sequence ``bs``."""
    _check_instance(bs, limits)
    search = _Search(bs.n, limits)
    try:
        return search.count(0, list(bs.d_plus), list(bs.d_minus))
    except _OutOfBudget:
        raise BudgetExhausted(f"expansion budget {limits.max_expansions} exhausted") from None


def tomography_feasible_bruteforce(inst: TomographyInstance, max_cells: int = 16
                                   ) -> list[list[str]] | None:
    """A grid meeting every row/column color count, or None if none exists.

    Rows are filled one at a time; a partial grid is abandoned as soon as a
    column exceeds its white or black count or can no longer reach it.
    """
    n, m = inst.n, inst.m
    if n * m > max_cells:
        raise TooLarge(f"{n}x{m} grid exceeds {max_cells} cells")
    col_w = [0] * m
    col_b = [0] * m
    grid = []

    def row_options(i):
        for whites in combinations(range(m), inst.r_w[i]):
            rest = [j for j in range(m) if j not in whites]
            for blacks in combinations(rest, inst.r_b[i]):
                row = [GRAY] * m
                for j in whites:
                    row[j] = "w"
                for j in blacks:
                    row[j] = "b"
                yield row

    def rec(i):
        if i == n:
            return all(col_w[j] == inst.s_w[j] and col_b[j] == inst.s_b[j] for j in range(m))
        rows_left = n - i - 1
        for row in row_options(i):
            ok = True
            for j, c in enumerate(row):
                col_w[j] += c == "w"
                col_b[j] += c == "b"
            for j in range(m):
                if col_w[j] > inst.s_w[j] or col_b[j] > inst.s_b[j]:
                    ok = False
                elif (inst.s_w[j] - col_w[j]) + (inst.s_b[j] - col_b[j]) > rows_left:
                    ok = False
            if ok:
                grid.append(row)
                if rec(i + 1):
                    return True
                grid.pop()
            for j, c in enumerate(row):
                col_w[j] -= c == "w"
                col_b[j] -= c == "b"
        return False

    return [r[:] for r in grid] if rec(0) else None

