"""3-path rewiring, greedy elimination of suboptimal 3-paths, structural audits.

A 3-path is an elementary path ``v0 -> v1 -> v2 -> v3`` whose three edges
are all unreciprocated. Its type depends on how ``v0`` and ``v3`` are
joined:

    I    no edge either way          rewire: -(v0,v1) -(v2,v3) +(v0,v3) +(v2,v1)
    II   v0 <-> v3 reciprocated      rewire: -(v1,v2) -(v3,v0) +(v1,v0) +(v3,v2)
    III  v3 -> v0 only (a 4-cycle)   rewire: same exchange as II
    IV   v0 -> v3 only               not rewirable

Every exchange preserves all in/out degrees. Types I and II gain 2
reciprocated edges, type III gains 4.
"""

from __future__ import annotations

import enum
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

from .core import Digraph, bi_sequence, rho
from .errors import InvalidLength, NodeOutOfRange, NotRewirable

log = logging.getLogger(__name__)


class PathType(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


@dataclass(frozen=True)
class ThreePath:
    v0: int
    v1: int
    v2: int
    v3: int
    ptype: PathType

    @property
    def nodes(self) -> tuple[int, int, int, int]:
        return (self.v0, self.v1, self.v2, self.v3)


@dataclass(frozen=True)
class RewireStep:
    removed: tuple[tuple[int, int], tuple[int, int]]
    added: tuple[tuple[int, int], tuple[int, int]]
    gain: int
    ptype: PathType
    path: tuple[int, int, int, int] = field(default=(), compare=False)


def _type_of(has, v0, v3):
    fwd, back = has(v0, v3), has(v3, v0)
    if fwd and back:
        return PathType.II
    if fwd:
        return PathType.IV
    if back:
        return PathType.III
    return PathType.I


def _exchange(path: ThreePath):
    v0, v1, v2, v3 = path.nodes
    if path.ptype is PathType.I:
        return ((v0, v1), (v2, v3)), ((v0, v3), (v2, v1)), 2
    if path.ptype is PathType.II:
        return ((v1, v2), (v3, v0)), ((v1, v0), (v3, v2)), 2
    if path.ptype is PathType.III:
        return ((v1, v2), (v3, v0)), ((v1, v0), (v3, v2)), 4
    raise NotRewirable(f"type IV 3-path {path.nodes} cannot be rewired")


class _Work:
    """Mutable copy of a digraph with its unreciprocated out-sets kept current."""

    def __init__(self, g: Digraph):
        self.n = g.n
        self.succ = [set(g.successors(v)) for v in range(g.n)]
        self.pred = [set() for _ in range(g.n)]
        for u, s in enumerate(self.succ):
            for v in s:
                self.pred[v].add(u)
        self.ga = [{v for v in s if u not in self.succ[v]} for u, s in enumerate(self.succ)]

    def has(self, u, v):
        return v in self.succ[u]

    def _sync(self, u, v):
        for a, b in ((u, v), (v, u)):
            if b in self.succ[a] and a not in self.succ[b]:
                self.ga[a].add(b)
            else:
                self.ga[a].discard(b)

    def remove(self, u, v):
        assert v in self.succ[u], (u, v)
        self.succ[u].discard(v)
        self.pred[v].discard(u)
        self._sync(u, v)

    def add(self, u, v):
        assert u != v and v not in self.succ[u], (u, v)
        self.succ[u].add(v)
        self.pred[v].add(u)
        self._sync(u, v)

    def classify(self, v0, v1, v2, v3):
        if len({v0, v1, v2, v3}) != 4:
            return None
        ga = self.ga
        if v1 not in ga[v0] or v2 not in ga[v1] or v3 not in ga[v2]:
            return None
        return ThreePath(v0, v1, v2, v3, _type_of(self.has, v0, v3))

    def find(self, v0, include_iv=False):
        ga = self.ga
        for v1 in sorted(ga[v0]):
            for v2 in sorted(ga[v1]):
                if v2 == v0:
                    continue
                for v3 in sorted(ga[v2]):
                    if v3 == v0 or v3 == v1:
                        continue
                    t = _type_of(self.has, v0, v3)
                    if t is not PathType.IV or include_iv:
                        return ThreePath(v0, v1, v2, v3, t)
        return None

    def apply(self, path):
        removed, added, gain = _exchange(path)
        for e in removed:
            self.remove(*e)
        for e in added:
            self.add(*e)
        return RewireStep(removed, added, gain, path.ptype, path.nodes)

    def check_ga(self):
        fresh = [{v for v in s if u not in self.succ[v]} for u, s in enumerate(self.succ)]
        assert fresh == self.ga, "incremental unreciprocated sets drifted"

    def freeze(self) -> Digraph:
        return Digraph._trusted(self.n, self.succ, self.pred)


def _check_node(g, *vs):
    for v in vs:
        if not 0 <= v < g.n:
            raise NodeOutOfRange(f"node {v} outside [0, {g.n})")


def unreciprocated_successors(g: Digraph, v: int) -> list[int]:
    return [w for w in g.successors(v) if not g.has_edge(w, v)]


def classify_three_path(g: Digraph, v0: int, v1: int, v2: int, v3: int) -> ThreePath | None:
    _check_node(g, v0, v1, v2, v3)
    if len({v0, v1, v2, v3}) != 4:
        return None
    for a, b in ((v0, v1), (v1, v2), (v2, v3)):
        if not g.has_edge(a, b) or g.has_edge(b, a):
            return None
    return ThreePath(v0, v1, v2, v3, _type_of(g.has_edge, v0, v3))


def apply_rewire(g: Digraph, path: ThreePath) -> tuple[Digraph, RewireStep]:
    current = classify_three_path(g, *path.nodes)
    if current is None or current.ptype is not path.ptype:
        raise NotRewirable(f"3-path {path.nodes} is not a type {path.ptype.value} path of g")
    work = _Work(g)
    step = work.apply(current)
    return work.freeze(), step


def find_three_path(g: Digraph, v0: int) -> ThreePath | None:
    """First non-type-IV 3-path from ``v0``, searching neighbors in ascending order."""
    _check_node(g, v0)
    return _Work(g).find(v0)


def find_suboptimal_three_path(g: Digraph) -> ThreePath | None:
    work = _Work(g)
    for v in range(g.n):
        p = work.find(v)
        if p is not None:
            return p
    return None


def is_three_path_optimal(g: Digraph) -> bool:
    return find_suboptimal_three_path(g) is None


def greedy_rewire(g: Digraph, *, debug: bool = False, stats: dict | None = None
                  ) -> tuple[Digraph, list[RewireStep]]:
    """Rewire 3-paths of types I-III until none is left.

    Worklist ``S`` starts as all nodes in ascending order. The head ``v0``
    stays queued while rewiring succeeds; each rewiring queues ``v1`` and
    ``v2``. When the queue drains, a full sweep re-queues the start of any
    3-path still suboptimal. ``stats["reseeds"]`` counts those re-queues.
    """
    work = _Work(g)
    steps: list[RewireStep] = []
    queue = deque(range(g.n))
    queued = set(queue)
    reseeds = 0
    while queue:
        while queue:
            v0 = queue[0]
            path = work.find(v0)
            if path is None:
                queue.popleft()
                queued.discard(v0)
                continue
            steps.append(work.apply(path))
            if debug:
                work.check_ga()
            for v in (path.v1, path.v2):
                if v not in queued:
                    queue.append(v)
                    queued.add(v)
        for v in range(g.n):
            if work.find(v) is not None:
                log.info("verification sweep re-seeded node %d", v)
                reseeds += 1
                queue.append(v)
                queued.add(v)
    if stats is not None:
        stats["reseeds"] = reseeds
    return work.freeze(), steps


# -- audits -------------------------------------------------------------------


def strongly_connected_components(n: int, succ) -> list[list[int]]:
    """Iterative Tarjan; ``succ(v)`` yields successors. Components in discovery order."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


@dataclass
class AuditReport:
    three_path_optimal: bool
    ga_nontrivial_sccs: list[list[int]]
    ga_only_disjoint_3cycles: bool
    ga_acyclic: bool
    # odd (length-5) unreciprocated paths lacking the v0 -> v5 shortcut
    shortcut_violations: list[tuple[int, ...]]
    # (3-cycle, outside vertex) pairs not attached uniformly to the cycle
    three_cycle_violations: list[tuple[tuple[int, int, int], int]]
    paths_checked: int = 0


def _is_three_cycle(comp, ga):
    if len(comp) != 3:
        return False
    inside = [(u, v) for u in comp for v in ga[u] if v in comp]
    return len(inside) == 3


def _odd_paths(ga, length, budget) -> Iterator[tuple[int, ...]]:
    n = len(ga)
    count = 0
    for v0 in range(n):
        stack = [(v0,)]
        while stack:
            path = stack.pop()
            if len(path) == length + 1:
                yield path
                count += 1
                if count >= budget:
                    return
                continue
            # reversed so the smallest successor is expanded first
            for w in sorted(ga[path[-1]], reverse=True):
                if w not in path:
                    stack.append(path + (w,))


def _reach(start, adj):
    seen = set(start)
    todo = list(start)
    while todo:
        v = todo.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def structural_audit(g: Digraph, sample_budget: int = 10_000) -> AuditReport:
    ga = [set(unreciprocated_successors(g, v)) for v in range(g.n)]
    ga_pred = [set() for _ in range(g.n)]
    for u in range(g.n):
        for v in ga[u]:
            ga_pred[v].add(u)
    comps = [c for c in strongly_connected_components(g.n, lambda v: sorted(ga[v])) if len(c) > 1]
    only3 = all(_is_three_cycle(c, ga) for c in comps)

    shortcut_bad = []
    checked = 0
    for path in _odd_paths(ga, 5, sample_budget):
        checked += 1
        if path[-1] not in ga[path[0]]:
            shortcut_bad.append(path)

    cycle_bad = []
    for comp in comps:
        if not _is_three_cycle(comp, ga):
            continue
        a = comp[0]
        b = next(iter(ga[a] & set(comp)))
        c = next(iter(ga[b] & set(comp)))
        cyc = (a, b, c)
        connected = (_reach(comp, ga) | _reach(comp, ga_pred)) - set(comp)
        for v in sorted(connected):
            outward = all(x in ga[v] for x in comp)
            inward = all(v in ga[x] for x in comp)
            if not (outward or inward):
                cycle_bad.append((cyc, v))

    return AuditReport(
        three_path_optimal=is_three_path_optimal(g),
        ga_nontrivial_sccs=comps,
        ga_only_disjoint_3cycles=only3,
        ga_acyclic=not comps,
        shortcut_violations=shortcut_bad,
        three_cycle_violations=cycle_bad,
        paths_checked=checked,
    )


# -- even cycles with reciprocated edges ------------------------------------------


def even_cycle_improve(g: Digraph, max_cycle_len: int = 8, max_expansions: int = 1_000_000
                       ) -> tuple[Digraph, int] | None:
    """Improve reciprocity along one even closed walk, if a profitable one exists.

    Walks start on an unreciprocated edge and are edge-distinct, of even
    length at most ``max_cycle_len``, and contain no edge together with its
    reverse. Every reciprocated edge of the walk must sit at positions of a
    single parity; that parity class is deleted and the other class gets its
    reverses added, which leaves all degrees unchanged and gains
    ``|C| - 2 * (reciprocated edges on C)``. The first profitable walk in
    lexicographic search order is applied.
    """
    if max_cycle_len < 4 or max_cycle_len % 2:
        raise InvalidLength(f"max_cycle_len must be even and >= 4, got {max_cycle_len}")
    half = max_cycle_len // 2
    expansions = 0

    def recip(e):
        return g.has_edge(e[1], e[0])

    def search(start):
        walk = [start]
        used = {start}
        # parity of reciprocated edges seen so far, and their count
        state = [None, 0]

        def rec():
            nonlocal expansions
            expansions += 1
            if expansions > max_expansions:
                return None
            head = walk[-1][1]
            if head == start[0] and len(walk) % 2 == 0 and len(walk) >= 4:
                if 2 * state[1] < len(walk):
                    return list(walk), (state[0] if state[0] is not None else 1)
            if len(walk) == max_cycle_len:
                return None
            for w in g.successors(head):
                e = (head, w)
                if e in used or (w, head) in used:
                    continue
                pos = len(walk)
                saved = tuple(state)
                if recip(e):
                    if state[0] is not None and state[0] != pos % 2:
                        continue
                    if state[1] + 1 >= half:
                        continue
                    state[0], state[1] = pos % 2, state[1] + 1
                walk.append(e)
                used.add(e)
                found = rec()
                walk.pop()
                used.discard(e)
                state[0], state[1] = saved
                if found is not None:
                    return found
            return None

        return rec()

    for u in range(g.n):
        for v in g.successors(u):
            if recip((u, v)):
                continue
            found = search((u, v))
            if expansions > max_expansions:
                log.info("even-cycle search budget %d exhausted", max_expansions)
                return None
            if found is None:
                continue
            walk, drop_parity = found
            dropped = {e for p, e in enumerate(walk) if p % 2 == drop_parity}
            kept = [e for p, e in enumerate(walk) if p % 2 != drop_parity]
            n_recip = sum(1 for e in walk if recip(e))
            expected = len(walk) - 2 * n_recip
            edges = (set(g.edges()) - dropped) | {(b, a) for a, b in kept}
            h = Digraph(g.n, edges)
            assert bi_sequence(h) == bi_sequence(g)
            gain = rho(h) - rho(g)
            assert gain == expected, (walk, gain, expected)
            return h, gain
    return None
