"""Hand-built digraph families with known reciprocity behaviour."""

from recipro.core import BiSequence, Digraph


def fan(n):
    """Source 0 -> 2n middle nodes -> sink 2n+1."""
    s, r = 0, 2 * n + 1
    mids = range(1, 2 * n + 1)
    return Digraph(2 * n + 2, [(s, i) for i in mids] + [(i, r) for i in mids])


def hub(n):
    """2n sources -> hub 0 -> 2n sinks."""
    srcs = range(1, 2 * n + 1)
    sinks = range(2 * n + 1, 4 * n + 1)
    return Digraph(4 * n + 1, [(s, 0) for s in srcs] + [(0, t) for t in sinks])


def staircase(n):
    """Bi-sequence (n - i, i), i = 0..n; realized only by the transitive tournament."""
    return BiSequence([n - i for i in range(n + 1)], list(range(n + 1)))


def transitive_tournament(k):
    return Digraph(k, [(i, j) for i in range(k) for j in range(k) if i < j])


# nu = 1 bi-sequences whose maximum reciprocity sits 4 (eps even) and 5 (eps odd) below eps
GAP4 = BiSequence((1, 3, 2, 2, 2), (0, 4, 2, 2, 2))
GAP5 = BiSequence((1, 0, 4, 2, 2, 2), (0, 1, 4, 2, 2, 2))
