"""Graph families and graph operations used as test material.

Circulant conventions (fixed once, used everywhere):

* ``antiweb(n, k)``: ``i ~ j`` iff ``k <= |i - j| <= n - k``.  So ``antiweb(n, 1)``
  is ``K_n``, ``antiweb(2k+1, k)`` the odd hole and ``antiweb(2k+1, 2)`` the odd
  antihole.
* ``web(n, k)``: ``i ~ j`` iff the circular distance of ``i`` and ``j`` is at most
  ``k``.  So ``web(2k+1, 1)`` is the odd hole, ``web(2k+1, k-1)`` the odd antihole
  and ``web(n, k)`` is the complement of ``antiweb(n, k+1)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .graphcore import (
    Graph,
    GraphInputError,
    bits,
    complement,
    complete_join,
    delete_node,
    has_perfect_matching,
    is_claw_free,
    is_simplicial,
    mask_of,
)


class ConstructionError(ValueError):
    """A construction produced (or would produce) an object violating its contract."""


def antiweb(n: int, k: int) -> Graph:
    if k < 1 or 2 * k > n:
        raise GraphInputError(f"antiweb needs 1 <= k and 2k <= n, got n={n}, k={k}")
    return Graph.from_edges(n, ((i, j) for i, j in combinations(range(n), 2) if k <= j - i <= n - k))


def web(n: int, k: int) -> Graph:
    if k < 1 or 2 * k > n:
        raise GraphInputError(f"web needs 1 <= k and 2k <= n, got n={n}, k={k}")
    return Graph.from_edges(
        n, ((i, j) for i, j in combinations(range(n), 2) if min(j - i, n - j + i) <= k)
    )


def odd_hole(k: int) -> Graph:
    if k < 2:
        raise GraphInputError("odd holes need k >= 2")
    return Graph.cycle(2 * k + 1)


def odd_antihole(k: int) -> Graph:
    return complement(odd_hole(k))


def line_graph(h: Graph) -> Graph:
    """One node per edge of ``h`` (lexicographic edge order); adjacent iff the edges meet."""
    es = h.edges()
    if not es:
        raise GraphInputError("line graph of an edgeless graph is empty")
    return Graph.from_edges(
        len(es), ((a, b) for a, b in combinations(range(len(es)), 2) if set(es[a]) & set(es[b]))
    )


@dataclass(frozen=True)
class Ear:
    a: int
    b: int
    length: int  # number of edges of the path


@dataclass(frozen=True)
class EarDecompositionSpec:
    cycle_length: int
    ears: tuple[Ear, ...] = field(default_factory=tuple)


def is_hypomatchable(h: Graph) -> bool:
    return h.n % 2 == 1 and all(
        has_perfect_matching(h, h.nodes_mask & ~(1 << v)) for v in range(h.n)
    )


def hypomatchable_from_ears(spec: EarDecompositionSpec) -> Graph:
    """Odd cycle plus a sequence of odd ears; verified hypomatchable."""
    c = spec.cycle_length
    if c < 3 or c % 2 == 0:
        raise ConstructionError(f"initial cycle must be odd with length >= 3, got {c}")
    n = c
    edges = {(i, (i + 1) % c) if i + 1 < c else (0, c - 1) for i in range(c)}
    for ear in spec.ears:
        if ear.length < 1 or ear.length % 2 == 0:
            raise ConstructionError(f"ear {ear} must have an odd number of edges")
        if ear.a == ear.b or not (0 <= ear.a < n and 0 <= ear.b < n):
            raise ConstructionError(f"ear {ear} needs two distinct existing endpoints")
        path = [ear.a, *range(n, n + ear.length - 1), ear.b]
        n += ear.length - 1
        for u, v in zip(path, path[1:]):
            e = (min(u, v), max(u, v))
            if e in edges:
                raise ConstructionError(f"ear {ear} duplicates edge {e}")
            edges.add(e)
    h = Graph.from_edges(n, sorted(edges))
    if not is_hypomatchable(h):
        raise ConstructionError("ear construction is not hypomatchable")
    return h


@dataclass(frozen=True)
class StretchSpec:
    v: int
    a1: frozenset[int]
    a2: frozenset[int]


def node_stretching(g: Graph, s: StretchSpec) -> Graph:
    """Replace ``v`` by the path ``v1 - w - v2`` with ``v_i`` joined to ``A_i``.

    ``v1`` keeps the id of ``v``; ``w`` gets id ``n`` and ``v2`` id ``n + 1``.
    """
    if not 0 <= s.v < g.n:
        raise GraphInputError(f"node {s.v} not in graph")
    a1, a2 = mask_of(s.a1), mask_of(s.a2)
    if not a1 or not a2 or a1 & a2 or a1 | a2 != g.adj[s.v]:
        raise GraphInputError("stretch sets must partition N(v) into two nonempty parts")
    n = g.n
    w, v2 = n, n + 1
    edges = [(x, y) for x, y in g.edges() if s.v not in (x, y)]
    edges += [(s.v, u) for u in bits(a1)]
    edges += [(v2, u) for u in bits(a2)]
    edges += [(s.v, w), (w, v2)]
    return Graph.from_edges(n + 2, edges)


def all_stretchings(g: Graph, v: int) -> list[StretchSpec]:
    """Every unordered bipartition of ``N(v)`` into two nonempty parts."""
    nb = g.neighbors(v)
    out = []
    if len(nb) < 2:
        return out
    first, rest = nb[0], nb[1:]
    for r in range(len(rest)):
        for extra in combinations(rest, r):
            a1 = frozenset((first, *extra))
            out.append(StretchSpec(v, a1, frozenset(nb) - a1))
    return out


def _c5_plus_apex(apex_neighbors: tuple[int, ...]) -> Graph:
    # node 0 is the apex; 1..5 carry the 5-cycle 1-3-5-2-4-1 (edges 13,14,24,25,35)
    rim = [(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)]
    return Graph.from_edges(6, rim + [(0, u) for u in apex_neighbors])


def g_lt() -> Graph:
    """6-node graph: 5-cycle plus a node adjacent to three consecutive cycle nodes."""
    return _c5_plus_apex((1, 2, 4))


def g_emn() -> Graph:
    """6-node graph: 5-cycle plus a node adjacent to four cycle nodes."""
    return _c5_plus_apex((1, 2, 3, 4))


def wheel(rim: int) -> Graph:
    return complete_join(Graph.complete(1), Graph.cycle(rim))


def strip_composition(g1: Graph, a1: int, b1: int, g2: Graph, a2: int, b2: int) -> Graph:
    """Glue strips ``(g1, a1, b1)`` and ``(g2, a2, b2)`` at their simplicial ends.

    The remnant of ``g1`` keeps its relative order and comes first.
    """
    for g, a, b in ((g1, a1, b1), (g2, a2, b2)):
        if a == b or not (0 <= a < g.n and 0 <= b < g.n):
            raise GraphInputError("strip ends must be two distinct nodes of the strip")
        if not (is_simplicial(g, a) and is_simplicial(g, b)):
            raise GraphInputError("strip ends must be simplicial")
    keep1 = g1.nodes_mask & ~(1 << a1) & ~(1 << b1)
    keep2 = g2.nodes_mask & ~(1 << a2) & ~(1 << b2)
    ids1 = {v: k for k, v in enumerate(bits(keep1))}
    off = len(ids1)
    ids2 = {v: off + k for k, v in enumerate(bits(keep2))}
    edges = [(ids1[u], ids1[v]) for u, v in g1.edges() if u in ids1 and v in ids1]
    edges += [(ids2[u], ids2[v]) for u, v in g2.edges() if u in ids2 and v in ids2]
    for e1, e2 in ((a1, a2), (b1, b2)):
        for u in bits(g1.adj[e1] & keep1):
            for v in bits(g2.adj[e2] & keep2):
                edges.append((ids1[u], ids2[v]))
    return Graph.from_edges(off + len(ids2), edges)


def _random_line_graph(n: int, rng: random.Random) -> Graph:
    # root graph with exactly n edges
    for _ in range(100):
        nodes = rng.randint(2, n + 1)
        pairs = list(combinations(range(nodes), 2))
        if len(pairs) < n:
            continue
        return line_graph(Graph.from_edges(nodes, rng.sample(pairs, n)))
    return Graph.complete(n)


def _random_circulant(n: int, rng: random.Random) -> Graph:
    k = rng.randint(1, n // 2)
    return web(n, k) if rng.random() < 0.5 else antiweb(n, k)


def _random_join(n: int, rng: random.Random) -> Graph:
    g = Graph.empty(0)
    while g.n < n:
        left = n - g.n
        if left >= 5 and rng.random() < 0.7:
            size = rng.randint(5, left)
            # alpha >= 3 in one part of a join always creates a claw
            part = antiweb(size, 2)
        else:
            part = Graph.complete(rng.randint(1, left))
        g = complete_join(g, part)
    return g


def _random_repair(n: int, rng: random.Random) -> Graph:
    # random graph; every claw found gets an edge between two of its leaves
    p = rng.uniform(0.2, 0.7)
    adj = [0] * n
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    while True:
        claw = _find_claw(adj)
        if claw is None:
            return Graph(n, tuple(adj))
        x, y = rng.sample(claw, 2)
        adj[x] |= 1 << y
        adj[y] |= 1 << x


def _find_claw(adj: list[int]) -> list[int] | None:
    for v, nb in enumerate(adj):
        for a, b in combinations(list(bits(nb)), 2):
            if adj[a] >> b & 1:
                continue
            rest = nb & ~adj[a] & ~adj[b] & ~(1 << a) & ~(1 << b)
            if rest:
                return [a, b, (rest & -rest).bit_length() - 1]
    return None


def _random_perturbed(n: int, rng: random.Random) -> Graph:
    # induced subgraphs of claw-free graphs stay claw-free
    base = _random_circulant(n + 1, rng) if n + 1 >= 4 else Graph.complete(n + 1)
    return delete_node(base, rng.randrange(base.n))


_RECIPES = (_random_line_graph, _random_circulant, _random_join, _random_repair, _random_perturbed)


def random_claw_free(n: int, seed: int) -> Graph:
    """Deterministic (per ``n, seed``) claw-free graph on ``n`` nodes from mixed recipes."""
    if not 1 <= n <= 14:
        raise GraphInputError("random_claw_free supports 1 <= n <= 14")
    rng = random.Random(f"claw-free:{n}:{seed}")
    while True:
        recipe = rng.choice(_RECIPES)
        if n < 4 and recipe in (_random_circulant, _random_join, _random_perturbed):
            continue
        g = recipe(n, rng)
        if g.n == n and is_claw_free(g):
            perm = list(range(n))
            rng.shuffle(perm)
            return g.relabel(perm)


__all__ = [
    "ConstructionError",
    "Ear",
    "EarDecompositionSpec",
    "StretchSpec",
    "all_stretchings",
    "antiweb",
    "g_emn",
    "g_lt",
    "hypomatchable_from_ears",
    "is_hypomatchable",
    "line_graph",
    "node_stretching",
    "odd_antihole",
    "odd_hole",
    "random_claw_free",
    "strip_composition",
    "web",
    "wheel",
]
