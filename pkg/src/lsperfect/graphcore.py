"""Small simple graphs stored as adjacency bitsets.

A graph on ``n`` nodes is the tuple ``adj`` where bit ``j`` of ``adj[i]`` is set
iff ``ij`` is an edge.  Node sets are plain ``int`` bitsets over ``0..n-1``.
Everything here is exact and meant for desk-scale graphs (a few dozen nodes).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class GraphInputError(ValueError):
    """Malformed graph data or out-of-range node ids."""


class CapacityError(ValueError):
    """Input exceeds the size an exact routine is willing to handle."""


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphInputError("adjacency length must equal n")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise GraphInputError(f"node {i} has neighbours outside 0..{self.n - 1}")
            if row >> i & 1:
                raise GraphInputError(f"loop at node {i}")
            for j in bits(row):
                if not self.adj[j] >> i & 1:
                    raise GraphInputError(f"asymmetric adjacency between {i} and {j}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphInputError(f"loop at node {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << i) for i in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @property
    def nodes_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def is_clique(self, s: int) -> bool:
        return all(s & ~(1 << v) & ~self.adj[v] == 0 for v in bits(s))

    def is_stable(self, s: int) -> bool:
        return all(self.adj[v] & s == 0 for v in bits(s))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with node ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def to_edge_list(self) -> str:
        es = self.edges()
        return f"{self.n} {len(es)}\n" + "".join(f"{u} {v}\n" for u, v in es)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines format; errors carry line numbers."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise GraphInputError("line 1: missing header")

    def ints(lineno: int, line: str) -> tuple[int, int]:
        parts = line.split(" ")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphInputError(f"line {lineno}: expected two non-negative integers, got {line!r}")
        return int(parts[0]), int(parts[1])

    n, m = ints(1, lines[0])
    if len(lines) - 1 != m:
        raise GraphInputError(f"line 1: header announces {m} edges, found {len(lines) - 1}")
    adj = [0] * n
    for lineno, line in enumerate(lines[1:], start=2):
        u, v = ints(lineno, line)
        if not u < v < n:
            raise GraphInputError(f"line {lineno}: edge {u} {v} violates 0 <= u < v < n")
        if adj[u] >> v & 1:
            raise GraphInputError(f"line {lineno}: duplicate edge {u} {v}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def complement(g: Graph) -> Graph:
    full = g.nodes_mask
    return Graph(g.n, tuple(full & ~a & ~(1 << i) for i, a in enumerate(g.adj)))


def induced_subgraph(g: Graph, s: int | Iterable[int]) -> Graph:
    """Subgraph induced by ``s``; node ``s[k]`` (in increasing id order) becomes ``k``."""
    if not isinstance(s, int):
        s = mask_of(s)
    if s < 0 or s >> g.n:
        raise GraphInputError("node set contains ids outside the graph")
    keep = list(bits(s))
    pos = {v: k for k, v in enumerate(keep)}
    adj = tuple(mask_of(pos[u] for u in bits(g.adj[v] & s)) for v in keep)
    return Graph(len(keep), adj)


def delete_node(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, g.nodes_mask & ~(1 << v))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.n
    return Graph(g1.n + g2.n, g1.adj + tuple(a << shift for a in g2.adj))


def complete_join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between the parts; ``g1`` keeps ids ``0..n1-1``."""
    n1, n2 = g1.n, g2.n
    left = (1 << n1) - 1
    right = ((1 << n2) - 1) << n1
    adj = tuple(a | right for a in g1.adj) + tuple((a << n1) | left for a in g2.adj)
    return Graph(n1 + n2, adj)


def is_claw_free(g: Graph) -> bool:
    """No node has three pairwise non-adjacent neighbours."""
    for v in range(g.n):
        nb = list(bits(g.adj[v]))
        for a, b in combinations(nb, 2):
            if g.has_edge(a, b):
                continue
            if g.adj[v] & ~g.adj[a] & ~g.adj[b] & ~(1 << a) & ~(1 << b):
                return False
    return True


def bipartition(g: Graph) -> tuple[int, int] | None:
    """Two-colouring ``(side0, side1)`` of ``g`` or ``None`` if an odd cycle exists."""
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for w in bits(g.adj[u]):
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    side0 = mask_of(v for v in range(g.n) if color[v] == 0)
    return side0, g.nodes_mask & ~side0


def neighborhood_clique_split(g: Graph, v: int) -> tuple[int, int] | None:
    """Split ``N(v)`` into two cliques (as host-graph bitsets), or ``None``."""
    nb = g.adj[v]
    split = bipartition(complement(induced_subgraph(g, nb)))
    if split is None:
        return None
    ids = list(bits(nb))
    return tuple(mask_of(ids[k] for k in bits(side)) for side in split)  # type: ignore[return-value]


def is_quasi_line(g: Graph) -> bool:
    return all(neighborhood_clique_split(g, v) is not None for v in range(g.n))


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def connected_components(g: Graph, within: int | None = None) -> list[int]:
    """Components of ``g`` restricted to ``within`` as bitsets, ordered by least node."""
    rest = g.nodes_mask if within is None else within
    comps = []
    while rest:
        low = rest & -rest
        comp, frontier = low, low
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def co_components(g: Graph, within: int | None = None) -> list[int]:
    """Components of the complement: the finest partition into completely joined parts."""
    return connected_components(complement(g), within)


def _max_stable(adj: Sequence[int], cand: int, cur: int, best: list[int]) -> None:
    if cand == 0:
        if cur > best[0]:
            best[0] = cur
        return
    if cur + popcount(cand) <= best[0]:
        return
    # branch on a node of minimum degree inside cand: it or one of its neighbours is in some optimum
    v = min(bits(cand), key=lambda u: popcount(adj[u] & cand))
    if popcount(adj[v] & cand) == 0:
        _max_stable(adj, cand & ~(1 << v), cur + 1, best)
        return
    for u in [v, *bits(adj[v] & cand)]:
        _max_stable(adj, cand & ~(1 << u) & ~adj[u], cur + 1, best)
        cand &= ~(1 << u)
        if cur + popcount(cand) <= best[0]:
            return


def stability_number(g: Graph) -> int:
    """Exact size of a largest stable set (branch and bound, ``n <= 32``)."""
    if g.n > 32:
        raise CapacityError("stability_number supports n <= 32")
    best = [0]
    _max_stable(g.adj, g.nodes_mask, 0, best)
    return best[0]


def enumerate_stable_sets(g: Graph) -> list[int]:
    """All stable sets (bitsets) including the empty set, sorted as integers."""
    if g.n > 24:
        raise CapacityError("enumerate_stable_sets supports n <= 24")
    out = []

    def grow(s: int, allowed: int) -> None:
        out.append(s)
        while allowed:
            low = allowed & -allowed
            v = low.bit_length() - 1
            allowed ^= low
            grow(s | low, allowed & ~g.adj[v])

    grow(0, g.nodes_mask)
    out.sort()
    return out


def enumerate_maximal_cliques(g: Graph) -> list[int]:
    """Inclusion-maximal cliques via Bron-Kerbosch with pivoting, sorted as integers."""
    if g.n > 24:
        raise CapacityError("enumerate_maximal_cliques supports n <= 24")
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if p == 0:
            if x == 0:
                out.append(r)
            return
        pivot = max(bits(p | x), key=lambda u: popcount(g.adj[u] & p))
        for v in bits(p & ~g.adj[pivot]):
            expand(r | 1 << v, p & g.adj[v], x & g.adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        expand(0, g.nodes_mask, 0)
    out.sort()
    return out


def _refine(g: Graph, colors: list[int]) -> list[int]:
    """Colour refinement to a stable partition; colours are canonical across graphs."""
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in bits(g.adj[v]))))
            for v in range(g.n)
        ]
        table = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [table[s] for s in sigs]
        if len(table) == len(set(colors)):
            return new
        colors = new


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Backtracking isomorphism test with colour-refinement pruning (``n <= 16``)."""
    if g1.n > 16 or g2.n > 16:
        raise CapacityError("are_isomorphic supports n <= 16")
    if g1.n != g2.n or g1.m != g2.m:
        return False
    n = g1.n
    if sorted(map(popcount, g1.adj)) != sorted(map(popcount, g2.adj)):
        return False
    # refine the disjoint union so colour names agree between the two graphs
    union = disjoint_union(g1, g2)
    col = _refine(union, [0] * (2 * n))
    c1, c2 = col[:n], col[n:]
    if sorted(c1) != sorted(c2):
        return False
    order = sorted(range(n), key=lambda v: (c1.count(c1[v]), -g1.degree(v)))
    image = [-1] * n
    used = 0

    def extend(k: int) -> bool:
        nonlocal used
        if k == n:
            return True
        v = order[k]
        for w in range(n):
            if used >> w & 1 or c2[w] != c1[v]:
                continue
            ok = True
            for u in order[:k]:
                if g1.has_edge(u, v) != g2.has_edge(image[u], w):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = w
            used |= 1 << w
            if extend(k + 1):
                return True
            used &= ~(1 << w)
            image[v] = -1
        return False

    return extend(0)


def has_perfect_matching(g: Graph, within: int | None = None) -> bool:
    """Exact perfect-matching search on the subgraph induced by ``within``."""
    s = g.nodes_mask if within is None else within
    memo: dict[int, bool] = {}

    def match(rest: int) -> bool:
        if rest == 0:
            return True
        if rest in memo:
            return memo[rest]
        low = rest & -rest
        v = low.bit_length() - 1
        ok = any(match(rest & ~low & ~(1 << u)) for u in bits(g.adj[v] & rest))
        memo[rest] = ok
        return ok

    return popcount(s) % 2 == 0 and match(s)


def max_matching_size(g: Graph) -> int:
    memo: dict[int, int] = {}

    def grow(rest: int) -> int:
        if rest == 0:
            return 0
        if rest in memo:
            return memo[rest]
        low = rest & -rest
        v = low.bit_length() - 1
        val = grow(rest & ~low)
        for u in bits(g.adj[v] & rest):
            val = max(val, 1 + grow(rest & ~low & ~(1 << u)))
        memo[rest] = val
        return val

    return grow(g.nodes_mask)


def is_simplicial(g: Graph, v: int) -> bool:
    return g.is_clique(g.adj[v])
