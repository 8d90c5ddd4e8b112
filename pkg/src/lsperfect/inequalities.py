"""Rank, clique family and joined antiweb inequalities, and their recognition."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from .generators import antiweb
from .graphcore import (
    CapacityError,
    Graph,
    GraphInputError,
    are_isomorphic,
    bits,
    co_components,
    complement,
    induced_subgraph,
    popcount,
    stability_number,
)
from .polytope import LinearInequality, stab_facets


def rank_inequality(g: Graph, s: int) -> LinearInequality:
    """``x(S) <= alpha(G[S])``."""
    if s == 0:
        raise GraphInputError("rank inequality needs a nonempty node set")
    if s >> g.n:
        raise GraphInputError("node set outside the graph")
    alpha = stability_number(induced_subgraph(g, s))
    return LinearInequality.make(((s >> i) & 1 for i in range(g.n)), alpha)


@dataclass(frozen=True)
class CliqueFamilySpec:
    family: tuple[int, ...]  # cliques as bitsets; repetitions allowed
    p: int


def clique_family_inequality(g: Graph, spec: CliqueFamilySpec) -> LinearInequality:
    n_f = len(spec.family)
    p = spec.p
    if not 1 <= p < n_f:
        raise GraphInputError(f"need 1 <= p < |F|, got p={p}, |F|={n_f}")
    for q in spec.family:
        if q >> g.n or not g.is_clique(q):
            raise GraphInputError(f"family member {bin(q)} is not a clique of the graph")
    r = n_f % p
    counts = [sum((q >> v) & 1 for q in spec.family) for v in range(g.n)]
    coeffs = [(p - r) if c >= p else (p - r - 1) if c == p - 1 else 0 for c in counts]
    return LinearInequality.make(coeffs, (p - r) * (n_f // p))


@dataclass(frozen=True)
class Part:
    nodes: int
    kind: tuple[int, int] | None  # (n, k) of the antiweb, None for the clique part
    alpha: int

    @property
    def is_clique(self) -> bool:
        return self.kind is None


@dataclass(frozen=True)
class JoinedAntiwebDecomposition:
    support: int
    parts: tuple[Part, ...]


def recognize_antiweb(g: Graph) -> tuple[int, int] | None:
    """``(n, k)`` with ``g`` isomorphic to ``antiweb(n, k)``, else ``None``."""
    if g.n > 14:
        raise CapacityError("recognize_antiweb supports n <= 14")
    n = g.n
    for k in range(1, n // 2 + 1):
        cand = antiweb(n, k)
        if cand.m == g.m and are_isomorphic(g, cand):
            return n, k
    return None


def _check_decomposition(g: Graph, d: JoinedAntiwebDecomposition) -> None:
    covered = 0
    for part in d.parts:
        if part.nodes & covered:
            raise GraphInputError("parts overlap")
        covered |= part.nodes
        sub = induced_subgraph(g, part.nodes)
        if part.is_clique:
            if not g.is_clique(part.nodes) or part.alpha != 1:
                raise GraphInputError("clique part is not a clique")
        elif not are_isomorphic(sub, antiweb(*part.kind)):
            raise GraphInputError(f"part is not isomorphic to antiweb{part.kind}")
        elif part.alpha != stability_number(sub):
            raise GraphInputError("declared stability number is wrong")
    if covered != d.support:
        raise GraphInputError("parts do not partition the support")
    for a in range(len(d.parts)):
        for b in range(a + 1, len(d.parts)):
            pa, pb = d.parts[a].nodes, d.parts[b].nodes
            if any(pb & ~g.adj[v] for v in bits(pa)):
                raise GraphInputError("parts are not completely joined")


def joined_antiweb_inequality(g: Graph, d: JoinedAntiwebDecomposition) -> LinearInequality:
    """``sum_i x(A_i) / alpha(A_i) + x(Q) <= 1`` scaled to coprime integers."""
    _check_decomposition(g, d)
    coeffs = [Fraction(0)] * g.n
    for part in d.parts:
        for v in bits(part.nodes):
            coeffs[v] = Fraction(1, part.alpha)
    return LinearInequality.make(coeffs, 1)


def recognize_joined_antiweb(g: Graph, ineq: LinearInequality) -> JoinedAntiwebDecomposition | None:
    """Decomposition showing ``ineq`` is a joined antiweb constraint of ``g``, or ``None``.

    The support splits uniquely into co-components; each must be a single node
    or an antiweb, and after normalising the right-hand side to 1 every node
    must carry ``1 / alpha`` of its co-component.
    """
    if g.n > 14:
        raise CapacityError("recognize_joined_antiweb supports n <= 14")
    if ineq.rhs <= 0 or any(c < 0 for c in ineq.coeffs):
        return None
    support = ineq.support
    if not support:
        return None
    rhs = Fraction(ineq.rhs)
    parts = []
    clique = 0
    for comp in co_components(g, support):
        if popcount(comp) == 1:
            clique |= comp
            alpha, kind = 1, None
        else:
            sub = induced_subgraph(g, comp)
            kind = recognize_antiweb(sub)
            if kind is None:
                return None
            alpha = stability_number(sub)
            parts.append(Part(comp, kind, alpha))
        if any(Fraction(ineq.coeffs[v]) * alpha != rhs for v in bits(comp)):
            return None
    if clique:
        parts.append(Part(clique, None, 1))
    parts.sort(key=lambda p: p.nodes & -p.nodes)
    return JoinedAntiwebDecomposition(support, tuple(parts))


@dataclass
class JoinedAPerfectReport:
    joined_a_perfect: bool
    facets: list[LinearInequality]
    recognized: dict[LinearInequality, JoinedAntiwebDecomposition] = field(default_factory=dict)
    unrecognized: list[LinearInequality] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.joined_a_perfect


def is_joined_a_perfect(g: Graph) -> JoinedAPerfectReport:
    """Is every non-nonnegativity facet of STAB(g) a joined antiweb constraint?"""
    if g.n > 12:
        raise CapacityError("is_joined_a_perfect supports n <= 12")
    fs = [f for f in stab_facets(g).inequalities if not f.is_nonnegativity()]
    report = JoinedAPerfectReport(True, fs)
    for f in fs:
        d = recognize_joined_antiweb(g, f)
        if d is None:
            report.unrecognized.append(f)
        else:
            report.recognized[f] = d
    report.joined_a_perfect = not report.unrecognized
    return report


def _is_odd_antihole(g: Graph) -> bool:
    h = complement(g)
    return g.n >= 5 and g.n % 2 == 1 and all(h.degree(v) == 2 for v in range(h.n)) and len(
        co_components(g)
    ) == 1


def antihole_clique_join_parts(g: Graph) -> list[Graph] | None:
    """Split ``g`` into odd antiholes plus a clique if it is such a join, else ``None``.

    At least one odd antihole is required.
    """
    holes = []
    for comp in co_components(g):
        sub = induced_subgraph(g, comp)
        if popcount(comp) == 1:
            continue
        if not _is_odd_antihole(sub):
            return None
        holes.append(sub)
    return holes or None

