"""Exact polyhedra over the rationals.

Inequalities are kept in a canonical integer form so that equal facets compare
equal syntactically.  The hull kernel is a double description method run on
integer vectors (rays are kept primitive, so no fractions appear internally).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .graphcore import CapacityError, Graph, bits, enumerate_maximal_cliques, enumerate_stable_sets

Number = int | Fraction


class UnsupportedInputError(ValueError):
    """Polyhedron outside what the exact kernel handles (e.g. not full-dimensional)."""


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = reduce(gcd, vec, 0)
    if g <= 1:
        return tuple(vec)
    return tuple(v // g for v in vec)


@dataclass(frozen=True, order=True)
class LinearInequality:
    """``coeffs . x <= rhs`` with coprime integer data.

    Only positive scalings are applied when canonicalising, so the sense never
    flips; two inequalities describe the same half-space iff they are equal.
    """

    coeffs: tuple[int, ...]
    rhs: int

    @classmethod
    def make(cls, coeffs: Iterable[Number], rhs: Number) -> "LinearInequality":
        fr = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
        den = reduce(_lcm, (f.denominator for f in fr), 1)
        ints = _primitive([int(f * den) for f in fr])
        return cls(tuple(ints[:-1]), ints[-1])

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @property
    def support(self) -> int:
        return sum(1 << i for i, c in enumerate(self.coeffs) if c)

    def lhs(self, x: Sequence[Number]) -> Number:
        return sum(c * xi for c, xi in zip(self.coeffs, x) if c)

    def satisfied_by(self, x: Sequence[Number]) -> bool:
        return self.lhs(x) <= self.rhs

    def is_tight(self, x: Sequence[Number]) -> bool:
        return self.lhs(x) == self.rhs

    def is_nonnegativity(self) -> bool:
        return self.rhs == 0 and sum(1 for c in self.coeffs if c) == 1 and min(self.coeffs) < 0

    def format(self) -> str:
        return " ".join(map(str, self.coeffs)) + f" <= {self.rhs}"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c:+d}x{i}")
        return (" ".join(terms) or "0") + f" <= {self.rhs}"


@dataclass(frozen=True)
class VPolytope:
    dim: int
    vertices: tuple[tuple[Number, ...], ...]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertices must be pairwise distinct")
        if any(len(v) != self.dim for v in self.vertices):
            raise ValueError("vertex of wrong dimension")


@dataclass(frozen=True)
class HPolytope:
    dim: int
    inequalities: tuple[LinearInequality, ...]

    @classmethod
    def of(cls, dim: int, ineqs: Iterable[LinearInequality]) -> "HPolytope":
        seen: dict[LinearInequality, None] = {}
        for h in ineqs:
            if h.dim != dim:
                raise ValueError("inequality of wrong dimension")
            seen.setdefault(h, None)
        return cls(dim, tuple(seen))

    def sorted(self) -> "HPolytope":
        return HPolytope(self.dim, tuple(sorted(self.inequalities)))

    def contains(self, x: Sequence[Number]) -> bool:
        return all(h.satisfied_by(x) for h in self.inequalities)

    def as_set(self) -> frozenset[LinearInequality]:
        return frozenset(self.inequalities)


def unit(n: int, i: int, scale: int = 1) -> tuple[int, ...]:
    return tuple(scale if j == i else 0 for j in range(n))


def nonnegativity(n: int) -> list[LinearInequality]:
    return [LinearInequality(unit(n, i, -1), 0) for i in range(n)]


def estab(g: Graph) -> HPolytope:
    n = g.n
    ineqs = nonnegativity(n) + [LinearInequality(unit(n, i), 1) for i in range(n)]
    for u, v in g.edges():
        ineqs.append(LinearInequality.make((1 if i in (u, v) else 0 for i in range(n)), 1))
    return HPolytope.of(n, ineqs)


def set_inequality(n: int, s: int, rhs: int) -> LinearInequality:
    return LinearInequality.make(((s >> i) & 1 for i in range(n)), rhs)


def qstab(g: Graph) -> HPolytope:
    if g.n > 24:
        raise CapacityError("qstab supports n <= 24")
    ineqs = nonnegativity(g.n) + [set_inequality(g.n, q, 1) for q in enumerate_maximal_cliques(g)]
    return HPolytope.of(g.n, ineqs)


def incidence(n: int, s: int) -> tuple[int, ...]:
    return tuple((s >> i) & 1 for i in range(n))


def stab_vertices(g: Graph) -> VPolytope:
    if g.n > 24:
        raise CapacityError("stab_vertices supports n <= 24")
    return VPolytope(g.n, tuple(incidence(g.n, s) for s in enumerate_stable_sets(g)))


# --- double description ----------------------------------------------------


def _independent_rows(rows: Sequence[Sequence[int]], d: int) -> list[int]:
    """Indices of the first ``d`` linearly independent rows (greedy, in order)."""
    basis: list[list[Fraction]] = []  # reduced rows with pivot columns
    pivots: list[int] = []
    chosen = []
    for idx, row in enumerate(rows):
        r = [Fraction(x) for x in row]
        for b, p in zip(basis, pivots):
            if r[p]:
                f = r[p] / b[p]
                r = [x - f * y for x, y in zip(r, b)]
        nz = next((j for j, x in enumerate(r) if x), None)
        if nz is None:
            continue
        basis.append(r)
        pivots.append(nz)
        chosen.append(idx)
        if len(chosen) == d:
            break
    return chosen


def _inverse_columns(mat: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Primitive integer multiples of the columns of ``mat^{-1}``."""
    d = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(d)] for i, row in enumerate(mat)]
    for col in range(d):
        piv = next(r for r in range(col, d) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(d):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    cols = []
    for j in range(d):
        col = [aug[i][d + j] for i in range(d)]
        den = reduce(_lcm, (c.denominator for c in col), 1)
        cols.append(_primitive([int(c * den) for c in col]))
    return cols


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _words(mask: int, nwords: int) -> list[int]:
    return [(mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF for w in range(nwords)]


def extreme_rays(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{y : row . y >= 0 for every row}``.

    Rows are integer vectors; the cone must have full column rank.  Rows are
    inserted in the given order after an initial simplicial cone, and new rays
    are formed only from combinatorially adjacent pairs.
    """
    if not rows:
        raise UnsupportedInputError("no constraints")
    d = len(rows[0])
    basis = _independent_rows(rows, d)
    if len(basis) < d:
        raise UnsupportedInputError("constraint matrix is rank deficient (cone not pointed)")
    rays = _inverse_columns([rows[i] for i in basis])
    # zero sets are bitsets over row indices processed so far
    zeros = [sum(1 << basis[k] for k in range(d) if k != j) for j in range(d)]
    done = set(basis)
    nwords = (len(rows) + 63) // 64
    for idx, row in enumerate(rows):
        if idx in done:
            continue
        vals = [_dot(row, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        if not neg:
            for k, v in enumerate(vals):
                if v == 0:
                    zeros[k] |= 1 << idx
            done.add(idx)
            continue
        new_rays = []
        new_zeros = []
        if pos:
            zarr = np.array([_words(z, nwords) for z in zeros], dtype=np.uint64)
            zc = [bin(z).count("1") for z in zeros]
            for p in pos:
                zp = zeros[p]
                for q in neg:
                    common = zp & zeros[q]
                    if bin(common).count("1") < d - 2:
                        continue
                    if min(zc[p], zc[q]) == bin(common).count("1"):
                        # one zero set contains the other: never adjacent for distinct extreme rays
                        continue
                    cw = np.array(_words(common, nwords), dtype=np.uint64)
                    covering = np.count_nonzero(np.all((zarr & cw) == cw, axis=1))
                    if covering > 2:
                        continue
                    vp, vq = vals[p], vals[q]
                    ray = _primitive([vp * b - vq * a for a, b in zip(rays[p], rays[q])])
                    new_rays.append(ray)
                    new_zeros.append(common | 1 << idx)
        keep = [k for k, v in enumerate(vals) if v >= 0]
        rays = [rays[k] for k in keep] + new_rays
        zeros = [zeros[k] | (1 << idx if vals[k] == 0 else 0) for k in keep] + new_zeros
        done.add(idx)
    return rays


def facets(v: VPolytope) -> HPolytope:
    """Irredundant inequality description of a full-dimensional V-polytope."""
    if v.dim > 12:
        raise CapacityError("facets supports dimension <= 12")
    verts = sorted(v.vertices)
    if len(verts) < v.dim + 1:
        raise UnsupportedInputError("too few vertices for a full-dimensional polytope")
    # (a, b) with b - a.x >= 0 for every vertex x
    rows = []
    for x in verts:
        fr = [Fraction(c) for c in x]
        den = reduce(_lcm, (f.denominator for f in fr), 1)
        rows.append([-int(f * den) for f in fr] + [den])
    try:
        rays = extreme_rays(rows)
    except UnsupportedInputError as exc:
        raise UnsupportedInputError("polytope is not full-dimensional") from exc
    ineqs = [LinearInequality.make(r[:-1], r[-1]) for r in rays]
    return HPolytope.of(v.dim, sorted(set(ineqs)))


def vertices(h: HPolytope) -> VPolytope:
    """Vertex list of a bounded, nonempty H-polytope (exact)."""
    if h.dim > 12:
        raise CapacityError("vertex enumeration supports dimension <= 12")
    rows = [list(-c for c in ineq.coeffs) + [ineq.rhs] for ineq in h.inequalities]
    rows.append([0] * h.dim + [1])
    try:
        rays = extreme_rays(rows)
    except UnsupportedInputError as exc:
        raise UnsupportedInputError("polytope is unbounded or lower-dimensional") from exc
    pts = []
    for r in rays:
        t = r[-1]
        if t <= 0:
            raise UnsupportedInputError("polytope is unbounded")
        pts.append(tuple(Fraction(c, t) for c in r[:-1]))
    return VPolytope(h.dim, tuple(sorted(set(pts))))


def max_over(h: HPolytope, objective: Sequence[Number]) -> Fraction:
    """Exact maximum of ``objective . x`` over ``h`` by vertex enumeration."""
    verts = vertices(h).vertices
    if not verts:
        raise UnsupportedInputError("empty polytope")
    return max(sum((Fraction(c) * x for c, x in zip(objective, v)), Fraction(0)) for v in verts)


def is_full_support(ineq: LinearInequality) -> bool:
    return all(ineq.coeffs)


def is_facet_defining_graph(g: Graph) -> bool:
    if g.n > 12:
        raise CapacityError("is_facet_defining_graph supports n <= 12")
    return any(is_full_support(f) for f in stab_facets(g).inequalities)


def stab_facets(g: Graph) -> HPolytope:
    """Facets of STAB(g); the empty graph on zero nodes has none."""
    if g.n == 0:
        return HPolytope(0, ())
    return facets(stab_vertices(g))


def tight_vertices(ineq: LinearInequality, verts: Iterable[Sequence[Number]]) -> list[Sequence[Number]]:
    return [x for x in verts if ineq.is_tight(x)]


def affine_rank(points: Sequence[Sequence[Number]]) -> int:
    """Dimension of the affine hull of ``points`` (exact)."""
    if not points:
        return -1
    base = points[0]
    rows = [[Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in points[1:]]
    rank = 0
    cols = len(base)
    for c in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def support_nodes(ineq: LinearInequality) -> list[int]:
    return list(bits(ineq.support))
