"""The LS+ lift of the edge relaxation and decisions built on it.

The lifted matrix ``Y`` has order ``n + 1``; row/column 0 is the homogenising
coordinate and node ``v`` of the graph sits at index ``v + 1``.  The model is
first written symbolically over the entries of ``Y`` (so certificates can be
checked exactly), then compiled to a numeric problem in the free entries:

* ``Y_00 = 1`` and ``Y_ii = Y_0i`` are substituted;
* ``Y_ij = 0`` for every edge ``ij`` (forced by ``Y_ij >= 0`` together with the
  column-``i`` edge row ``Y_ii + Y_ji <= Y_0i``);
* rows that become constant are checked and dropped, exact duplicates merged.

What is left has a strictly feasible point: the average of the rank-one
matrices of the empty set, all singletons and all non-adjacent pairs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .graphcore import CapacityError, Graph, delete_node
from .polytope import LinearInequality, stab_facets
from .sdp import SdpProblem, SdpResult, solve_sdp

log = logging.getLogger(__name__)

GAP_TOL = 1e-7
EIG_TOL = 1e-8
THRESHOLD = 1e-5
MAX_ITER = 100

Entry = tuple[int, int]


def _entry(a: int, b: int) -> Entry:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class AffineRow:
    """``const + sum coeff * Y[entry] >= 0``."""

    const: int
    coeffs: tuple[tuple[Entry, int], ...]
    tag: str

    def value(self, Y) -> Fraction | float:
        return self.const + sum(c * Y[a][b] for (a, b), c in self.coeffs)


def _row(tag: str, const: int, *terms: tuple[Entry, int]) -> AffineRow:
    acc: dict[Entry, int] = {}
    for e, c in terms:
        acc[e] = acc.get(e, 0) + c
    return AffineRow(const, tuple(sorted((e, c) for e, c in acc.items() if c)), tag)


@dataclass
class SdpModel:
    graph: Graph
    objective: tuple[float, ...]
    equalities: list[AffineRow]  # each row == 0
    inequalities: list[AffineRow]  # each row >= 0

    @property
    def order(self) -> int:
        return self.graph.n + 1

    def violations(self, Y) -> tuple[float, float]:
        """(max |equality residual|, max inequality shortfall) for a candidate ``Y``."""
        eq = max((abs(r.value(Y)) for r in self.equalities), default=0)
        ineq = max((max(0, -r.value(Y)) for r in self.inequalities), default=0)
        return eq, ineq


def _cone_rows(g: Graph, tag: str, x0: tuple[int, list[tuple[Entry, int]]], col) -> list[AffineRow]:
    """Homogenised ESTAB rows for the vector ``(x0, col(1), ..., col(n))``.

    ``x0`` and each ``col(j)`` are affine forms given as ``(const, terms)``.
    """
    c0, t0 = x0
    rows = []
    neg = lambda terms: [(e, -c) for e, c in terms]  # noqa: E731
    for j in range(g.n):
        cj, tj = col(j)
        rows.append(_row(f"{tag}:nonneg[{j}]", cj, *tj))
        rows.append(_row(f"{tag}:box[{j}]", c0 - cj, *t0, *neg(tj)))
    for j, k in g.edges():
        cj, tj = col(j)
        ck, tk = col(k)
        rows.append(_row(f"{tag}:edge[{j},{k}]", c0 - cj - ck, *t0, *neg(tj), *neg(tk)))
    return rows


def build_model(g: Graph, objective: Sequence[float] | None = None) -> SdpModel:
    """Symbolic M+(ESTAB(g)) with objective ``sum objective_i * Y_0i``."""
    if g.n > 14:
        raise CapacityError("build_model supports n <= 14")
    n = g.n
    obj = tuple(float(c) for c in (objective if objective is not None else [1.0] * n))
    if len(obj) != n:
        raise ValueError("objective length must equal the node count")
    equalities = [_row("Y00=1", -1, ((0, 0), 1))]
    equalities += [_row(f"diag[{i}]", 0, ((i + 1, i + 1), 1), ((0, i + 1), -1)) for i in range(n)]
    inequalities: list[AffineRow] = []
    for i in range(1, n + 1):
        # Y e_i in cone(ESTAB)
        inequalities += _cone_rows(
            g, f"col{i}", (0, [((0, i), 1)]), lambda j, i=i: (0, [(_entry(j + 1, i), 1)])
        )
        # Y (e_0 - e_i) in cone(ESTAB)
        inequalities += _cone_rows(
            g,
            f"diff{i}",
            (0, [((0, 0), 1), ((0, i), -1)]),
            lambda j, i=i: (0, [((0, j + 1), 1), (_entry(j + 1, i), -1)]),
        )
    return SdpModel(g, obj, equalities, inequalities)


def rank_one(n: int, stable: int) -> list[list[int]]:
    v = [1] + [(stable >> i) & 1 for i in range(n)]
    return [[a * b for b in v] for a in v]


# --- compilation -------------------------------------------------------------


@dataclass
class Compiled:
    problem: SdpProblem
    variables: list[Entry]  # free entries of Y, in y order
    substitution: dict[Entry, tuple[float, int | None]]  # entry -> (constant, var index)


def _substitution(g: Graph, pinned: Sequence[float] | None) -> tuple[list[Entry], dict]:
    n = g.n
    variables: list[Entry] = []
    sub: dict[Entry, tuple[float, int | None]] = {(0, 0): (1.0, None)}
    for i in range(1, n + 1):
        if pinned is None:
            sub[(0, i)] = (0.0, len(variables))
            variables.append((0, i))
        else:
            sub[(0, i)] = (float(pinned[i - 1]), None)
        sub[(i, i)] = sub[(0, i)]
    for i, j in combinations(range(n), 2):
        e = (i + 1, j + 1)
        if g.has_edge(i, j):
            sub[e] = (0.0, None)
        else:
            sub[e] = (0.0, len(variables))
            variables.append(e)
    return variables, sub


def compile_model(model: SdpModel, pinned: Sequence[float] | None = None, margin: bool = False) -> Compiled:
    """Numeric problem over the free entries; ``margin`` adds a variable ``s`` shifting every cone."""
    g = model.graph
    N = model.order
    variables, sub = _substitution(g, pinned)
    p = len(variables) + (1 if margin else 0)
    C = np.zeros((N, N))
    A = np.zeros((p, N, N))
    for (a, b), (const, k) in sub.items():
        C[a, b] = C[b, a] = const
        if k is not None:
            # Z = C - sum y_k A_k must equal Y, hence A_k = -E_ab (symmetrised)
            A[k, a, b] = A[k, b, a] = -1.0
    if margin:
        A[-1] = np.eye(N)
    rows: dict[tuple, None] = {}
    for r in model.inequalities:
        const = float(r.const)
        lin = np.zeros(p)
        for e, c in r.coeffs:
            sc, k = sub[e]
            const += c * sc
            if k is not None:
                lin[k] += c
        if margin:
            lin[-1] = -1.0
        elif not lin.any():
            if const < -1e-12:
                raise ValueError(f"row {r.tag} is infeasible after substitution")
            continue
        rows.setdefault((const, *lin), None)
    data = np.array(list(rows), dtype=float).reshape(len(rows), p + 1)
    # row: const + lin . y >= 0  <=>  c - G y >= 0 with c = const, G = -lin
    c_vec, G = data[:, 0], -data[:, 1:]
    b = np.zeros(p)
    if margin:
        b[-1] = 1.0
    else:
        for k, e in enumerate(variables):
            if e[0] == 0:
                b[k] = model.objective[e[1] - 1]
    # every free entry of a feasible Y lies in [0, 1]; no a priori box for the margin
    lo, hi = (None, None) if margin else (np.zeros(p), np.ones(p))
    return Compiled(SdpProblem(b, C, A, c_vec, G, lo, hi), variables, sub)


def interior_point(g: Graph, variables: Sequence[Entry]) -> np.ndarray:
    """Average of rank-one lifts of the empty set, singletons and non-adjacent pairs."""
    n = g.n
    sets = [0] + [1 << i for i in range(n)]
    sets += [(1 << i) | (1 << j) for i, j in combinations(range(n), 2) if not g.has_edge(i, j)]
    Y = np.zeros((n + 1, n + 1))
    for s in sets:
        v = np.array([1.0] + [(s >> i) & 1 for i in range(n)])
        Y += np.outer(v, v)
    Y /= len(sets)
    return np.array([Y[a, b] for a, b in variables])


def lifted_matrix(comp: Compiled, y: np.ndarray, n: int) -> np.ndarray:
    Y = np.zeros((n + 1, n + 1))
    for (a, b), (const, k) in comp.substitution.items():
        Y[a, b] = Y[b, a] = const if k is None else y[k]
    return Y


@dataclass
class SdpOutcome:
    value: float
    bound: float
    Y: np.ndarray
    status: str
    iterations: int = 0

    @property
    def x(self) -> np.ndarray:
        return self.Y[0, 1:]


def solve(model: SdpModel, tol: float = GAP_TOL, max_iter: int = MAX_ITER) -> SdpOutcome:
    g = model.graph
    if g.n == 0:
        return SdpOutcome(0.0, 0.0, np.ones((1, 1)), "optimal")
    comp = compile_model(model)
    y0 = interior_point(g, comp.variables)
    res: SdpResult = solve_sdp(comp.problem, y0, tol=tol * 0.1, max_iter=max_iter)
    Y = lifted_matrix(comp, res.y, g.n)
    status = res.status
    if status == "optimal" and res.bound - res.value > tol * (1 + abs(res.value)):
        status = "max-iterations"
    return SdpOutcome(res.value, res.bound, Y, status, res.iterations)


def eta_plus_outcome(g: Graph, tol: float = GAP_TOL, max_iter: int = MAX_ITER) -> SdpOutcome:
    return solve(build_model(g), tol, max_iter)


def eta_plus(g: Graph, tol: float = GAP_TOL, max_iter: int = MAX_ITER) -> float:
    """max 1.x over LS+(g)."""
    return eta_plus_outcome(g, tol, max_iter).value


def max_facet_over_lsplus(
    g: Graph, facet: LinearInequality, tol: float = GAP_TOL, max_iter: int = MAX_ITER
) -> tuple[float, float]:
    """(attained value, certified upper bound) of ``facet.coeffs . x`` over LS+(g)."""
    out = solve(build_model(g, facet.coeffs), tol, max_iter)
    return out.value, out.bound


def membership_margin(g: Graph, x: Sequence[float], tol: float = GAP_TOL, max_iter: int = MAX_ITER) -> float:
    """Largest uniform slack ``s`` of the lift with ``Y_0i = x_i`` (``<= 0``; ``0`` means member)."""
    n = g.n
    if len(x) != n:
        raise ValueError("point length must equal the node count")
    if any(not 0 <= xi <= 1 for xi in x):
        raise ValueError("point must lie in the unit cube")
    model = build_model(g)
    comp = compile_model(model, pinned=x, margin=True)
    prob = comp.problem
    y = np.zeros(prob.p)
    for k, (a, b) in enumerate(comp.variables):
        y[k] = x[a - 1] * x[b - 1]
    Z, z = prob.slack(y)
    y[-1] = min(np.linalg.eigvalsh(Z)[0], z.min(initial=np.inf)) - 1.0
    res = solve_sdp(prob, y, tol=tol * 0.1, max_iter=max_iter)
    return res.value


def membership(g: Graph, x: Sequence[float], tol: float = 1e-6) -> bool:
    """Is ``x`` in LS+(g) (up to ``tol``)?"""
    return membership_margin(g, x) >= -tol


# --- decisions ---------------------------------------------------------------


@dataclass
class FacetCheck:
    facet: LinearInequality
    value: float
    bound: float
    point: tuple[float, ...]

    @property
    def excess(self) -> float:
        return self.value - self.facet.rhs


@dataclass
class LsStatus:
    kind: str  # "perfect" | "imperfect" | "inconclusive"
    facet: LinearInequality | None = None
    point: tuple[float, ...] | None = None
    amount: float = 0.0  # violation (imperfect) or margin (inconclusive)
    checks: list[FacetCheck] = field(default_factory=list, repr=False)

    @property
    def perfect(self) -> bool:
        return self.kind == "perfect"

    @property
    def imperfect(self) -> bool:
        return self.kind == "imperfect"

    def summary(self) -> str:
        if self.kind == "perfect":
            return "perfect"
        return f"{self.kind}({self.facet.format()}; {self.amount:.3e})"


class InconclusiveError(RuntimeError):
    pass


def is_box(f: LinearInequality) -> bool:
    nz = [c for c in f.coeffs if c]
    return len(nz) == 1 and (f.is_nonnegativity() or (nz[0] > 0 and f.rhs == nz[0]))


def is_lsplus_perfect(
    g: Graph, threshold: float = THRESHOLD, tol: float = GAP_TOL, max_iter: int = MAX_ITER
) -> LsStatus:
    """Decide LS+(g) = STAB(g) facet by facet.

    Each non-box facet is maximised over LS+(g).  Violations are judged on
    attained values, validity on certified bounds; anything in between is
    reported as inconclusive.
    """
    if g.n > 12:
        raise CapacityError("is_lsplus_perfect supports n <= 12")
    checks = []
    for f in stab_facets(g).inequalities:
        if is_box(f):
            continue
        out = solve(build_model(g, f.coeffs), tol, max_iter)
        checks.append(FacetCheck(f, out.value, out.bound, tuple(out.x)))
    worst = max(checks, key=lambda c: c.excess, default=None)
    if worst is not None and worst.excess >= threshold:
        return LsStatus("imperfect", worst.facet, worst.point, worst.excess, checks)
    open_ = [c for c in checks if c.bound > c.facet.rhs + threshold]
    if open_:
        c = max(open_, key=lambda c: c.bound - c.facet.rhs)
        return LsStatus("inconclusive", c.facet, c.point, c.excess, checks)
    return LsStatus("perfect", checks=checks)


def is_minimally_lsplus_imperfect(
    g: Graph, threshold: float = THRESHOLD, tol: float = GAP_TOL, max_iter: int = MAX_ITER
) -> bool:
    """Imperfect, while every one-node deletion is perfect."""
    if g.n > 11:
        raise CapacityError("is_minimally_lsplus_imperfect supports n <= 11")
    top = is_lsplus_perfect(g, threshold, tol, max_iter)
    if top.kind == "inconclusive":
        raise InconclusiveError(f"graph itself: {top.summary()}")
    if top.perfect:
        return False
    for v in range(g.n):
        sub = is_lsplus_perfect(delete_node(g, v), threshold, tol, max_iter)
        if sub.kind == "inconclusive":
            raise InconclusiveError(f"deletion of node {v}: {sub.summary()}")
        if sub.imperfect:
            return False
    return True


__all__ = [
    "AffineRow",
    "FacetCheck",
    "InconclusiveError",
    "LsStatus",
    "SdpModel",
    "SdpOutcome",
    "build_model",
    "compile_model",
    "eta_plus",
    "eta_plus_outcome",
    "interior_point",
    "is_box",
    "is_lsplus_perfect",
    "is_minimally_lsplus_imperfect",
    "max_facet_over_lsplus",
    "membership",
    "membership_margin",
    "rank_one",
    "solve",
]
