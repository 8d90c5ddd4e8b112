import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from conftest import graphs
from lsperfect.generators import g_emn, g_lt, odd_antihole, web, wheel
from lsperfect.graphcore import CapacityError, Graph, enumerate_stable_sets
from lsperfect.polytope import (
    HPolytope,
    LinearInequality,
    UnsupportedInputError,
    VPolytope,
    affine_rank,
    estab,
    extreme_rays,
    facets,
    incidence,
    is_facet_defining_graph,
    is_full_support,
    max_over,
    nonnegativity,
    qstab,
    set_inequality,
    stab_facets,
    stab_vertices,
    tight_vertices,
    vertices,
)


def scipy_facets(points) -> set[LinearInequality]:
    """Facets from qhull, snapped to small rationals and canonicalised."""
    hull = ConvexHull(np.array(points, dtype=float))
    out = set()
    for eq in hull.equations:
        a, b = eq[:-1], -eq[-1]
        scale = np.min(np.abs(a[np.abs(a) > 1e-9]))
        coeffs = [Fraction(x / scale).limit_denominator(60) for x in a]
        out.add(LinearInequality.make(coeffs, Fraction(b / scale).limit_denominator(60)))
    return out


def full_dim_graphs():
    return graphs(min_n=2, max_n=7)


class TestLinearInequality:
    def test_canonical_scaling(self):
        a = LinearInequality.make([Fraction(1, 2)] * 5, 1)
        assert a == LinearInequality((1,) * 5, 2)
        assert LinearInequality.make([2, 4], 6) == LinearInequality((1, 2), 3)
        assert LinearInequality.make([-3, 0], 0) == LinearInequality((-1, 0), 0)

    def test_sense_is_preserved(self):
        ineq = LinearInequality.make([-2, -2], -2)
        assert ineq == LinearInequality((-1, -1), -1)
        assert ineq.satisfied_by((1, 1)) and not ineq.satisfied_by((0, 0))

    @given(st.lists(st.integers(-9, 9), min_size=1, max_size=6), st.integers(-9, 9), st.integers(1, 12))
    def test_positive_scaling_invariant(self, coeffs, rhs, lam):
        if not any(coeffs) and not rhs:
            return
        base = LinearInequality.make(coeffs, rhs)
        assert LinearInequality.make([Fraction(c * lam, 7) for c in coeffs], Fraction(rhs * lam, 7)) == base

    def test_format(self):
        assert LinearInequality((1, 0, 1), 1).format() == "1 0 1 <= 1"
        assert str(LinearInequality((1, 0, -1), 1)) == "+1x0 -1x2 <= 1"

    def test_predicates(self):
        f = LinearInequality((-1, 0), 0)
        assert f.is_nonnegativity() and not is_full_support(f)
        assert LinearInequality((1, 1), 1).is_tight((1, 0))


class TestRelaxations:
    def test_estab_counts(self):
        assert len(estab(Graph.complete(2)).inequalities) == 5
        cube = estab(Graph.empty(3))
        assert len(cube.inequalities) == 6
        assert len(estab(Graph.cycle(5)).inequalities) == 15

    def test_qstab_examples(self):
        tri = qstab(Graph.complete(3))
        assert tri.as_set() == set(nonnegativity(3)) | {LinearInequality((1, 1, 1), 1)}
        c5 = qstab(Graph.cycle(5))
        assert len([f for f in c5.inequalities if not f.is_nonnegativity()]) == 5

    def test_qstab_equals_estab_on_bipartite(self):
        g = Graph.cycle(6)
        vq, ve = vertices(qstab(g)), vertices(estab(g))
        assert set(vq.vertices) == set(ve.vertices)

    @pytest.mark.parametrize("g", [Graph.cycle(5), g_lt(), web(7, 2), wheel(5)])
    def test_chain_of_relaxations(self, g):
        rng = random.Random(g.n * 31 + g.m)
        for x in stab_vertices(g).vertices:
            assert qstab(g).contains(x) and estab(g).contains(x)
        for _ in range(5):
            c = [rng.randint(0, 4) for _ in range(g.n)]
            s = max(sum(ci * xi for ci, xi in zip(c, x)) for x in stab_vertices(g).vertices)
            assert s <= max_over(qstab(g), c) <= max_over(estab(g), c)

    def test_stab_vertex_counts(self):
        assert len(stab_vertices(Graph.complete(3)).vertices) == 4
        assert len(stab_vertices(Graph.cycle(5)).vertices) == 11

    def test_max_over_examples(self):
        assert max_over(estab(Graph.cycle(5)), [1] * 5) == Fraction(5, 2)
        hull = facets(stab_vertices(Graph.cycle(5)))
        assert max_over(hull, [1] * 5) == 2
        assert max_over(estab(Graph.empty(3)), [1, 0, 0]) == 1


class TestHull:
    def test_c5(self):
        got = stab_facets(Graph.cycle(5)).as_set()
        want = set(nonnegativity(5))
        want |= {set_inequality(5, (1 << u) | (1 << v), 1) for u, v in Graph.cycle(5).edges()}
        want.add(LinearInequality((1,) * 5, 2))
        assert got == want

    def test_triangle_simplex(self):
        got = stab_facets(Graph.complete(3)).as_set()
        assert got == set(nonnegativity(3)) | {LinearInequality((1, 1, 1), 1)}

    def test_antihole_rank_facet(self):
        assert LinearInequality((1,) * 7, 2) in stab_facets(odd_antihole(3)).as_set()

    def test_sorted_output(self):
        fs = stab_facets(web(9, 2)).inequalities
        assert list(fs) == sorted(fs)

    @given(full_dim_graphs())
    @settings(max_examples=40, deadline=None)
    def test_matches_qhull(self, g):
        pts = stab_vertices(g).vertices
        assert stab_facets(g).as_set() == scipy_facets(pts)

    @given(full_dim_graphs())
    @settings(max_examples=30, deadline=None)
    def test_validity_and_tightness(self, g):
        verts = stab_vertices(g).vertices
        for f in stab_facets(g).inequalities:
            assert all(f.satisfied_by(x) for x in verts)
            assert affine_rank(tight_vertices(f, verts)) == g.n - 1

    @pytest.mark.parametrize("g", [Graph.cycle(5), web(7, 2), g_emn(), web(9, 2), Graph.cycle(6), wheel(5)])
    def test_round_trip(self, g):
        v = stab_vertices(g)
        back = vertices(facets(v))
        assert set(back.vertices) == set(v.vertices)

    def test_generic_rational_polytope(self):
        pts = [(0, 0), (Fraction(1, 2), 0), (0, Fraction(1, 3)), (1, 1)]
        hull = facets(VPolytope(2, tuple(pts)))
        assert len(hull.inequalities) == 4
        assert set(vertices(hull).vertices) == set(pts)

    def test_lower_dimensional_input(self):
        with pytest.raises(UnsupportedInputError):
            facets(VPolytope(3, ((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0))))

    def test_capacity(self):
        with pytest.raises(CapacityError):
            stab_facets(Graph.empty(13))

    def test_duplicate_vertices_rejected(self):
        with pytest.raises(ValueError):
            VPolytope(1, ((0,), (0,)))

    def test_integer_output(self):
        for f in stab_facets(g_lt()).inequalities:
            assert all(isinstance(c, int) for c in f.coeffs) and isinstance(f.rhs, int)

    def test_extreme_rays_of_orthant(self):
        rays = extreme_rays([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert sorted(rays) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


class TestFacetDefining:
    def test_examples(self):
        assert is_facet_defining_graph(Graph.cycle(5))
        assert not is_facet_defining_graph(Graph.path(3))
        assert is_facet_defining_graph(Graph.complete(5))

    def test_perfect_graph_facets_are_cliques(self):
        for g in (Graph.cycle(6), Graph.path(5), Graph.complete(4), Graph.cycle(8)):
            assert stab_facets(g).as_set() <= qstab(g).as_set()

    def test_hull_of_incidence_vectors(self):
        g = g_lt()
        assert [incidence(g.n, s) for s in enumerate_stable_sets(g)] == list(stab_vertices(g).vertices)

    def test_hpolytope_dedup(self):
        h = HPolytope.of(2, [LinearInequality((1, 1), 1), LinearInequality.make([2, 2], 2)])
        assert len(h.inequalities) == 1
