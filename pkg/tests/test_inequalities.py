
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_alpha
from lsperfect.generators import (
    Ear,
    EarDecompositionSpec,
    antiweb,
    g_emn,
    g_lt,
    hypomatchable_from_ears,
    line_graph,
    odd_antihole,
    random_claw_free,
    web,
    wheel,
)
from lsperfect.graphcore import (
    Graph,
    GraphInputError,
    complete_join,
    enumerate_maximal_cliques,
    enumerate_stable_sets,
    mask_of,
)
from lsperfect.inequalities import (
    CliqueFamilySpec,
    JoinedAntiwebDecomposition,
    Part,
    antihole_clique_join_parts,
    clique_family_inequality,
    is_joined_a_perfect,
    joined_antiweb_inequality,
    rank_inequality,
    recognize_antiweb,
    recognize_joined_antiweb,
)
from lsperfect.polytope import HPolytope, LinearInequality, incidence, max_over, nonnegativity, stab_facets


def valid_for_stab(g, ineq):
    return all(ineq.satisfied_by(incidence(g.n, s)) for s in enumerate_stable_sets(g))


class TestRank:
    def test_examples(self):
        c5 = Graph.cycle(5)
        assert rank_inequality(c5, 0b100) == LinearInequality((0, 0, 1, 0, 0), 1)
        assert rank_inequality(c5, 0b11111) == LinearInequality((1,) * 5, 2)
        with pytest.raises(GraphInputError):
            rank_inequality(c5, 0)

    @pytest.mark.parametrize("ears", [(Ear(0, 1, 3),), (Ear(0, 2, 1),), (Ear(0, 2, 3), Ear(1, 3, 1))])
    def test_line_graph_of_hypomatchable(self, ears):
        h = hypomatchable_from_ears(EarDecompositionSpec(5, ears))
        lg = line_graph(h)
        ineq = rank_inequality(lg, lg.nodes_mask)
        assert ineq.rhs == (h.n - 1) // 2 == brute_alpha(lg)


class TestCliqueFamily:
    def test_c5_edges(self):
        c5 = Graph.cycle(5)
        fam = tuple(mask_of(e) for e in c5.edges())
        assert clique_family_inequality(c5, CliqueFamilySpec(fam, 2)) == LinearInequality((1,) * 5, 2)

    def test_errors(self):
        c5 = Graph.cycle(5)
        fam = tuple(mask_of(e) for e in c5.edges())
        with pytest.raises(GraphInputError):
            clique_family_inequality(c5, CliqueFamilySpec(fam, 5))
        with pytest.raises(GraphInputError):
            clique_family_inequality(c5, CliqueFamilySpec((0b101,) + fam, 2))

    def test_w_o_coefficients(self):
        # |F| = 7, p = 3: r = 1, nodes in exactly 2 members get p - r - 1 = 1
        g = web(7, 1)
        fam = tuple(mask_of(e) for e in g.edges())
        ineq = clique_family_inequality(g, CliqueFamilySpec(fam, 3))
        assert ineq == LinearInequality.make([1] * 7, 2 * 2)
        assert valid_for_stab(g, ineq)

    def test_vanishing_w_o(self):
        # |F| = 5, p = 3: r = 2 so p - r - 1 = 0
        g = Graph.cycle(5)
        fam = tuple(mask_of(e) for e in g.edges())
        ineq = clique_family_inequality(g, CliqueFamilySpec(fam, 3))
        assert ineq == LinearInequality((0,) * 5, 1)

    @given(st.integers(5, 9), st.integers(0, 500), st.data())
    @settings(max_examples=40, deadline=None)
    def test_always_valid(self, n, seed, data):
        g = random_claw_free(n, seed)
        cliques = [q for q in enumerate_maximal_cliques(g) if q]
        fam = tuple(data.draw(st.lists(st.sampled_from(cliques), min_size=2, max_size=8)))
        p = data.draw(st.integers(1, len(fam) - 1))
        ineq = clique_family_inequality(g, CliqueFamilySpec(fam, p))
        assert valid_for_stab(g, ineq)


class TestAntiwebRecognition:
    def test_examples(self):
        assert recognize_antiweb(Graph.complete(5)) == (5, 1)
        assert recognize_antiweb(Graph.cycle(7)) == (7, 3)
        assert recognize_antiweb(Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])) is None

    @pytest.mark.parametrize("n, k", [(8, 3), (10, 4), (11, 2), (9, 4)])
    def test_relabelled(self, n, k):
        perm = list(range(n))[::-1]
        perm[0], perm[2] = perm[2], perm[0]
        assert recognize_antiweb(antiweb(n, k).relabel(perm)) == (n, k)


class TestJoinedAntiweb:
    def test_clique_part(self):
        g = Graph.complete(3)
        d = JoinedAntiwebDecomposition(0b111, (Part(0b111, None, 1),))
        assert joined_antiweb_inequality(g, d) == LinearInequality((1, 1, 1), 1)

    def test_hole_part(self):
        g = Graph.cycle(5)
        d = JoinedAntiwebDecomposition(0b11111, (Part(0b11111, (5, 2), 2),))
        assert joined_antiweb_inequality(g, d) == LinearInequality((1,) * 5, 2)

    def test_antiwheel(self):
        g = complete_join(Graph.complete(1), odd_antihole(3))
        d = JoinedAntiwebDecomposition(g.nodes_mask, (Part(1, None, 1), Part(g.nodes_mask & ~1, (7, 2), 2)))
        ineq = joined_antiweb_inequality(g, d)
        assert ineq == LinearInequality((2,) + (1,) * 7, 2)
        assert ineq in stab_facets(g).as_set()
        assert recognize_joined_antiweb(g, ineq) == d

    def test_bad_decompositions(self):
        g = Graph.cycle(5)
        with pytest.raises(GraphInputError):
            joined_antiweb_inequality(g, JoinedAntiwebDecomposition(0b11, (Part(0b1, None, 1), Part(0b100, None, 1))))
        with pytest.raises(GraphInputError):
            joined_antiweb_inequality(g, JoinedAntiwebDecomposition(0b111, (Part(0b111, None, 1),)))
        with pytest.raises(GraphInputError):
            joined_antiweb_inequality(g, JoinedAntiwebDecomposition(0b11111, (Part(0b11111, (5, 1), 1),)))

    def test_recognition_examples(self):
        c5 = Graph.cycle(5)
        d = recognize_joined_antiweb(c5, LinearInequality((1,) * 5, 2))
        assert d is not None and len(d.parts) == 1 and d.parts[0].kind == (5, 2) and d.parts[0].alpha == 2
        e = recognize_joined_antiweb(c5, LinearInequality((1, 1, 0, 0, 0), 1))
        assert e is not None and [p.kind for p in e.parts] == [None]

    def test_gear_like_facet_not_recognised(self):
        # a non-rank facet with coefficients 2 and 1 on a claw-free graph
        g = random_claw_free(8, 0)
        odd = [f for f in stab_facets(g).inequalities if sorted(set(f.coeffs)) == [0, 1, 2] and f.rhs == 2]
        assert odd
        for f in odd:
            assert recognize_joined_antiweb(g, f) is None

    def test_rejects_negative_and_empty(self):
        g = Graph.cycle(5)
        assert recognize_joined_antiweb(g, LinearInequality((-1, 0, 0, 0, 0), 0)) is None
        assert recognize_joined_antiweb(g, LinearInequality((0,) * 5, 1)) is None

    @pytest.mark.parametrize("g", [web(7, 2), complete_join(Graph.complete(2), Graph.cycle(5)), wheel(5)])
    def test_scaling_invariance_and_validity(self, g):
        for f in stab_facets(g).inequalities:
            d = recognize_joined_antiweb(g, f)
            scaled = LinearInequality(tuple(3 * c for c in f.coeffs), 3 * f.rhs)
            assert recognize_joined_antiweb(g, scaled) == d
            if d is not None:
                built = joined_antiweb_inequality(g, d)
                assert built == f and valid_for_stab(g, built)
                for a, pa in enumerate(d.parts):
                    for pb in d.parts[a + 1 :]:
                        assert all(pb.nodes & ~g.adj[v] == 0 for v in range(g.n) if pa.nodes >> v & 1)


class TestJoinedAPerfect:
    @pytest.mark.parametrize(
        "g",
        [Graph.cycle(6), Graph.complete(4), Graph.cycle(5), odd_antihole(3), wheel(5), wheel(7), Graph.path(4)],
    )
    def test_positive(self, g):
        rep = is_joined_a_perfect(g)
        assert rep and not rep.unrecognized

    @pytest.mark.parametrize("g", [g_lt(), g_emn(), web(9, 2), web(10, 2)])
    def test_negative(self, g):
        rep = is_joined_a_perfect(g)
        assert not rep and rep.unrecognized

    @pytest.mark.parametrize("g", [Graph.cycle(5), odd_antihole(3), wheel(5), web(8, 1)])
    def test_recognised_system_reproduces_stab(self, g):
        rep = is_joined_a_perfect(g)
        system = HPolytope.of(g.n, list(rep.recognized) + nonnegativity(g.n))
        for f in rep.facets:
            assert max_over(system, f.coeffs) == f.rhs

    def test_nonnegativity_dropped(self):
        rep = is_joined_a_perfect(Graph.cycle(5))
        assert all(not f.is_nonnegativity() for f in rep.facets)
        assert len(rep.facets) == 6


class TestAntiholeJoins:
    def test_examples(self):
        assert antihole_clique_join_parts(odd_antihole(3)) is not None
        g = complete_join(Graph.complete(2), odd_antihole(2))
        assert len(antihole_clique_join_parts(g)) == 1
        assert antihole_clique_join_parts(Graph.complete(4)) is None
        assert antihole_clique_join_parts(g_lt()) is None
        two = complete_join(odd_antihole(2), odd_antihole(3))
        assert len(antihole_clique_join_parts(two)) == 2
