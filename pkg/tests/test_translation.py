import pytest
from hypothesis import given, strategies as st

from godel_duality.algebra import (Homomorphism, hom_set, hu_dual, make_chain, omega_compose,
                                   product_algebra, vk_algebra)
from godel_duality.errors import InputError, StructuralError, VarietyError
from godel_duality.natural import (DualStructure, SigmaSignature, all_signatures, alter_ego, dual_map,
                                   dual_space, structure_iso, structures_isomorphic)
from godel_duality.poset import Forest, enumerate_forests, iso_check
from godel_duality.translation import (F_sigma, F_sigma_morphism, G_sigma, cover_classes, roundtrip_check,
                                       separates_points, sim_classes, topology_sets)

from oracles import forced_tops_class


def middles(x, n):
    return frozenset(v for v in x if 0 < v < n - 1)


class TestSim:
    def test_c5_classes(self):
        X = dual_space(make_chain(5), "ggh3")
        got = {frozenset(middles(X.points[p], 5) for p in c) for c in sim_classes(X).classes}
        want = {frozenset({frozenset()}),
                frozenset({frozenset({1}), frozenset({2}), frozenset({3})}),
                frozenset({frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 3})}),
                frozenset({frozenset({1, 2, 3})})}
        assert got == want

    def test_n3_identity_partition(self):
        for A in (make_chain(3), product_algebra(make_chain(3), make_chain(2))):
            X = dual_space(A, "h1")
            assert len(sim_classes(X).classes) == len(X)

    @pytest.mark.parametrize("n", [4, 5])
    def test_classes_are_top_fibres(self, n, corpus4, corpus5):
        # x ~ y iff x and y send the same elements to the top
        for A in (corpus4 if n == 4 else corpus5):
            for s in all_signatures(n):
                X = dual_space(A, s)
                sim = sim_classes(X)
                for p, x in enumerate(X.points):
                    for q, y in enumerate(X.points):
                        assert sim.same(p, q) == (forced_tops_class(x, n) == forced_tops_class(y, n))

    def test_square_matches_omega(self):
        A = product_algebra(make_chain(3), make_chain(3))
        X = dual_space(A, "gh1")
        sim = sim_classes(X)
        homs = hom_set(A, 4)
        for p, x in enumerate(homs):
            for q, y in enumerate(homs):
                assert sim.same(p, q) == (omega_compose(x) == omega_compose(y))

    @pytest.mark.parametrize("n", [4, 5])
    def test_independent_of_signature(self, n, corpus4, corpus5):
        for A in (corpus4 if n == 4 else corpus5)[:30]:
            ref = None
            for s in all_signatures(n):
                X = dual_space(A, s)
                lay = cover_classes(X)
                key = (lay.sim.class_of, frozenset(lay.order.covers))
                assert ref is None or key == ref
                ref = key


class TestCovers:
    def test_c5_chain(self):
        lay = cover_classes(dual_space(make_chain(5), "ggh3"))
        assert iso_check(lay.order, Forest.chain(4)) and lay.is_covering

    def test_c2(self):
        lay = cover_classes(dual_space(make_chain(2), "gh1"))
        assert len(lay.sim.classes) == 1 and not lay.cover_pairs

    def test_alter_ego_n3(self):
        lay = cover_classes(alter_ego(SigmaSignature.parse("h1")))
        assert lay.cover_pairs == {(1, 2)}
        assert lay.order.covers == {(1, 2)}

    def test_d_c3_n3(self):
        lay = cover_classes(dual_space(make_chain(3), "h1"))
        assert len(lay.sim.classes) == 2 and len(lay.cover_pairs) == 1

    def test_cycle_is_structural_error(self):
        X = DualStructure(SigmaSignature.parse("h1"), ["a", "b"], [], [1, 0])
        with pytest.raises(StructuralError):
            cover_classes(X)

    @pytest.mark.parametrize("n", [4, 5])
    def test_depth_and_covering(self, n, corpus4, corpus5):
        for A in (corpus4 if n == 4 else corpus5):
            for s in all_signatures(n):
                lay = cover_classes(dual_space(A, s))
                assert lay.is_covering and lay.order.depth() <= n - 2


class TestF:
    @pytest.mark.parametrize("n", [4, 5])
    def test_chain(self, n):
        F = F_sigma(dual_space(make_chain(n), SigmaSignature.full(n)))
        assert iso_check(F, Forest.chain(n - 1))

    def test_one_point(self):
        assert len(F_sigma(dual_space(make_chain(2), "gh1"))) == 1

    def test_morphism_of_inclusion(self):
        f = Homomorphism(make_chain(3), make_chain(4), (0, 1, 3))
        m = F_sigma_morphism(dual_map(f, "gh1"))
        assert len(m) == 3 and len(set(m.values())) == 2

    def test_morphism_respects_order(self, small_corpus):
        from godel_duality.algebra import homomorphisms

        sigma = SigmaSignature.parse("gh2")
        for A in small_corpus[:8]:
            for B in small_corpus[:8]:
                for f in homomorphisms(A, B, limit=3):
                    eta = dual_map(f, sigma)
                    FX, FY = F_sigma(eta.source), F_sigma(eta.target)
                    m = F_sigma_morphism(eta)
                    assert all(FY.leq(m[a], m[b]) for a, b in FX.covers)

    def test_ill_defined_morphism(self):
        from godel_duality.natural import StructureMorphism

        X = dual_space(make_chain(4), "gh1")
        # split one class of X across two classes of the target
        sim = sim_classes(X)
        big = next(c for c in sim.classes if len(c) > 1)
        a, b = sorted(big)[:2]
        m = list(range(len(X)))
        m[a] = next(p for p in range(len(X)) if not sim.same(p, a))
        with pytest.raises(StructuralError):
            F_sigma_morphism(StructureMorphism(X, X, tuple(m)))


class TestG:
    def test_two_chain(self):
        Y = Forest.from_parent({"u": "v", "v": None})
        G = G_sigma(Y, 5, "ggh3")
        assert sorted(G.points) == [("u", (0, 1, 4)), ("u", (0, 2, 4)), ("u", (0, 3, 4)), ("v", (0, 4))]
        assert structures_isomorphic(G, dual_space(make_chain(3), "ggh3"))

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_one_point(self, n):
        G = G_sigma(Forest.chain(1), n, SigmaSignature.full(n))
        assert G.points == (("c0", (0, n - 1)),)

    def test_three_chain(self):
        assert len(G_sigma(Forest.chain(3), 5, "fgh1")) == 7

    def test_depth_error(self):
        with pytest.raises(VarietyError):
            G_sigma(Forest.chain(4), 4, "gh1")

    def test_rejects_non_forest(self):
        with pytest.raises(InputError):
            G_sigma(Forest.chain(2).product(Forest.chain(2)), 4, "gh1")

    @given(st.sampled_from(enumerate_forests(6, max_depth=3)), st.sampled_from(all_signatures(5)))
    def test_iso_to_dual_of_up_set_algebra(self, Y, sigma):
        G = G_sigma(Y, 5, sigma)
        assert structure_iso(G, dual_space(vk_algebra(Y), sigma)) is not None
        assert iso_check(F_sigma(G), Y)

    def test_topology_sets_separate(self):
        for Y in enumerate_forests(4, max_depth=2):
            G = G_sigma(Y, 4, "gh1")
            assert separates_points(topology_sets(G), len(G))


class TestRoundtrip:
    def test_c5(self):
        assert roundtrip_check(make_chain(5), "ggh3")

    def test_c2(self):
        assert roundtrip_check(make_chain(2), "")

    @pytest.mark.parametrize("n", [4, 5])
    def test_corpus(self, n, corpus4, corpus5):
        for A in (corpus4 if n == 4 else corpus5):
            for s in all_signatures(n):
                assert roundtrip_check(A, s)

    def test_f_matches_hu(self, corpus5):
        for A in corpus5:
            assert iso_check(F_sigma(dual_space(A, "ggh1")), hu_dual(A))


def test_forest_labels_are_point_sets():
    X = dual_space(make_chain(4), "fh2")
    F = F_sigma(X)
    assert set().union(*F.elements) == set(X.points)
