import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from godel_duality.algebra import (Homomorphism, algebra_iso, hom_set, make_chain, product_algebra,
                                   trivial_algebra)
from godel_duality.errors import InputError, ResourceError, VarietyError
from godel_duality.natural import (DualStructure, PartialOp, SigmaSignature, StructureMorphism, all_signatures,
                                   alter_ego, check_duality, closed_masks, closed_substructures,
                                   compose_all, composition_identities, dual_map, dual_space, endos, evaluate_E, f_op, g_op, h_op,
                                   morphisms, partial_endos, power_structure, product_structure,
                                   sample_closed_substructures, structure_iso, structures_isomorphic,
                                   substructure)
from godel_duality.poset import Forest
from godel_duality.translation import G_sigma



def brute_structure_maps(X, Y):
    """All point maps X -> Y that respect every op, by exhaustive product."""
    out = []
    for m in itertools.product(range(len(Y)), repeat=len(X)):
        if StructureMorphism(X, Y, m).is_valid():
            out.append(m)
    return sorted(out)


class TestOperations:
    def test_g1_n4(self):
        g = g_op(4, 1)
        assert g.domain == {0, 2, 3} and g(2) == 1 and g(0) == 0 and g(3) == 3

    def test_h1_n4(self):
        assert h_op(4, 1).table == (0, 2, 3, 3)

    def test_h3_n5(self):
        assert h_op(5, 3).table == (0, 1, 2, 4, 4)

    @pytest.mark.parametrize("n", range(4, 9))
    def test_all_partial_homs(self, n):
        for op in list(partial_endos(n).values()) + list(endos(n).values()):
            assert op.is_partial_hom(), op

    @pytest.mark.parametrize("n", range(4, 9))
    def test_f_inverts_g(self, n):
        for i in range(1, n - 2):
            g, f = g_op(n, i), f_op(n, i)
            gf, fg = g.compose(f), f.compose(g)
            assert all(gf(x) == x for x in gf.domain) and gf.domain == f.domain
            assert all(fg(x) == x for x in fg.domain) and fg.domain == g.domain

    def test_partial_counts(self):
        assert partial_endos(3) == {} and len(endos(3)) == 1
        assert len(partial_endos(6)) == 6 and len(endos(6)) == 4

    @pytest.mark.parametrize("n", range(3, 8))
    def test_endos_are_the_hom_set(self, n):
        # End C_n minus the identity, plus the identity, covers exactly 2^{n-2} maps
        C = make_chain(n)
        assert all(tuple(h.table) in {x.map for x in hom_set(C, n)} for h in endos(n).values())

    def test_non_hom_detected(self):
        assert not PartialOp(4, (0, 2, 1, 3)).is_partial_hom()
        assert not PartialOp(4, (None, 1, 2, 3)).is_partial_hom()

    def test_bad_indices(self):
        with pytest.raises(InputError):
            g_op(4, 2)
        with pytest.raises(InputError):
            h_op(4, 3)


class TestSignatures:
    @pytest.mark.parametrize("n", range(4, 9))
    def test_count(self, n):
        assert len(all_signatures(n)) == 2 ** (n - 3) * (n - 2)

    def test_small_n(self):
        assert [str(s) for s in all_signatures(3)] == ["h1"]
        assert all_signatures(2) == [SigmaSignature(2)]
        assert SigmaSignature.parse("") == SigmaSignature(2)

    @pytest.mark.parametrize("text,n", [("ggh1", 5), ("fgh3", 5), ("h1", 3), ("fh2", 4)])
    def test_parse_roundtrip(self, text, n):
        s = SigmaSignature.parse(text)
        assert s.n == n and str(s) == text

    @pytest.mark.parametrize("text", ["gxh1", "gg", "ggh4", "ggh0", "h2"])
    def test_parse_rejects(self, text):
        with pytest.raises(InputError):
            SigmaSignature.parse(text)

    def test_length_mismatch(self):
        with pytest.raises(InputError):
            SigmaSignature.parse("ggh1", 4)

    def test_full_and_default(self):
        assert str(SigmaSignature.full(6)) == "gggh1" and SigmaSignature.full(6).is_full()
        assert str(SigmaSignature.default_coproduct(5)) == "ggh3"


class TestDualSpace:
    def test_c5_dual(self):
        X = dual_space(make_chain(5), "ggh3")
        assert len(X) == 8
        # g_1 is defined exactly where 1 is not in the range
        assert X.domain(0) == {p for p, x in enumerate(X.points) if 1 not in x}
        for p, x in enumerate(X.points):
            assert X.points[X.endo[p]] == tuple(h_op(5, 3)(v) for v in x)

    def test_c2_single_point(self):
        for s in ("gh1", "fh2", ""):
            X = dual_space(make_chain(2), s)
            assert len(X) == 1
            assert all(t[0] == 0 for t in X.all_tables())

    def test_c4_gh1(self):
        X = dual_space(make_chain(4), "gh1")
        assert len(X) == 4
        assert X.domain(0) == {p for p, x in enumerate(X.points) if 1 not in x}

    def test_variety_error(self):
        with pytest.raises(VarietyError) as exc:
            dual_space(make_chain(6), "gh1")
        assert exc.value.witness["depth"] == 4

    def test_trivial_algebra_has_empty_dual(self):
        X = dual_space(trivial_algebra(), "gh1")
        assert len(X) == 0
        assert evaluate_E(X).is_trivial()

    def test_json_roundtrip(self):
        X = dual_space(product_algebra(make_chain(3), make_chain(3)), "gh1")
        Y = DualStructure.from_json(X.to_json())
        assert Y.ops == X.ops and Y.endo == X.endo and str(Y.sigma) == str(X.sigma)
        assert Y.to_json() == X.to_json()
        assert DualStructure.from_json(Y.to_json()) == Y


class TestDualMap:
    def test_identity(self):
        C = make_chain(4)
        eta = dual_map(Homomorphism(C, C, (0, 1, 2, 3)), "gh1")
        assert eta.map == tuple(range(4))

    @pytest.mark.parametrize("n", [4, 5])
    def test_from_c2(self, n):
        C = make_chain(n)
        f = Homomorphism(make_chain(2), C, (0, n - 1))
        sigma = SigmaSignature.full(n)
        eta = dual_map(f, sigma)
        assert set(eta.map) == {0} and len(eta.map) == len(dual_space(C, sigma))

    def test_inclusion_c3_c4(self):
        f = Homomorphism(make_chain(3), make_chain(4), (0, 1, 3))
        eta = dual_map(f, "gh1")
        assert len(eta.source) == 4 and len(eta.target) == 3
        assert set(eta.map) == set(range(3))

    def test_contravariance(self, small_corpus):
        rnd = random.Random(1)
        sigma = SigmaSignature.parse("fh2")
        checked = 0
        for _ in range(30):
            A, B, C = (rnd.choice(small_corpus) for _ in range(3))
            fs, gs = hom_set_between(A, B), hom_set_between(B, C)
            if not fs or not gs:
                continue
            f, g = rnd.choice(fs), rnd.choice(gs)
            lhs = dual_map(g.compose(f), sigma)
            rhs = dual_map(f, sigma).compose(dual_map(g, sigma))
            assert lhs.map == rhs.map
            checked += 1
        assert checked >= 5


def hom_set_between(A, B):
    from godel_duality.algebra import homomorphisms

    return homomorphisms(A, B, limit=20)


class TestEvaluateE:
    @pytest.mark.parametrize("sigma", ["gh1", "fh2"])
    def test_one_point(self, sigma):
        X = dual_space(make_chain(2), sigma)
        assert algebra_iso(evaluate_E(X, "search"), make_chain(2))

    def test_c3(self):
        assert algebra_iso(evaluate_E(dual_space(make_chain(3), "h1")), make_chain(3))

    def test_square(self):
        A = product_algebra(make_chain(2), make_chain(2))
        assert algebra_iso(evaluate_E(dual_space(A, "gh1")), A)

    def test_search_matches_bruteforce(self):
        for A in (make_chain(3), make_chain(4), product_algebra(make_chain(2), make_chain(3))):
            for s in all_signatures(4):
                X = dual_space(A, s)
                got = sorted(m.map for m in morphisms(X, alter_ego(s)))
                assert got == brute_structure_maps(X, alter_ego(s))

    def test_search_and_translation_agree(self, corpus4):
        for A in corpus4[:25]:
            for s in all_signatures(4):
                X = dual_space(A, s)
                E1, E2 = evaluate_E(X, "search"), evaluate_E(X, "translation")
                assert E1.elements == E2.elements

    def test_cap(self):
        X = dual_space(product_algebra(make_chain(3), make_chain(3)), "gh1")
        with pytest.raises(ResourceError):
            evaluate_E(X, "search", cap=3)

    @pytest.mark.parametrize("sigma", ["fh2", "gh1", "gh2"])
    def test_square_power_is_free_dual(self, sigma):
        P = power_structure(sigma, 2)
        E1, E2 = evaluate_E(P, "search"), evaluate_E(P, "translation")
        assert E1.size == E2.size == 342 and E1.elements == E2.elements

    def test_translation_rejects_non_dual(self):
        X = substructure(alter_ego(SigmaSignature.parse("fh2")), [2, 3])
        with pytest.raises(InputError):
            evaluate_E(X, "translation")
        assert evaluate_E(X, "search").size >= 1


class TestDuality:
    @pytest.mark.parametrize("A,sigma", [
        (make_chain(5), "ggh3"),
        (make_chain(4), "fh2"),
        (product_algebra(make_chain(3), make_chain(3)), "gh1"),
    ])
    def test_examples(self, A, sigma):
        cert = check_duality(A, sigma)
        assert cert.ok and sorted(cert.e_table) == list(range(A.size))

    @pytest.mark.parametrize("n", [4, 5])
    def test_corpus(self, n, corpus4, corpus5):
        corpus = corpus4 if n == 4 else corpus5
        for A in corpus:
            for s in all_signatures(n):
                assert check_duality(A, s, method="auto").ok

    @settings(max_examples=20)
    @given(st.sampled_from(all_signatures(5)), st.integers(2, 5))
    def test_chains_any_sigma(self, sigma, k):
        assert check_duality(make_chain(k), sigma).ok


class TestPowersAndProducts:
    @pytest.mark.parametrize("s", ["gh1", "fh2", "ggh3", "h1"])
    def test_power_one_is_alter_ego(self, s):
        sigma = SigmaSignature.parse(s)
        P = power_structure(sigma, 1)
        assert structures_isomorphic(P, alter_ego(sigma))

    def test_product_with_unit(self):
        X = dual_space(make_chain(4), "gh1")
        U = dual_space(make_chain(2), "gh1")
        assert structures_isomorphic(product_structure(X, U), X)

    def test_28_points(self):
        P = product_structure(G_sigma(Forest.chain(2), 5, "ggh3"), G_sigma(Forest.chain(3), 5, "ggh3"))
        assert len(P) == 28

    def test_signature_mismatch(self):
        with pytest.raises(InputError):
            product_structure(dual_space(make_chain(4), "gh1"), dual_space(make_chain(4), "fh2"))

    def test_product_domains(self):
        X, Y = dual_space(make_chain(4), "gh1"), dual_space(make_chain(3), "gh1")
        P = product_structure(X, Y)
        for c, (p, q) in enumerate(P.coords):
            assert (c in P.domain(0)) == (p in X.domain(0) and q in Y.domain(0))


class TestSubstructures:
    def test_one_point(self):
        X = dual_space(make_chain(2), "gh1")
        assert len(closed_substructures(X)) == 2
        assert len(closed_substructures(X, include_empty=False)) == 1

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_one_top_closed(self, n):
        # h_j fixes 1 unless j = 1; f_1 moves 1 to 2, every g_i fixes or drops it
        for s in all_signatures(n):
            expect = s.endo_index != 1 and s.choices[0] == "g"
            assert alter_ego(s).is_closed([1, n - 1]) == expect, s

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_upper_segment_closed_after_last_f(self, n):
        for s in all_signatures(n):
            if "f" not in s.choices:
                continue
            j = n - 3 - s.choices[::-1].index("f")
            X = substructure(alter_ego(s), range(j + 1, n))
            assert len(X) == n - 1 - j
            for i in range(1, n - 2):
                # f_j drops j+1; the g_i with i > j drop i; the rest are total on X
                hole = {j + 1} if i == j else ({i} if i > j else set())
                assert {X.points[p] for p in X.domain(i - 1)} == set(range(j + 1, n)) - hole

    def test_two_three_closed_under_f(self):
        for j in (1, 2):
            assert alter_ego(SigmaSignature(4, ("f",), j)).is_closed([2, 3])
        assert not alter_ego(SigmaSignature(4, ("g",), 1)).is_closed([2, 3])

    def test_substructure_restricts_domain(self):
        A = alter_ego(SigmaSignature.parse("fh2"))
        S = substructure(A, [2, 3])
        assert tuple(S.ops[0]) == (None, 1) and S.embedding == (2, 3)

    def test_not_closed_rejected(self):
        with pytest.raises(InputError):
            substructure(alter_ego(SigmaSignature.parse("gh1")), [1])

    def test_enumeration_against_bruteforce(self):
        X = dual_space(make_chain(4), "gh1")
        brute = sorted(sum(1 << p for p in S) for r in range(len(X) + 1)
                       for S in itertools.combinations(range(len(X)), r) if X.is_closed(S))
        assert sorted(closed_masks(X)) == brute

    def test_sampling_returns_closed(self):
        X = power_structure("gh1", 2)
        for S in sample_closed_substructures(X, 10, seed=3):
            assert X.is_closed(S.embedding)

    def test_cap(self):
        with pytest.raises(ResourceError):
            closed_masks(power_structure("gh1", 2), cap=5)


class TestIsomorphism:
    def test_relabelled_dual(self):
        X = dual_space(make_chain(5), "ggh3")
        perm = list(range(len(X)))
        random.Random(7).shuffle(perm)
        inv = {p: i for i, p in enumerate(perm)}
        ops = [[None if t[perm[i]] is None else inv[t[perm[i]]] for i in range(len(X))] for t in X.ops]
        endo = [inv[X.endo[perm[i]]] for i in range(len(X))]
        Y = DualStructure(X.sigma, [X.points[p] for p in perm], ops, endo)
        phi = structure_iso(X, Y)
        assert phi is not None and StructureMorphism(X, Y, phi).is_valid()

    def test_non_isomorphic(self):
        a = dual_space(make_chain(4), "gh1")
        b = dual_space(product_algebra(make_chain(2), make_chain(2)), "gh1")
        assert not structures_isomorphic(a, b)


def test_compose_all_identity():
    assert compose_all([], 5).table == tuple(range(5))
    assert compose_all([h_op(5, 1), h_op(5, 1)], 5).table == (0, 3, 4, 4, 4)


@pytest.mark.parametrize("n", range(4, 9))
def test_f_composite_extends_f(n):
    # the g/h_1 composite agrees with f_i on dom f_i; it is exactly f_i for i < n-3
    # and the total h_{n-3} for i = n-3, where f_{n-3} extends to that endomorphism
    for name, i, lhs, rhs in composition_identities(n):
        if name != "fi-from-g-h1":
            assert lhs.table == rhs.table
            continue
        assert all(rhs(x) == lhs(x) for x in lhs.domain)
        if i < n - 3:
            assert lhs.table == rhs.table
        else:
            assert rhs.table == h_op(n, n - 3).table
