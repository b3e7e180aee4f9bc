import itertools

import pytest
from hypothesis import given, strategies as st

from godel_duality.errors import InputError, StructuralError
from godel_duality.poset import (Forest, Poset, enumerate_forests, iso_check, poset_isomorphism,
                                 quotient)


@st.composite
def forests(draw, max_nodes=7):
    k = draw(st.integers(1, max_nodes))
    parent = {}
    for i in range(k):
        p = draw(st.one_of(st.none(), st.integers(0, i - 1))) if i else None
        parent[f"v{i}"] = None if p is None else f"v{p}"
    return Forest.from_parent(parent)


def brute_up_sets(P):
    els = P.elements
    out = 0
    for bits in itertools.product((0, 1), repeat=len(els)):
        S = {e for e, b in zip(els, bits) if b}
        if all(b in S for a in S for b in P.up_set(a)):
            out += 1
    return out


class TestBasics:
    def test_chain_depth_and_covers(self):
        F = Forest.chain(4)
        assert F.depth() == 3
        assert F.maximal() == ("c3",)
        assert F.up_set("c1") == {"c1", "c2", "c3"}
        assert F.parent("c3") is None and F.s_map("c3") == "c3"

    def test_empty_poset(self):
        P = Poset([], [])
        assert P.depth() == -1 and P.count_up_sets() == 1

    def test_cycle_rejected(self):
        with pytest.raises(StructuralError):
            Poset.from_relation("ab", [("a", "b"), ("b", "a")])

    def test_redundant_cover_rejected(self):
        with pytest.raises(StructuralError):
            Poset("abc", [("a", "b"), ("b", "c"), ("a", "c")])

    def test_forest_rejects_two_parents(self):
        with pytest.raises(StructuralError):
            Forest("abc", [("a", "b"), ("a", "c")])

    def test_unknown_element(self):
        with pytest.raises(InputError):
            Poset("ab", [("a", "z")])

    def test_from_relation_reduces(self):
        P = Poset.from_relation("abc", [("a", "b"), ("b", "c"), ("a", "c")])
        assert P.covers == {("a", "b"), ("b", "c")}

    def test_product_of_chains(self):
        P = Forest.chain(2).product(Forest.chain(3))
        assert len(P) == 6 and len(P.covers) == 7
        assert not P.is_forest()


class TestEnumeration:
    @pytest.mark.parametrize("m,count", [(1, 1), (2, 2), (3, 4), (4, 9), (5, 20), (6, 48)])
    def test_rooted_forest_counts(self, m, count):
        # unlabeled rooted forests on m nodes: 1, 2, 4, 9, 20, 48
        assert len(enumerate_forests(m, min_nodes=m)) == count

    def test_depth_filter(self):
        for F in enumerate_forests(6, max_depth=2):
            assert F.depth() <= 2

    def test_pairwise_non_isomorphic(self):
        codes = [F.canonical_form() for F in enumerate_forests(6)]
        assert len(codes) == len(set(codes))


class TestProperties:
    @given(forests())
    def test_up_set_count_matches_bruteforce(self, F):
        assert F.count_up_sets() == brute_up_sets(F) == len(F.up_set_masks())

    @given(forests())
    def test_code_roundtrip(self, F):
        G = Forest.from_code(F.canonical_form())
        assert G.canonical_form() == F.canonical_form()
        assert poset_isomorphism(F, G) is not None

    @given(forests(), st.randoms())
    def test_relabel_invariance(self, F, rnd):
        names = list(F.elements)
        shuffled = names[:]
        rnd.shuffle(shuffled)
        G = F.relabel(dict(zip(names, shuffled)))
        assert iso_check(F, G)

    @given(forests())
    def test_json_roundtrip(self, F):
        G = Forest.from_json(F.to_json())
        assert G.elements == F.elements and G.covers == F.covers

    @given(forests())
    def test_depth_is_longest_chain_above(self, F):
        for e in F.elements:
            assert F.depth_of(e) == len(F.up_set(e)) - 1


def test_quotient_of_chain_by_pairs():
    P = Forest.chain(4)
    Q = quotient(P, [{"c0", "c1"}, {"c2", "c3"}], lambda x, y: P.leq(x, y))
    assert len(Q) == 2 and len(Q.covers) == 1


def test_nonforest_isomorphism_search():
    P = Forest.chain(2).product(Forest.chain(2))
    Q = Poset.from_relation("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    assert iso_check(P, Q)
    R = Poset.from_relation("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
    assert not iso_check(P, R)
