import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permgen import groups
from permgen.groups import (
    ClosureOverflow,
    GroupError,
    GroupHandle,
    NotTransitiveError,
    bsgs,
    closure_order_oracle,
    group_order,
    is_primitive,
    is_t_transitive,
    is_transitive,
    minimal_block,
    orbit,
    transitivity_degree,
)
from permgen.pairs import OmegaTriple, admissible_triples, build_pair, even_pair_unmodified
from permgen.perm import Permutation, compose, identity, parse_cycles, sign


def G(*texts, n):
    return GroupHandle([parse_cycles(t, n) for t in texts])


def symmetric(n):
    return G("(1,2)", "(" + ",".join(map(str, range(1, n + 1))) + ")", n=n)


def alternating(n):
    return GroupHandle([parse_cycles(f"(1,2,{i})", n) for i in range(3, n + 1)])


def pair_group(n, k, s):
    p = build_pair(OmegaTriple(n, k, s))
    return GroupHandle([p.a, p.b])


class TestOrbit:
    def test_examples(self):
        assert orbit(G("(1,2)", "(3,4)", n=4), 1) == {1, 2}
        assert orbit(GroupHandle([identity(5)]), 3) == {3}
        assert orbit(pair_group(11, 4, 1), 1) == set(range(1, 12))

    def test_out_of_range(self):
        with pytest.raises(GroupError):
            orbit(symmetric(4), 5)

    def test_transitive(self):
        assert not is_transitive(G("(1,2,3)", n=4))
        assert is_transitive(pair_group(12, 12, 1))
        assert is_transitive(G("(1,2,3,4,5,6,7)", n=7))

    def test_handle_rejects_mixed_degree(self):
        with pytest.raises(ValueError):
            GroupHandle([identity(3), identity(4)])
        with pytest.raises(GroupError):
            GroupHandle([])


class TestBlocks:
    def test_cyclic_blocks(self):
        bs = minimal_block(G("(1,2,3,4)", n=4), (1, 3))
        assert bs.block_size == 2
        assert set(bs.blocks) == {frozenset({1, 3}), frozenset({2, 4})}

    def test_symmetric_trivial(self):
        g = symmetric(4)
        for beta in range(2, 5):
            assert minimal_block(g, (1, beta)) is None

    def test_parity_blocks_of_unmodified_even_pair(self):
        a, b = even_pair_unmodified(8, 6)
        bs = minimal_block(GroupHandle([a, b]), (1, 3))
        assert set(bs.blocks) == {frozenset({1, 3, 5, 7}), frozenset({2, 4, 6, 8})}

    def test_intransitive_rejected(self):
        with pytest.raises(NotTransitiveError):
            minimal_block(G("(1,2)", n=3), (1, 2))
        with pytest.raises(NotTransitiveError):
            is_primitive(G("(1,2)", n=3))

    def test_same_seed_rejected(self):
        with pytest.raises(GroupError):
            minimal_block(symmetric(4), (2, 2))

    def test_primitive_examples(self):
        assert not is_primitive(G("(1,2,3,4)", n=4))
        assert is_primitive(pair_group(11, 4, 1))
        assert is_primitive(G("(1,2,3,4)", "(1,3,5,6)", n=6))
        assert is_primitive(G("(1,2,3,4,5,6,7)", n=7))
        assert not is_primitive(G("(1,2,3,4,5,6)", n=6))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 10).flatmap(
        lambda n: st.lists(st.permutations(range(1, n + 1)), min_size=1, max_size=3)))
    def test_blocks_are_invariant(self, gens):
        g = GroupHandle([Permutation(x) for x in gens])
        if not is_transitive(g):
            return
        for beta in range(2, g.degree + 1):
            bs = minimal_block(g, (1, beta))
            if bs is None:
                continue
            cells = set(bs.blocks)
            assert {x for c in cells for x in c} == set(range(1, g.degree + 1))
            assert all(len(c) == bs.block_size for c in cells)
            for gen in g.generators:
                for c in cells:
                    assert frozenset(gen(x) for x in c) in cells


class TestOrder:
    def test_examples(self):
        for n in (3, 5, 8, 12, 25):
            assert group_order(symmetric(n)) == math.factorial(n)
        assert group_order(G("(1,2,3)", "(3,4,5)", n=5)) == 60
        assert group_order(pair_group(8, 3, 1)) == 20160

    def test_oracle_examples(self):
        assert closure_order_oracle(G("(1,2)", n=2)) == 2
        assert closure_order_oracle(pair_group(7, 6, 1)) == 2520
        assert closure_order_oracle(G("(1,2,3,4,5,6,7,8,9,10)", n=10), cap=10) == 10
        with pytest.raises(ClosureOverflow):
            closure_order_oracle(symmetric(6), cap=100)

    def test_bsgs_matches_oracle_on_random_groups(self):
        rng = random.Random(20261014)
        for _ in range(120):
            n = rng.randint(2, 8)
            gens = []
            for _ in range(rng.randint(1, 3)):
                img = list(range(1, n + 1))
                rng.shuffle(img)
                gens.append(Permutation(img))
            g = GroupHandle(gens)
            assert bsgs(g).order == closure_order_oracle(g, cap=math.factorial(n))

    def test_bsgs_matches_sympy(self):
        comb = pytest.importorskip("sympy.combinatorics")
        rng = random.Random(7)
        for _ in range(40):
            n = rng.randint(4, 16)
            gens = []
            for _ in range(2):
                img = list(range(n))
                rng.shuffle(img)
                gens.append(img)
            ours = bsgs(GroupHandle([Permutation([x + 1 for x in s]) for s in gens])).order
            theirs = comb.PermutationGroup([comb.Permutation(s) for s in gens]).order()
            assert ours == theirs

    def test_order_divides_factorial_and_membership(self):
        rng = random.Random(3)
        for t in [OmegaTriple(9, 4, 1), OmegaTriple(10, 6, 1), OmegaTriple(12, 12, 1),
                  OmegaTriple(11, 5, 1)]:
            p = build_pair(t)
            chain = bsgs(GroupHandle([p.a, p.b]))
            assert math.factorial(t.n) % chain.order == 0
            assert chain.contains(identity(t.n))
            assert chain.contains(p.a) and chain.contains(p.b)
            w = identity(t.n)
            for _ in range(100):
                w = compose(w, rng.choice([p.a, p.b]))
                assert chain.contains(w)
            # A_n excludes every odd permutation
            assert not chain.contains(parse_cycles("(1,2)", t.n))

    def test_membership_outside_subgroup(self):
        chain = bsgs(G("(1,2,3,4,5)", n=5))
        assert chain.order == 5
        assert not chain.contains(parse_cycles("(1,2,3)", 5))
        assert chain.contains(parse_cycles("(1,3,5,2,4)", 5))

    def test_deterministic(self):
        g = pair_group(20, 7, 1)
        c1, c2 = bsgs(g), bsgs(g)
        assert c1.base == c2.base
        assert c1.transversal_sizes == c2.transversal_sizes
        assert c1.strong_generators == c2.strong_generators

    def test_order_bound(self):
        assert alternating(6).order_bound() == 360
        assert symmetric(6).order_bound() == 720


class TestTransitivity:
    def test_examples(self):
        assert transitivity_degree(symmetric(5), 5).t == 5
        assert transitivity_degree(alternating(5), 4).t == 3
        assert transitivity_degree(G("(1,2,3,4,5)", n=5), 2).t == 1

    def test_budget_flags_lower_bound(self):
        res = transitivity_degree(symmetric(12), 8, budget=10**4)
        assert res.lower_bound and res.t == 3
        assert is_t_transitive(symmetric(12), 8, budget=10**4) is None

    def test_exact_when_within_budget(self):
        res = transitivity_degree(alternating(7), 7)
        assert res == groups.TransitivityDegree(5, False)

    def test_intransitive_rejected(self):
        with pytest.raises(NotTransitiveError):
            transitivity_degree(G("(1,2)", n=3), 2)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(3, 7).flatmap(
        lambda n: st.lists(st.permutations(range(1, n + 1)), min_size=2, max_size=3)))
    def test_monotone_under_subgroups(self, gens):
        full = GroupHandle([Permutation(x) for x in gens])
        sub = GroupHandle([Permutation(x) for x in gens[:-1]])
        if not is_transitive(sub):
            return
        n = full.degree
        assert transitivity_degree(full, n).t >= transitivity_degree(sub, n).t

    def test_matches_sign_structure(self):
        # A_n is exactly (n-2)-transitive, S_n is n-transitive
        for n in range(4, 8):
            assert transitivity_degree(alternating(n), n).t == n - 2
            assert transitivity_degree(symmetric(n), n).t == n
            assert all(sign(x) == 1 for x in alternating(n).generators)


def test_primitive_for_small_pairs():
    for n in range(3, 25):
        for t in admissible_triples(n):
            assert is_primitive(pair_group(*t.as_tuple())), t
