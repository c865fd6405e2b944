import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permgen.perm import (
    CycleParseError,
    Permutation,
    PermutationError,
    compose,
    cycle_decomposition,
    cycle_type,
    fixed_points,
    format_cycles,
    from_cycles,
    identity,
    inverse,
    is_cycle,
    order,
    parse_cycles,
    power,
    sign,
    stacked_cycles,
    step_cycle,
    support,
)


def P(text, n):
    return parse_cycles(text, n)


@st.composite
def perms(draw, n=None):
    if n is None:
        n = draw(st.integers(1, 12))
    img = draw(st.permutations(range(1, n + 1)))
    return Permutation(img)


@st.composite
def perm_pairs(draw):
    n = draw(st.integers(1, 12))
    return draw(perms(n)), draw(perms(n))


class TestCompose:
    def test_identity_law(self):
        p = P("(1,3)(2,5,4)", 5)
        assert compose(identity(5), p) == p
        assert compose(p, identity(5)) == p

    def test_square_of_three_cycle(self):
        assert compose(P("(1,2,3)", 3), P("(1,2,3)", 3)) == P("(1,3,2)", 3)

    def test_right_action(self):
        p, q = P("(1,2)", 3), P("(2,3)", 3)
        r = compose(p, q)
        assert all(r(i) == q(p(i)) for i in range(1, 4))
        assert r == P("(1,3,2)", 3)

    def test_closed_form_nine_cycle(self):
        a0 = stacked_cycles(4, 1, 2, 11)
        b0 = stacked_cycles(4, 4, 2, 11)
        assert format_cycles(compose(inverse(a0), b0)) == "(1,5,9,10,11,8,4,3,2)"

    def test_degree_mismatch(self):
        with pytest.raises(PermutationError):
            compose(identity(3), identity(4))

    def test_matches_sympy_convention(self):
        sym = pytest.importorskip("sympy.combinatorics")
        p, q = P("(1,4,2)(3,5)", 5), P("(1,2,3,4,5)", 5)
        sp = sym.Permutation([x - 1 for x in p.images])
        sq = sym.Permutation([x - 1 for x in q.images])
        assert [x + 1 for x in (sp * sq).array_form] == list(compose(p, q).images)


class TestOrderSign:
    def test_order_examples(self):
        assert order(identity(7)) == 1
        assert order(P("(1,2)(3,4,5)", 5)) == 6
        assert order(P("(1,2,3)(4,5,6,7)(8,9,10,11)", 12)) == 12

    def test_sign_examples(self):
        assert sign(P("(1,2)", 2)) == -1
        assert sign(P("(1,2,3)(4,5)(6,7)", 7)) == 1
        for k in (3, 5, 7, 9):
            assert sign(step_cycle(k, 2, 10)) == 1
        for k in (2, 4, 6):
            assert sign(step_cycle(k, 2, 10)) == -1

    def test_cycle_type_includes_fixed(self):
        assert cycle_type(P("(1,2,3)(4,5,6,7)(8,9,10,11)", 12)) == (4, 4, 3, 1)


class TestBuilders:
    def test_step_cycle(self):
        assert str(step_cycle(3, 1, 10)) == "(1,2,3)"
        assert step_cycle(1, 4, 10).is_identity()
        assert step_cycle(4, 9, 10) == P("(9,10,1,2)", 10)

    def test_step_cycle_too_long(self):
        with pytest.raises(PermutationError):
            step_cycle(11, 1, 10)

    def test_stacked_cycles(self):
        assert str(stacked_cycles(3, 1, 2, 8)) == "(1,2,3)(4,5,6)"
        assert str(stacked_cycles(4, 4, 2, 11)) == "(4,5,6,7)(8,9,10,11)"
        assert stacked_cycles(2, 12, 2, 12) == P("(12,1)(2,3)", 12)

    def test_stacked_overlap_raises(self):
        with pytest.raises(PermutationError):
            stacked_cycles(3, 1, 3, 8)

    @given(st.data())
    def test_stacked_support_count(self, data):
        n = data.draw(st.integers(2, 30))
        i = data.draw(st.integers(2, n))
        l = data.draw(st.integers(1, n // i))
        a = data.draw(st.integers(1, n))
        # every point of each of the l disjoint i-cycles moves
        assert len(support(stacked_cycles(i, a, l, n))) == l * i
        assert len(cycle_decomposition(stacked_cycles(i, a, l, n)).cycles) == l


class TestNotation:
    def test_parse_examples(self):
        assert P("(3,4,5)", 6) == Permutation([1, 2, 4, 5, 3, 6])
        assert P("()", 5) == identity(5)
        assert format_cycles(P("(1,6,7)(2,5,8)", 8)) == "(1,6,7)(2,5,8)"

    def test_whitespace_and_canonical(self):
        assert format_cycles(P(" (5, 2)( 7,3 ,4) ", 7)) == "(2,5)(3,4,7)"
        assert format_cycles(identity(4)) == "()"

    @pytest.mark.parametrize("text", ["(1,2", "(1,,2)", "1,2", "(1,2)(2,3)", "(0,1)",
                                      "(1,9)", "", "(a,b)"])
    def test_malformed(self, text):
        with pytest.raises(CycleParseError):
            parse_cycles(text, 5)

    def test_degree_never_inferred(self):
        assert P("(1,2)", 9).degree == 9

    def test_immutable(self):
        p = identity(3)
        with pytest.raises(AttributeError):
            p._img = (1, 0, 2)

    def test_constructor_rejects_non_bijection(self):
        with pytest.raises(PermutationError):
            Permutation([1, 1, 2])


@given(perm_pairs())
def test_sign_multiplicative(pq):
    p, q = pq
    assert sign(compose(p, q)) == sign(p) * sign(q)


@given(perm_pairs())
def test_inverse_of_product(pq):
    p, q = pq
    assert inverse(compose(p, q)) == compose(inverse(q), inverse(p))


@given(perms())
def test_inverse_and_identity(p):
    assert compose(p, inverse(p)).is_identity()


@settings(max_examples=60)
@given(perms())
def test_order_is_minimal_period(p):
    k = order(p)
    assert math.factorial(p.degree) % k == 0
    assert power(p, k).is_identity()
    if k <= 10**4:
        q = p
        for _ in range(1, k):
            assert not q.is_identity()
            q = compose(q, p)


@given(perms())
def test_decomposition_roundtrip(p):
    d = cycle_decomposition(p)
    assert d.to_permutation() == p
    assert from_cycles(d.cycles, p.degree) == p
    points = set(d.fixed_points)
    for c in d.cycles:
        assert c[0] == min(c)
        assert points.isdisjoint(c)
        points.update(c)
    assert points == set(range(1, p.degree + 1))
    assert [c[0] for c in d.cycles] == sorted(c[0] for c in d.cycles)


@given(perms())
def test_format_parse_roundtrip(p):
    assert parse_cycles(format_cycles(p), p.degree) == p


@given(perms())
def test_support_and_fixed_partition(p):
    assert support(p) | fixed_points(p) == set(range(1, p.degree + 1))
    assert not support(p) & fixed_points(p)
    assert is_cycle(p) == (len(cycle_decomposition(p).cycles) == 1)
