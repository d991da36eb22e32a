import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surjhh.operad import (
    OperadElement,
    ParseError,
    Surjection,
    basis,
    boundary,
    compose,
    is_degenerate,
    koszul_sign,
    parse_element,
    parse_surjection,
    symmetric_action,
    table_arrangement,
)


def S(*seq, arity=None):
    return Surjection(seq, arity)


def E(text, arity=None):
    return parse_element(text, arity)


def brute_count(r, d):
    n = 0
    for seq in itertools.product(range(1, r + 1), repeat=r + d):
        if set(seq) == set(range(1, r + 1)) and all(a != b for a, b in zip(seq, seq[1:])):
            n += 1
    return n


@st.composite
def generators(draw, max_r=4, max_d=3):
    r = draw(st.integers(1, max_r))
    d = draw(st.integers(0, max_d))
    gens = basis(r, d)
    if not gens:
        d = 0
        gens = basis(r, 0)
    return draw(st.sampled_from(gens))


class TestSurjection:
    def test_degree_and_zero(self):
        assert S(1, 2, 1).degree == 1
        assert S(1, 1, 2).is_degenerate and S(1, 1, 2).is_zero
        assert S(1, 3, arity=3).is_zero and not S(1, 3, arity=3).is_surjective
        assert not S(2, 1, 2).is_zero

    def test_is_degenerate(self):
        assert is_degenerate((1, 2, 2, 3))
        assert not is_degenerate((1, 2, 1, 3))

    def test_str(self):
        assert str(S(4, 3, 1, 2)) == "(4,3,1,2)"

    def test_bad_entries(self):
        with pytest.raises(ValueError):
            Surjection((0, 1))
        with pytest.raises(ValueError):
            Surjection((1, 4), 3)


class TestTableArrangement:
    def test_rows_and_signs(self):
        t = table_arrangement(S(4, 3, 1, 2, 1, 3, 5, 2))
        assert t.rows == ((4, 3), (1,), (2,), (1, 3, 5, 2))
        assert len(t.rows) == 4  # degree + 1
        assert t.caesura_signs == (1, -1, 1)
        assert t.final_row_signs == (1, -1, 0, -1)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            table_arrangement(S(1, 1))


class TestBoundary:
    def test_cup1(self):
        assert boundary(S(1, 2, 1)) == E("(2,1) - (1,2)")

    def test_cup2(self):
        assert boundary(S(1, 2, 1, 2)) == E("(2,1,2) + (1,2,1)")

    def test_known_example(self):
        assert boundary(S(4, 3, 1, 2, 1, 3, 5, 2)) == E(
            "(4,1,2,1,3,5,2) - (4,3,2,1,3,5,2) + (4,3,1,2,3,5,2) - (4,3,1,2,1,5,2) - (4,3,1,2,1,3,5)"
        )

    def test_degree_zero_is_a_cycle(self):
        for u in basis(3, 0):
            assert boundary(u) == 0

    @settings(max_examples=60, deadline=None)
    @given(generators(max_r=5, max_d=4))
    def test_d_squared_random(self, u):
        assert OperadElement.of(u).boundary().boundary() == 0

    @settings(max_examples=60, deadline=None)
    @given(generators(), st.randoms(use_true_random=False))
    def test_equivariance(self, u, rnd):
        images = list(range(1, u.arity + 1))
        rnd.shuffle(images)
        lhs = boundary(symmetric_action(u, images))
        rhs = boundary(u).act(images)
        assert lhs == rhs


class TestBasis:
    @pytest.mark.parametrize("r,d", [(1, 0), (2, 0), (2, 3), (3, 0), (3, 1), (3, 2), (4, 2), (4, 4)])
    def test_counts(self, r, d):
        assert len(basis(r, d)) == brute_count(r, d)

    def test_known_sizes(self):
        assert len(basis(3, 2)) == 42
        assert len(basis(3, 1)) == 18
        assert len(basis(1, 1)) == 0

    def test_sorted_and_valid(self):
        gens = basis(3, 2)
        assert [u.seq for u in gens] == sorted(u.seq for u in gens)
        assert all(not u.is_zero and u.degree == 2 for u in gens)


class TestComposition:
    def test_known_example(self):
        got = compose(S(2, 3, 2, 1), 2, S(4, 3, 4, 1, 2))
        assert got == E(
            "(5,6,5,4,5,2,3,1) - (5,4,6,4,5,2,3,1) - (5,4,5,6,5,2,3,1) - (5,4,5,2,6,2,3,1) - (5,4,5,2,3,6,3,1)"
        )

    def test_cup_associativity(self):
        assert compose(S(1, 2), 1, S(1, 2)) == E("(1,2,3)")
        assert compose(S(1, 2), 2, S(1, 2)) == E("(1,2,3)")

    def test_cup1_of_cup(self):
        # (1,2) splits over the two 1s as (1)|(1,2) or (1,2)|(2)
        assert compose(S(1, 2, 1), 1, S(1, 2)) == E("(1,3,1,2) + (1,2,3,2)")
        assert compose(S(1, 2, 1), 2, S(1, 2)) == E("(1,2,3,1)")

    def test_slot_range(self):
        with pytest.raises(ValueError):
            compose(S(1, 2), 3, S(1, 2))

    @settings(max_examples=150, deadline=None)
    @given(generators(max_r=3, max_d=3), generators(max_r=3, max_d=3), st.data())
    def test_chain_map_law_integral(self, u, v, data):
        k = data.draw(st.integers(1, u.arity))
        lhs = compose(u, k, v).boundary()
        rhs = boundary(u).compose(k, OperadElement.of(v)) + OperadElement.of(u).compose(k, boundary(v)) * (-1) ** u.degree
        assert lhs == rhs

    @settings(max_examples=80, deadline=None)
    @given(generators(max_r=3, max_d=2), generators(max_r=3, max_d=2), st.data())
    def test_degree_and_arity_additivity(self, u, v, data):
        k = data.draw(st.integers(1, u.arity))
        x = compose(u, k, v)
        for w, _ in x:
            assert w.arity == u.arity + v.arity - 1
            assert w.degree == u.degree + v.degree


class TestSigns:
    def test_koszul(self):
        assert koszul_sign([1, 0], [1, 1]) == -1
        assert koszul_sign([1, 0], [2, 1]) == 1
        assert koszul_sign([0, 1, 2], [1, 1, 1]) == 1


class TestParsing:
    @settings(max_examples=50)
    @given(generators(max_r=5, max_d=3))
    def test_round_trip(self, u):
        assert parse_surjection(str(u)) == u

    def test_spaces_allowed(self):
        assert parse_surjection(" ( 1, 2 ,1 ) ") == S(1, 2, 1)

    @pytest.mark.parametrize(
        "text,column",
        [("(1,2,x)", 6), ("1,2", 1), ("(1,,2)", 4), ("(1,2", 5)],
    )
    def test_error_columns(self, text, column):
        with pytest.raises(ParseError) as info:
            parse_surjection(text)
        assert info.value.position + 1 == column
        assert f"column {column}" in str(info.value)

    def test_element(self):
        x = E("(1,2,1) - 2 · (2,1,2) + (1,2)")
        assert x.coefficient((1, 2, 1)) == 1 and x.coefficient((2, 1, 2)) == -2
        assert str(E("(2,1) - (1,2)")) == "(2,1) - (1,2)"

    def test_element_errors(self):
        with pytest.raises(ParseError):
            E("(1,2) +")
        with pytest.raises(ParseError):
            E("")
