import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sqkit import ALL, SPIN, SUM_ALL, Index, compare, make_index, matches
from sqkit.errors import EmptyIndex, NegativeSubindex, PatternNotComparable

concrete = st.lists(st.integers(0, 5), min_size=1, max_size=4)


def lexicographic(a, b):
    """Reference ordering written out element by element."""
    for x, y in zip(a, b):
        if x != y:
            return -1 if x < y else 1
    if len(a) == len(b):
        return 0
    return -1 if len(a) < len(b) else 1


class TestMakeIndex:
    def test_concrete(self):
        idx = make_index([0, 1, 0])
        assert list(idx) == [0, 1, 0]
        assert idx.is_concrete and not idx.is_pattern

    def test_pattern(self):
        idx = make_index([ALL, 2, SUM_ALL])
        assert idx.is_pattern
        assert idx.subindices == [ALL, 2, SUM_ALL]

    def test_negative(self):
        with pytest.raises(NegativeSubindex):
            make_index([-1])

    def test_empty(self):
        with pytest.raises(EmptyIndex):
            make_index([])

    def test_numpy_integers_are_normalized(self):
        idx = make_index(np.array([3, 4]))
        assert idx == (3, 4)
        assert all(type(s) is int for s in idx)

    @pytest.mark.parametrize("bad", [[1.5], ["a"], [True]])
    def test_rejects_non_integers(self, bad):
        with pytest.raises(TypeError):
            make_index(bad)

    def test_rendering_and_parse(self):
        idx = make_index([ALL, 2, SUM_ALL, SPIN])
        assert str(idx) == "[ALL, 2, SUM_ALL, SPIN]"
        assert Index.parse(str(idx)) == idx
        assert Index.parse("0 1,2") == (0, 1, 2)

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            Index.parse("[0, x]")

    @given(concrete)
    def test_round_trip(self, subs):
        assert make_index(subs).subindices == subs


class TestCompare:
    @pytest.mark.parametrize(
        "a, b, expected",
        [([0, 1], [0, 2], -1), ([1, 0, 0], [1, 0, 0], 0), ([0, 5], [1, 0], -1),
         ([0, 1], [0, 1, 2], -1), ([2], [1, 9, 9], 1)],
    )
    def test_examples(self, a, b, expected):
        assert compare(Index(a), Index(b)) == expected

    def test_pattern_not_comparable(self):
        with pytest.raises(PatternNotComparable):
            compare(Index([ALL, 0]), Index([0, 0]))

    @given(concrete, concrete)
    def test_matches_reference_order(self, a, b):
        assert compare(Index(a), Index(b)) == lexicographic(a, b)

    @given(concrete, concrete)
    def test_antisymmetric(self, a, b):
        assert compare(Index(a), Index(b)) == -compare(Index(b), Index(a))

    @given(concrete, concrete, concrete)
    def test_transitive(self, a, b, c):
        a, b, c = Index(a), Index(b), Index(c)
        if compare(a, b) <= 0 and compare(b, c) <= 0:
            assert compare(a, c) <= 0


class TestMatches:
    def test_wildcards(self):
        assert matches(Index([ALL, 3, SUM_ALL]), Index([7, 3, 1]))

    def test_fixed_mismatch(self):
        assert not matches(Index([ALL, 3, SUM_ALL]), Index([7, 4, 1]))

    def test_length_mismatch_is_false(self):
        assert not matches(Index([ALL, ALL]), Index([1, 2, 3]))

    def test_spin_matches_any_value(self):
        assert matches(Index([0, SPIN]), Index([0, 7]))

    @given(concrete, concrete)
    def test_concrete_pattern_is_equality(self, a, b):
        assert matches(Index(a), Index(b)) == (compare(Index(a), Index(b)) == 0)
