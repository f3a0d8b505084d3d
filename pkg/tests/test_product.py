import pytest
from hypothesis import given, settings

from conftest import dfas
from hyperdfa import INF, Dfa, InfiniteDifferenceError, count_symdiff, discrepancy_witness, similarity_bound
from hyperdfa.oracle import bf_symdiff, count_symdiff_words
from hyperdfa.product import agrees_from

ALL = Dfa.build("a", 1, [(0, 0, 0)], 0, [0])
NONE = Dfa.build("a", 1, [], 0, [])


def test_identical_dfas_agree():
    c = count_symdiff(ALL, ALL)
    assert (c.errors, c.max_error_len, c.finite) == (0, None, True)
    assert similarity_bound(ALL, ALL) == 0
    assert discrepancy_witness(ALL, ALL) is None


def test_infinite_difference():
    with pytest.raises(InfiniteDifferenceError):
        count_symdiff(ALL, NONE)
    assert similarity_bound(ALL, NONE) == INF
    bounded = count_symdiff(ALL, NONE, max_len=3)
    assert (bounded.errors, bounded.max_error_len, bounded.finite) == (4, 3, False)
    assert discrepancy_witness(ALL, NONE) == ()


def test_alphabets_are_united_by_name():
    a = Dfa.build("a", 2, [(0, 0, 1)], 0, [1])
    b = Dfa.build("ba", 2, [(0, 1, 1), (0, 0, 1)], 0, [1])
    c = count_symdiff(a, b)
    assert (c.errors, c.max_error_len) == (1, 1)
    assert discrepancy_witness(a, b) == ("b",)


@settings(max_examples=120, deadline=None)
@given(dfas(max_n=4), dfas(max_n=4))
def test_bounded_count_matches_enumeration(a, b):
    horizon = 6
    expected = bf_symdiff(a, b, horizon)
    got = count_symdiff(a, b, max_len=horizon)
    assert got.errors == len(expected)
    assert got.max_error_len == (max(map(len, expected)) if len(expected) else None)
    w = discrepancy_witness(a, b)
    if len(expected):
        assert w in expected.words and len(w) == len(expected.words[0])


@settings(max_examples=120, deadline=None)
@given(dfas(max_n=4), dfas(max_n=4))
def test_auto_count_and_bound_agree(a, b):
    bound = similarity_bound(a, b)
    if bound == INF:
        assert not count_symdiff(a, b, max_len=0).finite
        return
    c = count_symdiff(a, b)
    # the difference is finite, so enumerating up to the bound finds every error word
    assert c.errors == len(bf_symdiff(a, b, bound))
    assert bound == (c.max_error_len + 1 if c.errors else 0)
    assert agrees_from(a, b, bound)
    assert bound == 0 or not agrees_from(a, b, bound - 1)


@settings(max_examples=80, deadline=None)
@given(dfas(max_n=5), dfas(max_n=5))
def test_pair_count_matches_enumeration(a, b):
    for n in range(6):
        assert count_symdiff_words(a, b, n) == len(bf_symdiff(a, b, n).words)


def test_pair_count_over_different_alphabets():
    b = Dfa.build("ab", 1, [(0, 1, 0)], 0, [0])
    assert count_symdiff_words(ALL, b, 3) == len(bf_symdiff(ALL, b, 3).words)
