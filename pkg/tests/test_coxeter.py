import math

import pytest
from hypothesis import given, settings, strategies as st

from ssbim.coxeter import ConfigError, CoxeterSystem, braid_closure

from conftest import coxeter


@pytest.mark.parametrize(
    "kind,size,top",
    [("A1", 2, 1), ("A1xA1", 4, 2), ("A2", 6, 3), ("B2", 8, 4), ("I2(6)", 12, 6), ("A3", 24, 6)],
)
def test_group_sizes(kind, size, top):
    W = coxeter(kind)
    assert W.size == size
    assert W.length(W.longest_element()) == top
    assert W.is_finite


def test_affine_a1_truncated():
    W = CoxeterSystem([[1, math.inf], [math.inf, 1]], (), 5)
    assert W.size == 11
    assert max(W.length(w) for w in W.elements()) == 5
    assert W.truncated


def test_infinite_needs_cap():
    with pytest.raises(ConfigError):
        CoxeterSystem([[1, math.inf], [math.inf, 1]])


@pytest.mark.parametrize(
    "mat",
    [[[1, 3], [2, 1]], [[2, 3], [3, 1]], [[1, 1], [1, 1]]],
)
def test_bad_matrices(mat):
    with pytest.raises(ConfigError):
        CoxeterSystem(mat)


def test_braid_and_multiply(A2, B2):
    assert A2.element((0, 1, 0)) == A2.element((1, 0, 1))
    assert A2.word(A2.element((1, 0, 1))) == (0, 1, 0)  # ShortLex canonical
    for w in A2.elements():
        assert A2.mul(w, A2.inverse(w)) == A2.identity
    st_ = B2.element((0, 1))
    assert B2.length(B2.mul(st_, st_)) == 4
    assert braid_closure((0, 1, 0), A2.matrix) == frozenset({(0, 1, 0), (1, 0, 1)})


def test_bruhat(A2):
    s1, s2 = A2.element((0,)), A2.element((1,))
    assert all(A2.bruhat_leq(A2.identity, w) for w in A2.elements())
    assert not A2.bruhat_leq(s1, s2)
    assert A2.bruhat_leq(s1, A2.element((0, 1, 0)))
    assert len(A2.bruhat_below(A2.longest_element())) == 6


def test_cosets(A2):
    S0 = {0}
    u, wm = A2.coset_decomposition(A2.element((0, 1)), S0)
    assert (u, wm) == (A2.element((0,)), A2.element((1,)))
    assert A2.coset_decomposition(A2.element((1, 0)), S0) == (A2.identity, A2.element((1, 0)))
    assert A2.coset_decomposition(A2.element((0,)), S0) == (A2.element((0,)), A2.identity)
    assert [A2.name(x) for x in A2.min_coset_reps(S0)] == ["e", "s2", "s2s1"]
    assert A2.min_coset_reps(set()) == list(A2.elements())
    assert A2.min_coset_reps({0, 1}) == [A2.identity]
    assert A2.longest_element({0, 1}) == A2.element((0, 1, 0))
    assert A2.longest_element({1}) == A2.element((1,))


@pytest.mark.parametrize("kind", ["A2", "B2", "I2(6)", "A3"])
def test_coset_lengths_add(kind):
    W = coxeter(kind)
    for S0 in [{0}, {1}, {0, 1}]:
        reps = set(W.min_coset_reps(S0))
        assert len(reps) * len(W.parabolic_elements(S0)) == W.size
        for w in W.elements():
            u, wm = W.coset_decomposition(w, S0)
            assert wm in reps
            assert W.mul(u, wm) == w
            assert W.length(w) == W.length(u) + W.length(wm)


def test_deodhar_cases(A2):
    S0 = {0}
    s2 = A2.element((1,))
    assert A2.deodhar_case(s2, 0, S0) == "a"
    assert A2.deodhar_case(A2.identity, 0, S0) == "c"
    assert A2.deodhar_case(s2, 1, S0) == "b"


def test_parse(A2):
    assert A2.parse_word("s1s2") == (0, 1)
    assert A2.parse_word("s2,s1") == (1, 0)
    assert A2.parse_word("e") == ()
    assert A2.parse_subset("s1,s2") == frozenset({0, 1})
    with pytest.raises(ConfigError):
        A2.parse_word("s3")


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=8))
def test_words_reduce(word):
    W = coxeter("A3")
    w = W.element(word)
    assert W.length(w) <= len(word)
    assert W.length(w) % 2 == len(word) % 2
    assert W.is_reduced(word) == (W.length(w) == len(word))
    assert W.element(W.word(w)) == w
    assert W.inverse(w) == W.element(tuple(reversed(word)))
