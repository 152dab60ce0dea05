import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weyl.errors import InvalidThickness, LimitExceeded, UnknownGenerator
from weyl.words import (
    IDENTITY,
    NormalForm,
    ball,
    convergence_exponent,
    descent_set,
    double_coset_counts,
    inverse,
    multiply,
    poincare_partial,
    product,
    q_weight,
    reduce,
    set_limits,
    validate_thickness,
    LIMITS,
)

from systems import (
    A2, AFF_A2, AFF_G2, B3, CORPUS, D_INF, FREE3, HYP_SQUARE, Y1, geometric_word,
)


def test_identity_and_basic_reductions():
    assert reduce(A2, []) == IDENTITY
    assert str(IDENTITY) == "e"
    assert reduce(A2, "a a") == IDENTITY
    assert reduce(A2, "b a b") == NormalForm(("a", "b", "a"))
    assert reduce(A2, "a b a b") == NormalForm(("b", "a"))
    assert reduce(D_INF, "s t s t").word == ("s", "t", "s", "t")


def test_unknown_generator():
    with pytest.raises(UnknownGenerator):
        reduce(A2, "a z")


def test_descent_set():
    w = reduce(A2, "a b")
    assert descent_set(A2, w) == frozenset("b")
    assert descent_set(A2, IDENTITY) == frozenset()
    assert descent_set(A2, reduce(A2, "a b a")) == frozenset("ab")


def test_limits_are_enforced():
    old = dict(LIMITS)
    try:
        set_limits(ball=10)
        with pytest.raises(LimitExceeded):
            ball(FREE3, 5)
    finally:
        set_limits(**old)
    with pytest.raises(LimitExceeded):
        reduce(B3, "a b c a b c a b c", cap=3)
    with pytest.raises(ValueError):
        set_limits(ball=0)


def words_for(sys, max_len=10):
    return st.lists(st.sampled_from(sys.generators), max_size=max_len)


SYSTEMS = [A2, B3, D_INF, AFF_A2, AFF_G2, FREE3, HYP_SQUARE, Y1]


@pytest.mark.parametrize("sys", SYSTEMS, ids=repr)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_reduce_agrees_with_geometric_representation(sys, data):
    word = data.draw(words_for(sys))
    nf = reduce(sys, word)
    assert np.allclose(geometric_word(sys, word), geometric_word(sys, nf.word))
    # the reduced word really is reduced: it is no longer than any word for the element
    assert nf.length <= len(word)
    assert (len(word) - nf.length) % 2 == 0


@pytest.mark.parametrize("sys", SYSTEMS, ids=repr)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_normal_form_properties(sys, data):
    u = reduce(sys, data.draw(words_for(sys, 8)))
    v = reduce(sys, data.draw(words_for(sys, 8)))
    assert reduce(sys, u.word) == u
    assert product(sys, u, inverse(sys, u)) == IDENTITY
    assert product(sys, u, v) == reduce(sys, u.word + v.word)
    for s in sys.generators:
        us = multiply(sys, u, s)
        assert abs(us.length - u.length) == 1
        assert (us.length < u.length) == (s in descent_set(sys, u))
    # prefixes of a normal form are normal forms
    for k in range(u.length + 1):
        assert reduce(sys, u.word[:k]).word == u.word[:k]


@pytest.mark.parametrize("sys", SYSTEMS, ids=repr)
def test_normal_form_is_lex_least_among_reduced_words(sys):
    # all reduced words of length <= 5 for each element, compared by brute force
    by_matrix = {}
    for k in range(6):
        for word in itertools.product(sys.generators, repeat=k):
            key = tuple(np.round(geometric_word(sys, word), 6).ravel())
            by_matrix.setdefault(key, []).append(word)
    order = {g: i for i, g in enumerate(sys.generators)}
    for words in by_matrix.values():
        shortest = min(len(w) for w in words)
        least = min((w for w in words if len(w) == shortest), key=lambda w: [order[x] for x in w])
        for w in words:
            assert reduce(sys, w).word == least


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_ball_census_consistency(name):
    sys = CORPUS[name]
    b = ball(sys, 4)
    assert b.sphere_sizes[0] == 1
    assert sum(b.sphere_sizes) == len(b.elements)
    assert sum(b.descent_counts.values()) == len(b.elements)
    assert b.descent_counts.get(frozenset(), 0) == 1
    assert len(set(b.elements)) == len(b.elements)
    for w in b.elements:
        assert b.descents[w] == descent_set(sys, w)


def test_ball_of_finite_group_stops_at_longest_element():
    b = ball(A2, 10)
    assert b.sphere_sizes == (1, 2, 2, 1)


def test_thickness_validation():
    assert validate_thickness(D_INF, {"s": 2, "t": 3}) == {"s": 2, "t": 3}
    with pytest.raises(InvalidThickness):
        validate_thickness(A2, {"a": 2, "b": 3})  # odd label forces equality
    with pytest.raises(InvalidThickness):
        validate_thickness(D_INF, {"s": 1, "t": 3})
    with pytest.raises(InvalidThickness):
        validate_thickness(D_INF, {"s": 2})
    with pytest.raises(InvalidThickness):
        validate_thickness(D_INF, {"s": 2.0, "t": 3})
    with pytest.raises(UnknownGenerator):
        validate_thickness(D_INF, {"s": 2, "t": 3, "z": 2})


def test_double_cosets_for_infinite_dihedral():
    counts = double_coset_counts(D_INF, {"s": 2, "t": 3}, 36)
    assert counts[6] == 2 and counts[36] == 2
    assert counts[12] == 1 and counts[18] == 1
    assert counts[5] == 0


def brute_double_cosets(sys, q, N, radius):
    out = {}
    for nf in ball(sys, radius).elements:
        w = q_weight(nf.word, q)
        if w <= N:
            out[w] = out.get(w, 0) + 1
    return out


@pytest.mark.parametrize("sys, q", [
    (D_INF, {"s": 2, "t": 3}),
    (AFF_A2, {"a": 2, "b": 2, "c": 2}),
    (FREE3, {"a": 3, "b": 3, "c": 2}),
    (AFF_G2, {"a": 2, "b": 5, "c": 5}),
])
@pytest.mark.parametrize("N", [1, 7, 64, 200])
def test_double_cosets_match_oversized_ball(sys, q, N):
    # a much larger ball must not add anything below N
    assert dict(double_coset_counts(sys, q, N)) == brute_double_cosets(sys, q, N, N.bit_length() + 2)


def test_double_coset_total_against_ball_sizes():
    # with every q_s = 2, weights are exactly 2**length
    q = {"a": 2, "b": 2, "c": 2}
    for R in range(6):
        counts = double_coset_counts(AFF_A2, q, 2 ** R)
        assert sum(counts.values()) == len(ball(AFF_A2, R))


def test_poincare_partial():
    assert poincare_partial(A2, 5, 1) == 6
    assert poincare_partial(D_INF, 3, Fraction(1, 2)) == 1 + 2 * (Fraction(1, 2) + Fraction(1, 4) + Fraction(1, 8))


def test_convergence_exponent():
    assert convergence_exponent(D_INF) == 2
    assert convergence_exponent(Y1) == 3
    # at t = 2**-k the truncated series is bounded by sum (|S|/2**k)**l
    k = convergence_exponent(FREE3)
    t = Fraction(1, 2 ** k)
    ratio = Fraction(FREE3.rank, 2 ** k)
    assert poincare_partial(FREE3, 6, t) < 1 / (1 - ratio)
