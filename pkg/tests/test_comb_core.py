from __future__ import annotations

import itertools
from math import factorial, prod

import pytest
from hypothesis import given, strategies as st

from zhecke.comb_core import (
    DomainError,
    all_permutations,
    alpha_max,
    alpha_min,
    as_generalized,
    bracket,
    bubble_act,
    bubble_act_perm,
    bubble_act_word,
    coarser,
    comp_of,
    compatible,
    complement,
    compose,
    compositions,
    conjugate_by_w0,
    covers,
    fmt_composition,
    fmt_generalized,
    generalized_compositions,
    identity_perm,
    interval_size_formula,
    inverse,
    length,
    parse_composition,
    parse_generalized,
    parse_permutation,
    perm_basics,
    place_perm_act,
    reduced_word,
    reduced_words,
    reverse,
    set_of,
    sort_to_partition,
    sorting_interval,
    transpose,
    w0,
    word_to_perm,
)
from zhecke.tableaux import enumerate_family


def comps_upto(n):
    return [a for m in range(1, n + 1) for a in compositions(m)]


@st.composite
def composition_st(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    cuts = draw(st.sets(st.integers(1, n - 1))) if n > 1 else set()
    return comp_of(cuts, n)


@st.composite
def perm_st(draw, max_k=6):
    k = draw(st.integers(1, max_k))
    return tuple(draw(st.permutations(range(1, k + 1))))


def test_set_and_comp_examples():
    assert set_of((3, 1, 2)) == (3, 4)
    assert comp_of({2, 4}, 5) == (2, 2, 1)


def test_set_comp_round_trip_exhaustive():
    for a in comps_upto(8):
        assert comp_of(set_of(a), sum(a)) == a
    for n in range(1, 8):
        for k in range(n):
            for s in itertools.combinations(range(1, n), k):
                assert set_of(comp_of(s, n)) == s


def test_compositions_count_and_order():
    for n in range(1, 9):
        cs = list(compositions(n))
        assert len(cs) == 2 ** (n - 1)
        assert cs == sorted(cs)
        assert len(set(cs)) == len(cs)


def test_reverse_complement_transpose_examples():
    assert complement((1, 2, 2)) == (2, 2, 1)
    assert reverse(()) == complement(()) == transpose(()) == ()


def test_involutions_exhaustive():
    for a in comps_upto(8):
        assert reverse(reverse(a)) == a
        assert complement(complement(a)) == a
        assert transpose(transpose(a)) == a
        assert transpose(a) == complement(reverse(a)) == reverse(complement(a))


def test_sort_and_place_perm():
    assert sort_to_partition((1, 2, 1, 1, 2)) == (2, 2, 1, 1, 1)
    assert place_perm_act((2, 1, 2), w0(3)) == (2, 1, 2)
    for s in all_permutations(3):
        assert place_perm_act(place_perm_act((3, 1, 2), s), inverse(s)) == (3, 1, 2)


@given(composition_st(), st.data())
def test_place_perm_is_right_action(a, data):
    k = len(a)
    s = tuple(data.draw(st.permutations(range(1, k + 1))))
    t = tuple(data.draw(st.permutations(range(1, k + 1))))
    # (a . s) . t = a . (s t) where (s t)(i) = s(t(i))
    assert place_perm_act(place_perm_act(a, s), t) == place_perm_act(a, compose(s, t))


def test_bracket_examples():
    assert sorted(bracket(((2, 1), (2,)))) == [(2, 1, 2), (2, 3)]
    g = ((1,), (1,), (2, 1, 2, 2))
    assert alpha_min(g) == (1, 1, 2, 1, 2, 2)
    assert alpha_max(g) == (4, 1, 2, 2)
    assert (1, 3, 1, 2, 2) in bracket(g)


def test_bracket_properties():
    for n in range(1, 7):
        for g in generalized_compositions(n):
            b = bracket(g)
            assert len(b) == 2 ** (len(g) - 1)
            assert len(set(b)) == len(b)
            for beta in b:
                assert coarser(alpha_max(g), beta)
                assert coarser(beta, alpha_min(g))


def test_generalized_composition_count():
    for n in range(1, 7):
        assert sum(1 for _ in generalized_compositions(n)) == 3 ** (n - 1)


def test_coarser_examples():
    assert coarser((2, 3), (2, 1, 2))
    assert not coarser((2, 3), (3, 2))


def test_covers_matches_brute_force():
    for n in range(1, 7):
        cs = list(compositions(n))
        for a in cs:
            for b in cs:
                strict = coarser(a, b) and a != b
                brute = strict and not any(
                    coarser(a, c) and coarser(c, b) and c not in (a, b) for c in cs
                )
                assert covers(a, b) == brute


def test_bubble_examples():
    assert bubble_act((1, 3, 2), 1) == (3, 1, 2)
    assert bubble_act((3, 1, 2), 1) == (3, 1, 2)
    with pytest.raises(DomainError):
        bubble_act((1, 2), 2)
    with pytest.raises(DomainError):
        bubble_act((1, 2), 0)


def test_bubble_word_independent_of_reduced_word_w0_s3():
    words = reduced_words(w0(3))
    assert len(words) == 2
    for m in itertools.product((1, 2, 3), repeat=3):
        assert bubble_act_word(m, words[0]) == bubble_act_word(m, words[1])


def test_bubble_word_independent_of_reduced_word_k5():
    for k in range(1, 6):
        vectors = list(itertools.product(range(1, 4), repeat=k))
        for s in all_permutations(k):
            words = reduced_words(s)
            for m in vectors:
                results = {bubble_act_word(m, w) for w in words}
                assert len(results) == 1
                assert results == {bubble_act_perm(m, s)}


def test_bubble_w0_sorts_decreasing():
    for m in itertools.product(range(1, 4), repeat=4):
        assert bubble_act_perm(m, w0(4)) == tuple(sorted(m, reverse=True))


def test_perm_basics_examples():
    assert length(parse_permutation("41532")) == 6
    assert conjugate_by_w0((3, 1, 2)) == (2, 3, 1)
    assert reduced_word(identity_perm(4)) == ()
    pb = perm_basics((3, 1, 2))
    assert pb["length"] == 2 and pb["inverse"] == (2, 3, 1) and pb["w0"] == (3, 2, 1)


@given(perm_st())
def test_reduced_word_properties(s):
    k = len(s)
    inv = sum(1 for i in range(k) for j in range(i + 1, k) if s[i] > s[j])
    w = reduced_word(s)
    assert length(s) == inv == len(w)
    assert word_to_perm(k, w) == s
    assert compose(s, inverse(s)) == identity_perm(k)
    c = conjugate_by_w0(s)
    assert all(c[i - 1] == k + 1 - s[k - i] for i in range(1, k + 1))
    assert conjugate_by_w0(c) == s


def test_all_reduced_words_small():
    for k in range(1, 5):
        for s in all_permutations(k):
            ws = reduced_words(s)
            assert len(set(ws)) == len(ws)
            assert all(word_to_perm(k, w) == s and len(w) == length(s) for w in ws)
    assert len(reduced_words(w0(4))) == 16


def test_sorting_interval_worked_example():
    si = sorting_interval((1, 2, 1, 1, 2))
    assert si.sigma_max == parse_permutation("41532")
    assert si.sigma_min == parse_permutation("14235")
    assert len(si.members) == 12 == factorial(3) * factorial(2)


def test_sorting_interval_strict():
    si = sorting_interval((1, 2, 3))
    assert si.members == (si.sigma_min,) == (si.sigma_max,)


def test_sorting_interval_brute_force():
    for a in comps_upto(7):
        lam = sort_to_partition(a)
        brute = [s for s in all_permutations(len(a)) if place_perm_act(reverse(a), s) == lam]
        si = sorting_interval(a)
        assert sorted(si.members) == brute
        assert si.sigma_min == min(brute, key=length)
        assert si.sigma_max == max(brute, key=length)
        counts = [a.count(v) for v in set(a)]
        assert len(brute) == interval_size_formula(a) == prod(map(factorial, counts))


def test_compatible_examples():
    assert compatible((2, 2, 1), (1, 3, 2))
    assert not compatible((1, 2), (2, 1))


def test_compatible_iff_nonempty_enumeration():
    for a in comps_upto(5):
        for s in all_permutations(len(a)):
            assert compatible(a, s) == bool(enumerate_family("SPCT", a, s))


def test_parse_and_format():
    assert parse_composition("2,2,1") == (2, 2, 1)
    assert fmt_composition((2, 2, 1)) == "2,2,1"
    assert parse_generalized("1|1,2,1,1,2,1") == ((1,), (1, 2, 1, 1, 2, 1))
    assert fmt_generalized(((1,), (1, 2, 1, 1, 2, 1))) == "1|1,2,1,1,2,1"
    assert as_generalized((2, 1)) == ((2, 1),)
    for bad in ("2,,1", "a", "0,1", "-1"):
        with pytest.raises(DomainError):
            parse_composition(bad)
    for bad in ("112", "13", "1a"):
        with pytest.raises(DomainError):
            parse_permutation(bad)
