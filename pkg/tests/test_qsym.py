"""Quasisymmetric characteristics of the modules."""

from __future__ import annotations

import math
import warnings
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from zhecke.comb_core import (
    DomainError,
    compatible,
    compositions,
    conjugate_by_w0,
    is_partition,
    length,
    partitions,
    reverse,
    times_simple,
    w0,
)
from zhecke.hecke_modules import build_module, decompose_spct, phi_twist, to_pi_style
from zhecke.qsym import (
    QSymElt,
    ch_of_module,
    descent_sum_oracle,
    qschur_expansion,
    qsum,
    recursion_check,
    rho_involution,
    schur_fundamental,
    young_qschur,
    zero,
)

comps = st.integers(1, 6).flatmap(lambda n: st.sampled_from(list(compositions(n))))


def elements(n):
    return st.dictionaries(st.sampled_from(list(compositions(n))), st.integers(-3, 3), max_size=4).map(
        lambda d: QSymElt(n, d))


def hook_count(lam):
    """Number of standard Young tableaux by the hook length formula."""
    n = sum(lam)
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])]
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= row - j + conj[j] - i - 1
    return math.factorial(n) // hooks


def test_arithmetic():
    a = QSymElt.fundamental((1, 2))
    b = QSymElt.fundamental((2, 1))
    assert (a + b - b) == a
    assert (a - a).is_zero() and zero(3).is_zero()
    assert a.scale(3).coeffs == {(1, 2): 3}
    assert qsum(3, [a, b, a]).coeffs == {(1, 2): 2, (2, 1): 1}
    assert QSymElt(3, {(1, 2): 0}).is_zero()
    with pytest.raises(DomainError):
        a + QSymElt.fundamental((1, 1))
    with pytest.raises(DomainError):
        QSymElt(3, {(1, 1): 1})
    assert repr(zero(2)) == "0 (degree 2)"
    assert (a + b).to_json() == {"n": 3, "terms": [{"comp": "1,2", "coeff": 1},
                                                   {"comp": "2,1", "coeff": 1}]}


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(elements(n), elements(n), elements(n))))
def test_group_laws(xyz):
    x, y, z = xyz
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert rho_involution(rho_involution(x)) == x
    assert rho_involution(x + y) == rho_involution(x) + rho_involution(y)


@given(comps)
def test_ch_of_fundamental(alpha):
    assert ch_of_module(build_module("F", alpha)) == QSymElt.fundamental(alpha)


@pytest.mark.parametrize("n", range(1, 6))
def test_ch_matches_descent_oracle(n):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for alpha in compositions(n):
            assert ch_of_module(build_module("V", alpha)) == descent_sum_oracle("SIT", alpha)
            assert ch_of_module(build_module("X", alpha)) == descent_sum_oracle("SET", alpha)
            assert ch_of_module(build_module("P_bar", (alpha,))) == descent_sum_oracle("SRT", (alpha,))
            for sigma in permutations(range(1, len(alpha) + 1)):
                assert ch_of_module(build_module("S", alpha, sigma)) == \
                    descent_sum_oracle("SPCT", alpha, sigma)
                assert ch_of_module(build_module("S_hat", alpha, sigma)) == \
                    descent_sum_oracle("SPYCT", alpha, sigma)


@pytest.mark.parametrize("n", range(1, 6))
def test_twist_reverses_characteristic(n):
    for alpha in compositions(n):
        for m in (build_module("V", alpha), build_module("X", alpha),
                  to_pi_style(build_module("P", (alpha,)))):
            assert ch_of_module(phi_twist(m)) == rho_involution(ch_of_module(m))


@pytest.mark.parametrize("n", range(1, 6))
def test_spyct_is_reversed_spct(n):
    for alpha in compositions(n):
        for sigma in permutations(range(1, len(alpha) + 1)):
            hat = ch_of_module(build_module("S_hat", alpha, sigma))
            other = reverse(alpha), conjugate_by_w0(sigma)
            spct = ch_of_module(build_module("S", *other)) if compatible(*other) else zero(n)
            assert hat == rho_involution(spct)


def test_class_summands_add_up():
    for alpha, sigma in [((2, 2, 1), (1, 3, 2)), ((1, 4, 4), (1, 2, 3)), ((2, 2, 1), (2, 3, 1))]:
        total = qsum(sum(alpha), (ch_of_module(m) for _, m in decompose_spct(alpha, sigma)))
        assert total == ch_of_module(build_module("S", alpha, sigma))


@pytest.mark.parametrize("n", range(1, 8))
def test_schur_count_by_hook_lengths(n):
    for lam in partitions(n):
        s = schur_fundamental(lam)
        assert sum(s.coeffs.values()) == hook_count(lam)


def test_schur_small():
    assert schur_fundamental((2, 1)).coeffs == {(1, 2): 1, (2, 1): 1}
    assert schur_fundamental((3,)) == QSymElt.fundamental((3,))
    assert schur_fundamental((1, 1, 1)) == QSymElt.fundamental((1, 1, 1))
    with pytest.raises(DomainError):
        schur_fundamental((1, 2))


@pytest.mark.parametrize("n", range(1, 7))
def test_longest_type_gives_schur(n):
    for alpha in compositions(n):
        if is_partition(reverse(alpha)):
            sigma = w0(len(alpha))
            assert ch_of_module(build_module("S_hat", alpha, sigma)) == schur_fundamental(reverse(alpha))


def test_young_qschur_is_identity_type():
    assert young_qschur((1, 2)) == ch_of_module(build_module("S_hat", (1, 2), (1, 2)))


@pytest.mark.parametrize("n", range(2, 5))
def test_recursions(n):
    for alpha in compositions(n):
        k = len(alpha)
        for sigma in permutations(range(1, k + 1)):
            for i in range(1, k):
                if length(times_simple(sigma, i)) >= length(sigma):
                    continue
                rep = recursion_check(alpha, sigma, i)
                assert rep["spct"] and rep["spyct_length"]


def test_recursion_rejects_ascent():
    with pytest.raises(DomainError):
        recursion_check((1, 2), (1, 2), 1)


@pytest.mark.parametrize("n", range(1, 5))
def test_qschur_expansion(n):
    for alpha in compositions(n):
        for sigma in permutations(range(1, len(alpha) + 1)):
            m = build_module("S_hat", alpha, sigma)
            expected = ch_of_module(m) if m.dim else zero(n)
            assert qschur_expansion(alpha, sigma) == expected
