"""Exact linear algebra, cross-checked against sympy's rational matrices."""

from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from zhecke.comb_core import DomainError
from zhecke.exact_linalg import (
    RatMatrix,
    Subspace,
    fmt_rational,
    image,
    nullspace,
    operator_closure,
    rank,
    rref,
)
from zhecke.hecke_modules import basis_vector, build_module
from zhecke.tableaux import from_rows

entries = st.integers(-3, 3)


@st.composite
def matrices(draw, max_dim=5):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return [[draw(entries) for _ in range(c)] for _ in range(r)]


@st.composite
def vector_sets(draw, dim, max_count=4):
    k = draw(st.integers(0, max_count))
    return [[draw(entries) for _ in range(dim)] for _ in range(k)]


def sym_rref(rows):
    m = sympy.Matrix(rows)
    r, piv = m.rref()
    return [[Fraction(int(x.p), int(x.q)) for x in r.row(i)] for i in range(r.rows)], piv


def test_rref_identity():
    r, k, piv = rref(RatMatrix.identity(3))
    assert r == RatMatrix.identity(3) and k == 3 and piv == (0, 1, 2)


def test_nullspace_of_zero_matrix():
    ns = nullspace(RatMatrix.zeros(2, 2))
    assert ns.dim == 2 and ns == Subspace.full(2)


@given(matrices())
def test_rref_matches_sympy(rows):
    m = RatMatrix.from_rows(rows)
    r, k, piv = rref(m)
    expected, epiv = sym_rref(rows)
    assert tuple(epiv) == piv
    assert k == len(epiv)
    assert r.to_rows() == expected


@given(matrices(max_dim=6))
def test_rank_nullity(rows):
    m = RatMatrix.from_rows(rows)
    ns = nullspace(m)
    assert rank(m) + ns.dim == m.ncols
    assert rank(m) == sympy.Matrix(rows).rank()
    for v in ns.basis:
        assert not any(m.apply(v))


@given(matrices())
def test_image_is_column_space(rows):
    m = RatMatrix.from_rows(rows)
    cols = [list(c) for c in zip(*rows)]
    assert image(m) == Subspace.span(m.nrows, cols)


def test_subspace_basics():
    e1 = Subspace.span(2, [[1, 0]])
    e2 = Subspace.span(2, [[0, 1]])
    assert e1.intersect(e2).dim == 0
    assert e1.contains(e1)
    assert (e1 + e2) == Subspace.full(2)
    assert not e1.member([1, 1]) and e1.member([Fraction(5, 3), 0])
    with pytest.raises(DomainError):
        e1.intersect(Subspace.full(3))
    with pytest.raises(DomainError):
        e1.member([1, 2, 3])


@given(st.integers(1, 5).flatmap(lambda d: st.tuples(st.just(d), vector_sets(d), vector_sets(d))))
def test_dimension_formula(args):
    d, a, b = args
    s, t = Subspace.span(d, a), Subspace.span(d, b)
    assert s.dim + t.dim == (s + t).dim + s.intersect(t).dim
    assert (s + t).contains(s) and s.contains(s.intersect(t))


@given(st.integers(1, 5).flatmap(
    lambda d: st.tuples(st.just(d), vector_sets(d), vector_sets(d), vector_sets(d))))
def test_modular_law(args):
    # if A contains C then A ∩ (B + C) = (A ∩ B) + C
    d, a, b, c = args
    A = Subspace.span(d, a + c)
    B, C = Subspace.span(d, b), Subspace.span(d, c)
    assert A.intersect(B + C) == A.intersect(B) + C


@given(st.integers(1, 5).flatmap(lambda d: st.tuples(st.just(d), vector_sets(d))))
def test_equality_is_basis_independent(args):
    d, vs = args
    s = Subspace.span(d, vs)
    shuffled = Subspace.span(d, [[2 * x for x in v] for v in reversed(vs)])
    assert s == shuffled
    for v, p in zip(s.basis, s.pivots):
        assert v[p] == 1


def test_basis_is_reduced_echelon():
    s = Subspace.span(4, [[2, 4, 6, 8], [1, 1, 1, 1], [3, 5, 7, 9]])
    assert list(s.pivots) == sorted(s.pivots)
    for k, (v, p) in enumerate(zip(s.basis, s.pivots)):
        assert v[p] == 1
        assert all(w[p] == 0 for j, w in enumerate(s.basis) if j != k)


def test_entries_stay_reduced():
    m = RatMatrix.from_rows([[Fraction(2, 4), 0], [Fraction(6, 3), 1]])
    assert m.entry(0, 0) == Fraction(1, 2) and isinstance(m.entry(1, 0), int)
    assert fmt_rational(Fraction(2, 4)) == "1/2" and fmt_rational(3) == "3"
    assert m.to_json() == [[0, 0, "1/2"], [1, 0, "2"], [1, 1, "1"]]


def test_matrix_arithmetic():
    a = RatMatrix.from_rows([[1, 2], [3, 4]])
    b = RatMatrix.from_rows([[0, 1], [1, 0]])
    assert (a @ b).to_rows() == [[2, 1], [4, 3]]
    assert (a + b - a) == b
    assert a.transpose().to_rows() == [[1, 3], [2, 4]]
    assert a.apply([1, 1]) == [3, 7]
    with pytest.raises(DomainError):
        a @ RatMatrix.identity(3)


def test_operator_closure_trivial_cases():
    m = build_module("V", (1, 2))
    assert operator_closure(Subspace.full(m.dim), m.gens) == Subspace.full(m.dim)
    assert operator_closure(Subspace.zero(m.dim), m.gens).dim == 0
    with pytest.raises(DomainError):
        operator_closure(Subspace.zero(m.dim + 1), m.gens)


def test_operator_closure_cyclic_class_module():
    m = build_module("S", (2, 2, 1), (1, 3, 2))
    top = from_rows("SPCT", (2, 2, 1), [[2, 1], [5, 4], [3]], (1, 3, 2))
    closure = operator_closure(Subspace.span(m.dim, [basis_vector(m, top)]), m.gens)
    # the source of its class generates that class's summand
    assert closure.dim == 2
    whole = operator_closure(
        Subspace.span(m.dim, [basis_vector(m, top), basis_vector(
            m, from_rows("SPCT", (2, 2, 1), [[3, 2], [5, 1], [4]], (1, 3, 2)))]),
        m.gens,
    )
    assert whole.dim == m.dim == 3


@given(st.integers(0, 7), st.integers(0, 7))
def test_operator_closure_monotone_and_idempotent(i, j):
    m = build_module("X", (2, 1, 2))
    d = m.dim
    ei = [1 if k == i % d else 0 for k in range(d)]
    ej = [1 if k == j % d else 0 for k in range(d)]
    small = operator_closure(Subspace.span(d, [ei]), m.gens)
    big = operator_closure(Subspace.span(d, [ei, ej]), m.gens)
    assert big.contains(small)
    assert operator_closure(small, m.gens) == small
