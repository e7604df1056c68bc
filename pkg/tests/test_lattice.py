from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricaut import lattice as lat
from toricaut.errors import NotInLattice

matrices = st.integers(1, 4).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda m: st.lists(st.lists(st.integers(-6, 6), min_size=m, max_size=m), min_size=n, max_size=n)
    )
)


def test_snf_small():
    u, d, v = lat.smith_normal_form([[2, 4], [6, 8]])
    assert lat.matmul(lat.matmul(u, [[2, 4], [6, 8]]), v) == d
    assert lat.snf_diagonal(d) == [2, 4]


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_is_a_unimodular_factorization(m):
    u, d, v = lat.smith_normal_form(m)
    assert lat.matmul(lat.matmul(u, m), v) == d
    assert abs(lat.determinant(u)) == 1 and abs(lat.determinant(v)) == 1
    diag = lat.snf_diagonal(d)
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert len(nz) == lat.rank(m)
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_hermite_rows_span_the_same_lattice(m):
    h = lat.hermite_rows(m)
    assert len(h) == lat.rank(m)
    # same row lattice: each side's rows are integral combinations of the other's
    for rows, basis in ((m, h), (h, m)):
        _, d, _ = lat.smith_normal_form(basis)
        assert lat.snf_diagonal(lat.smith_normal_form(list(basis) + list(rows))[1]) == lat.snf_diagonal(d)


def test_determinant_and_inverse():
    m = [[2, 1], [7, 4]]
    assert lat.determinant(m) == 1
    assert lat.inverse(m) == [[4, -1], [-7, 2]]
    assert lat.determinant([[1, 2], [2, 4]]) == 0


def test_rational_kernel():
    k = lat.rational_kernel([[1, 1, 1]], 3)
    assert len(k) == 2
    assert all(lat.dot(v, [1, 1, 1]) == 0 for v in k)


def test_primitive_and_integralize():
    assert lat.primitive((4, -6)) == (2, -3)
    assert lat.integralize((Fraction(1, 2), Fraction(-1, 3))) == (3, -2)


def test_reembed_collinear():
    emb, gens = lat.reembed_full_rank([(1, 1), (2, 2)])
    assert emb.reduced_rank == 1
    assert sorted(gens) == [(1,), (2,)]
    assert emb.backward((1,)) == (1, 1)
    assert emb.forward((3, 3)) == (3,)
    with pytest.raises(NotInLattice):
        emb.forward((1, 0))


def test_reembed_index_two_sublattice():
    emb, gens = lat.reembed_full_rank([(2, 0), (0, 2)])
    assert emb.reduced_rank == 2 and not emb.is_identity
    assert not emb.contains((1, 0))
    assert emb.contains((2, 4))
    for g, h in zip([(2, 0), (0, 2)], gens):
        assert emb.backward(h) == g


def test_reembed_identity():
    emb, gens = lat.reembed_full_rank([(2, 0), (3, 0), (0, 1)])
    assert emb.is_identity
    assert gens == [(2, 0), (3, 0), (0, 1)]


@settings(max_examples=150, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=4))
def test_reembedding_round_trip(gens):
    if not any(any(g) for g in gens):
        return
    emb, red = lat.reembed_full_rank(gens)
    for g, h in zip(gens, red):
        assert emb.forward(g) == h
        assert emb.backward(h) == tuple(g)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_adjugate(m):
    d = lat.determinant(m)
    assert lat.matmul(lat.adjugate(m), m) == [[d * (i == j) for j in range(len(m))] for i in range(len(m))]


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_integer_rank_matches_rational_rank(m):
    from fractions import Fraction as F

    assert lat.rank(m) == lat.rank([[F(a) for a in row] for row in m])
