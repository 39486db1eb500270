import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from groupomega.fields import (
    PrimeField,
    Subspace,
    count_subspaces,
    enumerate_subspaces,
    nullspace,
    random_invertible,
    rank,
    rref,
)

PRIMES = [2, 3, 5, 7]


def span_size(M, p):
    """Number of distinct vectors in the row span, by listing every combination."""
    M = np.asarray(M) % p
    seen = {tuple((np.array(c) @ M) % p) for c in itertools.product(range(p), repeat=M.shape[0])}
    return len(seen)


@st.composite
def small_matrices(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    rows = draw(st.integers(1, 4))
    cols = draw(st.integers(1, 5))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols))
    return np.array(entries).reshape(rows, cols), p


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_rank_matches_span_count(mp):
    M, p = mp
    assert p ** rank(M, p) == span_size(M, p)


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_rref_shape(mp):
    M, p = mp
    R, piv = rref(M, p)
    assert list(piv) == sorted(piv) and len(set(piv)) == len(piv)
    for i, c in enumerate(piv):
        col = R[:, c]
        assert col[i] == 1 and np.count_nonzero(col) == 1
        assert not R[i, :c].any()
    # same row space
    assert Subspace.span(M, p, M.shape[1]) == Subspace.span(R, p, M.shape[1])


@settings(max_examples=100, deadline=None)
@given(small_matrices())
def test_nullspace(mp):
    M, p = mp
    N = nullspace(M, p)
    assert not ((M @ N.T) % p).any()
    assert N.shape[0] == M.shape[1] - rank(M, p)


@settings(max_examples=100, deadline=None)
@given(small_matrices())
def test_annihilator_is_orthogonal_complement(mp):
    M, p = mp
    S = Subspace.span(M, p, M.shape[1])
    A = S.annihilator()
    assert A.dim + S.dim == S.ambient
    assert not ((S.basis @ A.basis.T) % p).any()
    assert A.annihilator() == S


@settings(max_examples=100, deadline=None)
@given(small_matrices())
def test_text_roundtrip(mp):
    M, p = mp
    S = Subspace.span(M, p, M.shape[1])
    assert Subspace.from_text(S.to_text()) == S


def test_text_format():
    S = Subspace.span([[1, 1, 0], [0, 1, 1]], 2, 3)
    assert S.to_text() == "2 3 2\n101\n011\n"
    with pytest.raises(ValueError):
        Subspace.from_text("2 3 2\n101\n")
    with pytest.raises(ValueError):
        Subspace.from_text("2 3 2\n101\n101\n")


@pytest.mark.parametrize("n, p", [(0, 2), (1, 2), (3, 2), (4, 2), (2, 3), (3, 3), (2, 5)])
def test_enumeration_counts_and_distinct(n, p):
    subs = list(enumerate_subspaces(n, p))
    assert len(subs) == count_subspaces(n, p)
    keys = {(S.dim, S.basis.tobytes()) for S in subs}
    assert len(keys) == len(subs)
    for S in subs:
        assert Subspace.span(S.basis, p, n) == S


def test_enumeration_matches_brute_force_f2_cubed():
    # every subspace of F_2^3 as a set of vectors, from all spanning sets
    vecs = list(itertools.product(range(2), repeat=3))
    brute = set()
    for k in range(4):
        for gens in itertools.combinations(vecs, k):
            S = Subspace.span(np.array(gens).reshape(-1, 3), 2, 3)
            brute.add(frozenset(tuple(v) for v in S.vectors()))
    listed = {frozenset(tuple(v) for v in S.vectors()) for S in enumerate_subspaces(3, 2)}
    assert listed == brute and len(brute) == 16


def test_subspace_order_and_sum():
    p = 3
    A = Subspace.span([[1, 0, 0]], p, 3)
    B = Subspace.span([[0, 1, 2]], p, 3)
    assert A <= A + B and B <= A + B
    assert not (A + B) <= A
    assert (A + B).dim == 2
    assert Subspace.zero(p, 3) <= A <= Subspace.full(p, 3)


def test_prime_field():
    for p in PRIMES:
        assert PrimeField(p).p == p
    for q in [1, 4, 9, 15]:
        with pytest.raises(ValueError):
            PrimeField(q)


def test_random_invertible():
    rng = np.random.default_rng(1)
    for p in (2, 3):
        for n in (1, 3, 4):
            assert rank(random_invertible(n, p, rng), p) == n
