from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gnl import linalg
from gnl.errors import InputError
from gnl.linalg import Subspace

import oracles

matrices = st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=1, max_size=7))


@settings(max_examples=300)
@given(matrices)
def test_rank_matches_textbook_elimination(m):
    assert linalg.rank(m) == oracles.gauss_rank(m)


@settings(max_examples=200)
@given(matrices)
def test_nullspace(m):
    ncols = len(m[0])
    basis = linalg.nullspace_vectors(m, ncols)
    assert len(basis) == ncols - oracles.gauss_rank(m)
    for v in basis:
        assert linalg.matvec(m, v) == [0] * len(m)


@settings(max_examples=200)
@given(matrices)
def test_rref_is_canonical(m):
    ncols = len(m[0])
    piv, red = linalg.rref(m, ncols)
    for p, row in zip(piv, red):
        assert row[p] == 1
        assert all(r[p] == 0 for r in red if r is not row)
    # same row space in any order gives the same RREF
    assert linalg.rref(m[::-1], ncols) == (piv, red)


def test_large_entries_stay_exact():
    big = 10 ** 40
    m = [[big, 1, 0], [1, big, 1], [big + 1, big + 1, 1]]
    assert linalg.rank(m) == oracles.gauss_rank(m) == 2


def test_inverse():
    m = [[2, 1], [7, 4]]
    inv = linalg.inverse(m)
    assert linalg.matmul(m, inv) == linalg.identity(2)
    with pytest.raises(InputError):
        linalg.inverse([[1, 2], [2, 4]])


def test_subspace_operations():
    U = Subspace(3, [[1, 0, 0], [0, 1, 0]])
    V = Subspace(3, [[0, 1, 0], [0, 0, 1]])
    assert U.intersect(V) == Subspace(3, [[0, 1, 0]])
    assert (U + V).dim == 3
    assert Subspace(3, [[0, 2, 0]]) <= U
    assert [Fraction(1), 1, 0] in U
    assert [0, 0, 1] not in U
    assert Subspace(3, [[1, 1, 0], [1, -1, 0]]) == U
