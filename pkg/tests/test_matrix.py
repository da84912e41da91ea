import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from grasscode.field import get_field
from grasscode.matrix import (
    gf2_rank_batch,
    identity,
    matmul,
    nullspace,
    pack_rows,
    rank,
    rank_batch,
    rref,
    solve_nullspace,
    stack,
    sub,
    unpack_rows,
)

EXAMPLE = np.array([
    [1, 0, 0, 0, 1, 1, 0],
    [0, 0, 1, 0, 1, 0, 1],
    [0, 0, 0, 1, 0, 1, 1],
])


def row_span(A, q):
    F = get_field(q)
    out = set()
    for coeffs in itertools.product(range(q), repeat=A.shape[0]):
        v = np.zeros(A.shape[1], dtype=np.int64)
        for c, r in zip(coeffs, A):
            v = F.vadd(v, F.vmul(c, r))
        out.add(tuple(v))
    return out


def matrices(q, max_rows=4, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.integers(0, q - 1), min_size=r * c, max_size=r * c).map(
                lambda xs: np.array(xs, dtype=np.int64).reshape(r, c))))


def test_identity_is_fixed():
    res = rref(identity(4))
    assert (res.rref == identity(4)).all() and res.pivots == (0, 1, 2, 3) and res.rank == 4


def test_example_generator_is_rref_fixed_point():
    res = rref(EXAMPLE)
    assert (res.rref == EXAMPLE).all()
    assert res.pivots == (0, 2, 3) and res.rank == 3


def test_zero_matrix():
    Z = np.zeros((3, 5), dtype=np.int64)
    res = rref(Z, 3)
    assert res.rank == 0 and not res.rref.any()


def test_small_ranks():
    assert rank(np.ones((2, 2), dtype=np.int64)) == 1
    A = np.array([[1, 2], [2, 1]])
    assert rank(sub(A, A, 3), 3) == 0
    assert rank(stack(identity(2), identity(2))) == 2
    assert rank(stack(A, np.zeros((2, 2), np.int64)), 3) == rank(A, 3)


def test_stack_column_mismatch():
    with pytest.raises(ValueError):
        stack(identity(2), identity(3))


def test_nullspace_known_matrix():
    A = np.array([[1, 1, 0], [0, 1, 1]])
    N = solve_nullspace(A)
    assert N.shape == (1, 3) and (N == [[1, 1, 1]]).all()
    assert nullspace(identity(3)).shape == (0, 3)
    assert (matmul(A, nullspace(A).T) == 0).all()


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@given(data=st.data())
def test_rref_invariants(q, data):
    A = data.draw(matrices(q))
    res = rref(A, q)
    R = res.rref
    assert res.rank == len(res.pivots)
    assert list(res.pivots) == sorted(set(res.pivots))
    for i, c in enumerate(res.pivots):
        assert R[i, c] == 1
        assert np.count_nonzero(R[:, c]) == 1
        assert not R[i, :c].any()
    assert not R[res.rank:].any()
    assert row_span(R, q) == row_span(A, q)


@pytest.mark.parametrize("q", [2, 3, 4])
@given(data=st.data())
def test_rank_matches_span_size(q, data):
    A = data.draw(matrices(q))
    assert len(row_span(A, q)) == q ** rank(A, q)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@given(data=st.data())
def test_nullspace_post(q, data):
    A = data.draw(matrices(q))
    N = nullspace(A, q)
    assert N.shape[0] == A.shape[1] - rank(A, q)
    if N.shape[0]:
        assert rank(N, q) == N.shape[0]
        assert not matmul(A, N.T, q).any()


def test_random_4x6_rank_vs_span():
    rng = np.random.default_rng(7)
    for _ in range(200):
        A = rng.integers(0, 2, size=(4, 6))
        assert len(row_span(A, 2)) == 2 ** rank(A)


def test_pack_round_trip():
    rng = np.random.default_rng(1)
    A = rng.integers(0, 2, size=(5, 40))
    assert (unpack_rows(pack_rows(A), 40) == A).all()


@pytest.mark.parametrize("q", [2, 3, 4, 5, 9])
def test_rank_batch_matches_rank(q):
    rng = np.random.default_rng(q)
    M = rng.integers(0, q, size=(400, 5, 7))
    M[::4, 4] = M[::4, 1]
    M[::3, :, :3] = 0
    assert list(rank_batch(M, q)) == [rank(m, q) for m in M]


def test_gf2_rank_batch_wide():
    rng = np.random.default_rng(3)
    M = rng.integers(0, 2, size=(300, 8, 64))
    M[::2, 7] = M[::2, 0] ^ M[::2, 3]
    words = np.array([pack_rows(m) for m in M], dtype=np.uint64)
    assert list(gf2_rank_batch(words)) == [rank(m) for m in M]
