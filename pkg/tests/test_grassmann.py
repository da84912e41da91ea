import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from grasscode.field import get_field
from grasscode.grassmann import (
    FerrersDiagram,
    FerrersFilling,
    dual_subspace,
    enumerate_grassmannian,
    ferrers_of_vector,
    filling_of,
    gaussian_coefficient,
    hamming_distance,
    intersection_dimension,
    subspace_distance,
    subspace_distance_by_intersection,
    subspace_from_filling,
    subspace_from_matrix,
    subspace_from_rref,
)
from grasscode.matrix import matmul, rank
from grasscode.rankmetric import rank_distance

RE_EXAMPLE = [
    [1, 0, 0, 0, 1, 1, 0],
    [0, 0, 1, 0, 1, 0, 1],
    [0, 0, 0, 1, 0, 1, 1],
]


def random_subspace(rng, n, k, q):
    F = get_field(q)
    while True:
        G = np.array([[rng.randrange(q) for _ in range(n)] for _ in range(k)])
        try:
            return subspace_from_matrix(G, F)
        except ValueError:
            continue


# ------------------------------------------------------------ canonical form

def test_small_example_identifying_vector():
    X = subspace_from_matrix(RE_EXAMPLE, 2)
    assert X.id_vector == (1, 0, 1, 1, 0, 0, 0)
    assert X.k == 3 and X.n == 7


def test_small_example_diagram_and_tableaux():
    X = subspace_from_matrix(RE_EXAMPLE, 2)
    D = ferrers_of_vector(X.id_vector, 7, 3)
    assert D.row_lengths == (4, 3, 3)
    assert D.column_heights == (1, 3, 3, 3)
    assert filling_of(X).rows() == [[0, 1, 1, 0], [1, 0, 1], [0, 1, 1]]


def test_tableaux_rebuilds_the_matrix():
    vals = (0, 1, 1, 0, 1, 0, 1, 0, 1, 1)
    X = subspace_from_filling((1, 0, 1, 1, 0, 0, 0), vals)
    assert [list(r) for r in X.rows] == RE_EXAMPLE


def test_identity_rows_give_leading_ones():
    X = subspace_from_matrix(np.eye(3, 7, dtype=int), 2)
    assert X.id_vector == (1, 1, 1, 0, 0, 0, 0)


def test_rank_deficient_generator_rejected():
    with pytest.raises(ValueError):
        subspace_from_matrix([[1, 1, 0], [1, 1, 0]], 2)
    with pytest.raises(ValueError):
        subspace_from_matrix([[1, 1, 0], [0, 0, 1]], 2, k=3)


def test_non_rref_rows_rejected():
    with pytest.raises(ValueError):
        subspace_from_rref([[1, 1, 0], [1, 0, 1]], 2)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_row_operations_do_not_change_the_subspace(q):
    rng = random.Random(q)
    F = get_field(q)
    for _ in range(20):
        X = random_subspace(rng, 6, 3, q)
        while True:
            T = np.array([[rng.randrange(q) for _ in range(3)] for _ in range(3)])
            if rank(T, F) == 3:
                break
        Y = subspace_from_matrix(matmul(T, X.matrix, F), F)
        assert Y == X


# ------------------------------------------------------------ diagrams

def test_full_and_empty_diagrams():
    assert ferrers_of_vector((1, 1, 0, 0, 0)).column_heights == (2, 2, 2)
    assert ferrers_of_vector((0, 0, 0, 1, 1)).dots == 0


def test_diagram_weight_mismatch():
    with pytest.raises(ValueError):
        ferrers_of_vector((1, 0, 1), k=1)
    with pytest.raises(ValueError):
        ferrers_of_vector((1, 0, 1), n=4)


@given(st.lists(st.booleans(), min_size=1, max_size=12))
def test_row_lengths_follow_pivot_formula(bits):
    v = tuple(int(b) for b in bits)
    n, k = len(v), sum(v)
    piv = [i for i, x in enumerate(v) if x]
    D = ferrers_of_vector(v)
    expected = [n - 1 - p - (k - 1 - i) for i, p in enumerate(piv)]
    got = list(D.row_lengths) + [0] * (k - len(D.row_lengths))
    assert got[:k] == expected
    assert list(D.column_heights) == sorted(D.column_heights)
    assert all(a >= b for a, b in zip(D.row_lengths, D.row_lengths[1:]))


def test_diagram_from_rows_round_trip():
    D = FerrersDiagram.from_rows((5, 4, 3))
    assert D.row_lengths == (5, 4, 3)
    assert D.m == 3 and D.ell == 5


def test_filling_value_count_checked():
    D = FerrersDiagram.from_rows((2, 1))
    with pytest.raises(ValueError):
        FerrersFilling(D, (0, 1))


def test_filling_diagram_mismatch():
    wrong = FerrersFilling(FerrersDiagram.from_rows((2, 1)), (0, 1, 1))
    with pytest.raises(ValueError):
        subspace_from_filling((1, 0, 1, 0, 0), wrong)


def test_zero_filling_is_pivot_span():
    v = (0, 1, 0, 1, 0, 1)
    X = subspace_from_filling(v, [0] * ferrers_of_vector(v).dots)
    assert X.matrix.sum() == 3


@pytest.mark.parametrize("q,n,k", [(2, 5, 3), (3, 4, 2)])
def test_filling_round_trip_over_grassmannian(q, n, k):
    for X in enumerate_grassmannian(n, k, q):
        assert subspace_from_filling(X.id_vector, filling_of(X), q) == X


# ------------------------------------------------------------ distances

def test_distance_to_self():
    X = subspace_from_matrix(RE_EXAMPLE, 2)
    assert subspace_distance(X, X) == 0


def test_complementary_planes():
    X = subspace_from_matrix([[1, 0, 0, 0], [0, 1, 0, 0]])
    Y = subspace_from_matrix([[0, 0, 1, 0], [0, 0, 0, 1]])
    assert subspace_distance(X, Y) == 4


@pytest.mark.parametrize("q", [2, 3])
def test_pending_dot_values_separate_close_vectors(q):
    """Id vectors 101001 and 100101 are at Hamming distance 2, but the
    differing pending-dot value pushes the subspace distance to 4."""
    for v1, v2, v3, v4, u1, u2, u3 in itertools.product(range(q), repeat=7):
        X = subspace_from_matrix([[1, 0, 0, v1, v2, 0], [0, 0, 1, v3, v4, 0], [0, 0, 0, 0, 0, 1]], q)
        Y = subspace_from_matrix([[1, 1, u1, 0, u2, 0], [0, 0, 0, 1, u3, 0], [0, 0, 0, 0, 0, 1]], q)
        assert hamming_distance(X.id_vector, Y.id_vector) == 2
        assert subspace_distance(X, Y) >= 4


def test_distance_ambient_mismatch():
    with pytest.raises(ValueError):
        subspace_distance(subspace_from_matrix([[1, 0]]), subspace_from_matrix([[1, 0, 0]]))


def test_hamming_examples():
    assert hamming_distance("1011000", "1011000") == 0
    assert hamming_distance("101001", "100101") == 2
    assert hamming_distance("1100", "0011") == 4
    with pytest.raises(ValueError):
        hamming_distance("10", "100")


@pytest.fixture(scope="module")
def g236():
    return enumerate_grassmannian(6, 3, 2)


def test_distance_dominates_hamming_exhaustive(g236):
    for X, Y in itertools.combinations(g236, 2):
        assert subspace_distance(X, Y) >= hamming_distance(X.id_vector, Y.id_vector)


def test_same_vector_distance_is_twice_rank_distance(g236):
    by_v = {}
    for X in g236:
        by_v.setdefault(X.id_vector, []).append(X)
    for group in by_v.values():
        for X, Y in itertools.combinations(group, 2):
            assert subspace_distance(X, Y) == 2 * rank_distance(X.matrix, Y.matrix, 2)


@pytest.mark.parametrize("q", [2, 3])
def test_stacked_rank_matches_intersection(q):
    rng = random.Random(10 + q)
    for _ in range(150):
        k1, k2 = rng.randint(1, 3), rng.randint(1, 3)
        X, Y = random_subspace(rng, 5, k1, q), random_subspace(rng, 5, k2, q)
        assert subspace_distance(X, Y) == subspace_distance_by_intersection(X, Y)


@given(st.integers(0, 10 ** 6))
def test_metric_axioms_on_random_triples(seed):
    rng = random.Random(seed)
    X, Y, Z = (random_subspace(rng, 6, 3, 2) for _ in range(3))
    dxy, dyz, dxz = subspace_distance(X, Y), subspace_distance(Y, Z), subspace_distance(X, Z)
    assert dxy == subspace_distance(Y, X)
    assert dxz <= dxy + dyz
    assert (dxy == 0) == (X == Y)
    assert dxy % 2 == 0


# ------------------------------------------------------------ counting

@pytest.mark.parametrize("n,k,q,expected", [(5, 0, 2, 1), (5, 2, 2, 155), (7, 2, 2, 2667), (4, 2, 2, 35),
                                            (3, 1, 2, 7), (6, 3, 2, 1395), (4, 2, 3, 130)])
def test_gaussian_values(n, k, q, expected):
    assert gaussian_coefficient(n, k, q) == expected


def test_gaussian_out_of_range_is_zero():
    assert gaussian_coefficient(3, 4, 2) == 0


@given(st.integers(1, 12), st.integers(0, 12), st.sampled_from([2, 3, 4, 5, 7]))
def test_gaussian_pascal_and_symmetry(n, k, q):
    k = min(k, n)
    assert gaussian_coefficient(n, k, q) == gaussian_coefficient(n, n - k, q)
    if 1 <= k <= n - 1:
        assert gaussian_coefficient(n, k, q) == (
            gaussian_coefficient(n - 1, k - 1, q) + q ** k * gaussian_coefficient(n - 1, k, q))


@pytest.mark.parametrize("q,nmax", [(2, 6), (3, 4)])
def test_enumeration_counts(q, nmax):
    for n in range(1, nmax + 1):
        for k in range(n + 1):
            words = enumerate_grassmannian(n, k, q)
            assert len(words) == len(set(words)) == gaussian_coefficient(n, k, q)


def test_enumeration_guard():
    with pytest.raises(ValueError):
        enumerate_grassmannian(12, 6, 2)


@pytest.mark.parametrize("q,m", [(2, m) for m in range(2, 9)] + [(3, m) for m in range(2, 9)])
def test_weight_two_dot_counts_sum_to_gaussian(q, m):
    total = 0
    for a, b in itertools.combinations(range(m), 2):
        v = [0] * m
        v[a] = v[b] = 1
        total += q ** ferrers_of_vector(v).dots
    assert total == gaussian_coefficient(m, 2, q)


# ------------------------------------------------------------ duality

@pytest.mark.parametrize("q", [2, 3])
def test_dual_is_orthogonal_and_involutive(q):
    rng = random.Random(q)
    F = get_field(q)
    for _ in range(30):
        X = random_subspace(rng, 6, rng.randint(1, 5), q)
        D = dual_subspace(X)
        assert D.k == 6 - X.k
        assert not matmul(X.matrix, D.matrix.T, F).any()
        assert dual_subspace(D) == X


def test_duality_preserves_distance():
    rng = random.Random(5)
    for _ in range(50):
        X, Y = random_subspace(rng, 7, 3, 2), random_subspace(rng, 7, 3, 2)
        assert subspace_distance(dual_subspace(X), dual_subspace(Y)) == subspace_distance(X, Y)
        assert intersection_dimension(X, Y) == 3 - subspace_distance(X, Y) // 2
