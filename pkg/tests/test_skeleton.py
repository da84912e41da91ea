import itertools

import pytest
from hypothesis import given, strategies as st

from grasscode.grassmann import gaussian_coefficient, hamming_distance
from grasscode.skeleton import (
    SkeletonEntry,
    check_construction_0,
    check_skeleton,
    construction_0,
    digits,
    greedy_skeleton,
    multilevel,
    multilevel_code,
    one_factorization,
    pending_sets,
)
from grasscode.rankmetric import PendingBlockSpec
from grasscode.verify import verify_exhaustive


@pytest.mark.parametrize("m", range(2, 65))
def test_one_factorization_partitions_pairs(m):
    part = one_factorization(m)
    classes = part.classes
    assert part.ell == (m - 1 if m % 2 == 0 else m)
    size = m // 2 if m % 2 == 0 else (m - 1) // 2
    seen = set()
    for cls in classes:
        assert len(cls) == size
        used = [i for y in cls for i, x in enumerate(y) if x]
        assert len(used) == len(set(used))
        for y in cls:
            assert sum(y) == 2 and len(y) == m
        seen.update(cls)
    assert len(seen) == m * (m - 1) // 2


def test_one_factorization_small_m():
    with pytest.raises(ValueError):
        one_factorization(1)


def test_same_class_vectors_are_far_apart():
    part = one_factorization(8)
    for cls in part.classes:
        for a, b in itertools.combinations(cls, 2):
            assert hamming_distance(a, b) == 4
    assert part.class_of(part.classes[3][1]) == 3


@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3, 5, 7]), st.integers(1, 8))
def test_digits_round_trip(t, q, count):
    t %= q ** count
    ds = digits(t, q, count)
    assert len(ds) == count and all(0 <= d < q for d in ds)
    assert sum(d * q ** i for i, d in enumerate(ds)) == t


def test_digits_overflow():
    with pytest.raises(ValueError):
        digits(4, 2, 2)


def test_pending_sets_layout():
    part, sets = pending_sets(5, 2)
    assert part.ell == 5
    assert {(p.class_index, p.set_index, p.local) for p in sets} == {
        (0, 1, 0), (1, 2, 0), (2, 2, 1), (3, 3, 0), (4, 3, 1)}


@pytest.mark.parametrize("n,q", [(8, 2), (9, 2), (10, 2), (11, 2), (8, 3), (12, 3)])
def test_construction_0_size(n, q):
    C = construction_0(n, q)
    assert C.size == q ** (2 * (n - 3)) + gaussian_coefficient(n - 3, 2, q)
    assert C.size == C.notes["expected"]
    assert C.k == 3 and C.d == 4


def test_construction_0_parameter_guards():
    with pytest.raises(ValueError):
        construction_0(7, 2)
    with pytest.raises(ValueError, match="q\\^2\\+q\\+1"):
        check_construction_0(12, 2)
    assert check_construction_0(11, 2) == 7


def test_construction_0_small_case_exhaustive():
    rep = verify_exhaustive(construction_0(8, 2), threshold=10 ** 5)
    assert rep.certified_min_distance == 4 and rep.duplicates == 0


def test_check_skeleton_flags_uncovered_pair():
    entries = [SkeletonEntry((1, 1, 0, 0), 2), SkeletonEntry((1, 0, 1, 0), 2)]
    with pytest.raises(ValueError, match="Hamming distance 2"):
        check_skeleton(entries, 2)


def test_check_skeleton_accepts_block_plan():
    block = PendingBlockSpec(1, 1, (2,))
    entries = [
        SkeletonEntry((0, 1, 0, 1, 1, 0, 0), 2, {(0, 2): 0}, (3, 4, 5, 6), block),
        SkeletonEntry((0, 1, 0, 1, 0, 1, 0), 2, {(0, 2): 1}, (3, 4, 5, 6), block),
    ]
    check_skeleton(entries, 1)
    C = multilevel(entries, 1, 2)
    assert C.size == sum(s.size for s in C.strata)


def test_greedy_skeleton_distance():
    vs = greedy_skeleton(8, 3, 4)
    assert vs[0] == (1, 1, 1, 0, 0, 0, 0, 0)
    for a, b in itertools.combinations(vs, 2):
        assert hamming_distance(a, b) >= 4


def test_multilevel_code_small():
    C = multilevel_code(7, 4, 3, 2)
    rep = verify_exhaustive(C, threshold=10 ** 5)
    assert rep.certified_min_distance >= 4
    with pytest.raises(ValueError):
        multilevel_code(7, 3, 3, 2)
