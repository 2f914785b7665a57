from itertools import combinations, permutations

import pytest
from hypothesis import given, strategies as st

from qsympeaks.combinatorics import (
    IndexSet,
    all_subsets,
    anchored_lacunar_subsets,
    canonical_permutation_with_descents,
    composition_from_subset,
    coshuffles,
    count_extended_peak_sets,
    count_lacunar_subsets,
    descent_set,
    enumerate_extended_peak_sets,
    extended_peak_statistic,
    is_extended_peak_set,
    peak_set,
    peak_set_of_subset,
    standardize,
    subset_from_composition,
)

PI = (5, 4, 1, 6, 3, 2, 8, 7)


def S(n, *members):
    return IndexSet.of(n, members)


def perms(max_n):
    return st.integers(1, max_n).flatmap(lambda n: st.permutations(list(range(1, n + 1))))


def test_descent_and_peak_of_worked_permutation():
    assert descent_set(PI) == S(8, 1, 2, 4, 5, 7)
    assert peak_set(PI) == S(8, 4, 7)


@pytest.mark.parametrize("p, expected", [(1, {4, 7}), (2, {1, 4, 5, 7}), (3, {1, 2, 4, 5, 7})])
def test_extended_peak_statistic_worked_permutation(p, expected):
    assert set(extended_peak_statistic(PI, p)) == expected


def test_trivial_statistics():
    assert descent_set((1, 2, 3, 4)) == S(4)
    assert descent_set((4, 3, 2, 1)) == S(4, 1, 2, 3)
    assert peak_set((1, 2, 3, 4)) == S(4)
    assert peak_set((1, 3, 2)) == S(3, 2)


def test_index_set_rejects_out_of_range():
    with pytest.raises(ValueError):
        IndexSet.of(4, [4])
    with pytest.raises(ValueError):
        IndexSet.of(4, [0])


@given(perms(9), st.integers(1, 6))
def test_statistic_sandwich(pi, p):
    des, pk, ext = descent_set(pi), peak_set(pi), extended_peak_statistic(pi, p)
    assert pk.issubset(ext) and ext.issubset(des)
    assert is_extended_peak_set(ext, p)
    assert extended_peak_statistic(pi, 1) == pk


def test_is_extended_peak_set_examples():
    assert is_extended_peak_set(S(9, 4, 8), 1)
    assert is_extended_peak_set(S(9, 1, 4, 5, 8), 2)
    assert is_extended_peak_set(S(9, 1, 2, 4, 5, 6, 8), 3)
    assert not is_extended_peak_set(S(9, 1, 2, 4, 5, 8), 2)
    for p in range(1, 5):
        assert is_extended_peak_set(S(5), p)


def test_enumeration_small_cases():
    assert enumerate_extended_peak_sets(4, 1) == [S(4), S(4, 2), S(4, 3)]
    assert enumerate_extended_peak_sets(2, 1) == [S(2)]
    assert enumerate_extended_peak_sets(1, 1) == [S(1)]
    assert enumerate_extended_peak_sets(3, 2) == [S(3), S(3, 1), S(3, 2)]


def _brute_count(n, p):
    # independent of the run helper: scan for p+1 consecutive members of I | {0}
    count = 0
    for k in range(n):
        for c in combinations(range(1, n), k):
            full = set(c) | {0}
            if not any(all(a + t in full for t in range(p + 1)) for a in full):
                count += 1
    return count


def test_count_recurrence_against_brute_force():
    assert [count_extended_peak_sets(n, 1) for n in range(1, 8)] == [1, 1, 2, 3, 5, 8, 13]
    assert count_extended_peak_sets(3, 2) == 3
    assert count_extended_peak_sets(3, 3) == 4
    assert count_extended_peak_sets(0, 2) == 0
    for p in range(1, 5):
        for n in range(1, 11):
            assert count_extended_peak_sets(n, p) == _brute_count(n, p)


def test_peak_set_of_subset_reading():
    assert peak_set_of_subset(S(4, 2)) == S(4, 2)
    assert peak_set_of_subset(S(4, 1, 2)) == S(4)
    assert peak_set_of_subset(S(4, 1, 3)) == S(4, 3)


def test_peak_of_descent_set_is_peak_set_exhaustive():
    for n in range(1, 8):
        for pi in permutations(range(1, n + 1)):
            assert peak_set_of_subset(descent_set(pi)) == peak_set(pi)


def test_lacunar_count_and_reading():
    assert count_lacunar_subsets(3, 1) == 2
    assert count_lacunar_subsets(0, 0) == 1
    assert count_lacunar_subsets(4, 2) == 1
    for p in range(0, 9):
        anchored = anchored_lacunar_subsets(p)
        internal = [
            c for v in range(p + 1) for c in combinations(range(1, p + 1), v)
            if all(b - a > 1 for a, b in zip(c, c[1:]))
        ]
        for v in range(p + 1):
            assert sum(len(s) == v for s in anchored) == count_lacunar_subsets(p, v)
        # the anchor-free reading overcounts as soon as p >= 1
        if p >= 1:
            assert sum(len(c) == 1 for c in internal) != count_lacunar_subsets(p, 1)


def test_subset_composition_bijection():
    assert composition_from_subset(4, [1, 3]) == (1, 2, 1)
    assert composition_from_subset(4, []) == (4,)
    assert composition_from_subset(3, [1, 2]) == (1, 1, 1)
    with pytest.raises(ValueError):
        composition_from_subset(3, [3])
    for s in range(1, 11):
        for sub in all_subsets(s):
            alpha = composition_from_subset(s, sub)
            assert sum(alpha) == s
            assert subset_from_composition(alpha) == sub


def test_canonical_permutation():
    assert canonical_permutation_with_descents(4, [2]) == (3, 4, 1, 2)
    assert canonical_permutation_with_descents(5, []) == (1, 2, 3, 4, 5)
    assert canonical_permutation_with_descents(5, [1, 2, 3, 4]) == (5, 4, 3, 2, 1)
    for n in range(1, 9):
        for sub in all_subsets(n):
            assert descent_set(canonical_permutation_with_descents(n, sub)) == sub


def test_standardize():
    assert standardize((5, 2, 6)) == (2, 1, 3)
    assert standardize(()) == ()
    assert standardize((4, 1)) == (2, 1)


def test_coshuffles():
    assert coshuffles((1,), (1,), (1,), (1,)) == [((1, 2), (1, 1)), ((2, 1), (1, 1))]
    assert coshuffles((), (), (2, 1), (3, 4)) == [((2, 1), (3, 4))]
    assert len(coshuffles((2, 1), (1, 1), (1, 2), (2, 2))) == 6


def test_reverse_lex_order_matches_mask_order():
    def key(s):
        return tuple(sorted(s.members, reverse=True))

    for n in range(1, 8):
        subs = all_subsets(n)
        assert subs == sorted(subs, key=key)
    assert [set(s) for s in all_subsets(3)] == [set(), {1}, {2}, {1, 2}]
