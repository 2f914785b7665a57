"""Subsets, compositions, permutations and the descent/peak family of statistics.

Subsets of [n-1] are :class:`IndexSet` values backed by a bitmask
(element i <-> bit i-1).  Compositions and permutations are plain tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

Composition = tuple[int, ...]
Permutation = tuple[int, ...]


@dataclass(frozen=True, order=False)
class IndexSet:
    """A subset of [1, n-1] remembered together with its ambient size n."""

    n: int
    mask: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"ambient size must be nonnegative, got {self.n}")
        if self.mask < 0 or self.mask >> max(self.n - 1, 0):
            raise ValueError(f"mask {self.mask:b} does not fit in [1, {self.n - 1}]")

    @classmethod
    def of(cls, n: int, members: Iterable[int] = ()) -> "IndexSet":
        mask = 0
        for m in members:
            if not 1 <= m <= n - 1:
                raise ValueError(f"{m} is not in [1, {n - 1}]")
            mask |= 1 << (m - 1)
        return cls(n, mask)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n - 1) if self.mask >> i & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, i: int) -> bool:
        return 1 <= i <= self.n - 1 and bool(self.mask >> (i - 1) & 1)

    def __lt__(self, other: "IndexSet") -> bool:
        return (self.n, self.mask) < (other.n, other.mask)

    def __or__(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(self.n, self.mask | _mask_of(other))

    def __and__(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(self.n, self.mask & _mask_of(other))

    def __sub__(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(self.n, self.mask & ~_mask_of(other))

    def issubset(self, other) -> bool:
        return self.mask & ~_mask_of(other) == 0

    def max(self) -> int:
        """Largest member, with max of the empty set taken to be 0."""
        return self.mask.bit_length()

    def __repr__(self) -> str:
        return f"IndexSet({self.n}, {set(self.members) or '{}'})"

    def __str__(self) -> str:
        # decreasing order, the way row/column headers are usually written
        return "{" + ",".join(str(i) for i in reversed(self.members)) + "}"


def _mask_of(s) -> int:
    if isinstance(s, IndexSet):
        return s.mask
    mask = 0
    for m in s:
        mask |= 1 << (m - 1)
    return mask


def as_index_set(n: int, s) -> IndexSet:
    if isinstance(s, IndexSet):
        if s.n != n:
            raise ValueError(f"index set lives in [{s.n - 1}], expected [{n - 1}]")
        return s
    return IndexSet.of(n, s)


def all_subsets(n: int) -> list[IndexSet]:
    """All subsets of [n-1] in reverse-lex order (ascending bitmask)."""
    return [IndexSet(n, mask) for mask in range(1 << max(n - 1, 0))]


# -- permutation statistics ----------------------------------------------------

def check_permutation(pi: Sequence[int]) -> Permutation:
    pi = tuple(pi)
    if sorted(pi) != list(range(1, len(pi) + 1)):
        raise ValueError(f"{pi} is not a permutation of [1, {len(pi)}]")
    return pi


def descent_set(pi: Sequence[int]) -> IndexSet:
    n = len(pi)
    return IndexSet.of(n, [i for i in range(1, n) if pi[i - 1] > pi[i]])


def peak_set(pi: Sequence[int]) -> IndexSet:
    n = len(pi)
    return IndexSet.of(
        n, [i for i in range(2, n) if pi[i - 2] < pi[i - 1] > pi[i]]
    )


def extended_peak_statistic(pi: Sequence[int], p: int) -> IndexSet:
    """Descents i with i <= p-1, or with some i-j (1 <= j <= p, i-j >= 1) not a descent."""
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    des = descent_set(pi)
    keep = [
        i for i in des
        if i <= p - 1 or any(i - j >= 1 and i - j not in des for j in range(1, p + 1))
    ]
    return IndexSet.of(len(pi), keep)


def runs(members: Iterable[int]) -> list[tuple[int, int]]:
    """Maximal runs of consecutive integers as (start, end) pairs."""
    out: list[list[int]] = []
    for m in sorted(members):
        if out and out[-1][1] == m - 1:
            out[-1][1] = m
        else:
            out.append([m, m])
    return [(a, b) for a, b in out]


def is_extended_peak_set(s: IndexSet | Iterable[int], p: int) -> bool:
    """True iff s | {0} has no run of more than p consecutive integers."""
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    members = list(s) + [0]
    return all(b - a + 1 <= p for a, b in runs(members))


def enumerate_extended_peak_sets(n: int, p: int) -> list[IndexSet]:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return [s for s in all_subsets(n) if is_extended_peak_set(s, p)]


def count_extended_peak_sets(n: int, p: int) -> int:
    """s^(p)_n from the run-length recurrence, with s^(p)_0 = 0."""
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    s = [0]
    for k in range(1, n + 1):
        if k <= p:
            s.append(2 ** (k - 1))
        else:
            s.append(sum(s[k - j] for j in range(1, p + 2) if k - j >= 0))
    return s[n]


def peak_set_of_subset(s: IndexSet) -> IndexSet:
    """Members i >= 2 of s whose predecessor i-1 is not in s.

    On descent sets this agrees with :func:`peak_set`.
    """
    mask = s.mask & ~(s.mask << 1) & ~1
    return IndexSet(s.n, mask & ((1 << max(s.n - 1, 0)) - 1))


def anchored_lacunar_subsets(p: int) -> list[frozenset[int]]:
    """Subsets V of [1, p] such that V | {0} has no two consecutive integers."""
    return [
        frozenset(c)
        for v in range(p + 1)
        for c in combinations(range(1, p + 1), v)
        if is_extended_peak_set(c, 1)
    ]


def count_lacunar_subsets(p: int, v: int) -> int:
    """Number of anchored lacunar subsets of an interval of length p with v elements."""
    if p < 0 or v < 0:
        raise ValueError("p and v must be nonnegative")
    return comb(p - v, v) if p - v >= v else 0


# -- compositions ----------------------------------------------------------------

def check_composition(alpha: Sequence[int]) -> Composition:
    alpha = tuple(alpha)
    if any(not isinstance(a, int) or a < 1 for a in alpha):
        raise ValueError(f"{alpha} has a non-positive part")
    return alpha


def composition_from_subset(s: int, subset: IndexSet | Iterable[int]) -> Composition:
    """{d_1 < ... < d_k} in [s-1]  ->  (d_1, d_2 - d_1, ..., s - d_k)."""
    members = sorted(subset)
    if any(not 1 <= d <= s - 1 for d in members):
        raise ValueError(f"{members} is not a subset of [1, {s - 1}]")
    cuts = [0] + members + [s]
    return tuple(b - a for a, b in zip(cuts, cuts[1:]))


def subset_from_composition(alpha: Sequence[int]) -> IndexSet:
    alpha = check_composition(alpha)
    partial, members = 0, []
    for a in alpha[:-1]:
        partial += a
        members.append(partial)
    return IndexSet.of(sum(alpha), members)


def compositions(s: int) -> list[Composition]:
    """All compositions of s, in the order of their subsets' bitmasks."""
    if s == 0:
        return [()]
    return [composition_from_subset(s, sub) for sub in all_subsets(s)]


def collapse(alpha: Sequence[int], merge_mask: int) -> Composition:
    """Sum the parts of alpha across every gap j (bit j-1 set) in merge_mask."""
    if not alpha:
        return ()
    out = [alpha[0]]
    for j in range(1, len(alpha)):
        if merge_mask >> (j - 1) & 1:
            out[-1] += alpha[j]
        else:
            out.append(alpha[j])
    return tuple(out)


# -- permutations ----------------------------------------------------------------

def canonical_permutation_with_descents(n: int, s: IndexSet | Iterable[int]) -> Permutation:
    """A permutation whose descent set is exactly s.

    [n] is cut into blocks after each member of s; blocks are filled left to
    right with the largest values still unused, each block increasing.
    """
    members = sorted(s)
    if any(not 1 <= d <= n - 1 for d in members):
        raise ValueError(f"{members} is not a subset of [1, {n - 1}]")
    cuts = [0] + members + [n]
    word: list[int] = []
    top = n
    for a, b in zip(cuts, cuts[1:]):
        size = b - a
        word.extend(range(top - size + 1, top + 1))
        top -= size
    return tuple(word)


def standardize(word: Sequence[int]) -> Permutation:
    if len(set(word)) != len(word):
        raise ValueError(f"{word} has repeated entries")
    rank = {v: r for r, v in enumerate(sorted(word), start=1)}
    return tuple(rank[v] for v in word)


def coshuffles(
    pi: Sequence[int], alpha: Sequence[int], sigma: Sequence[int], beta: Sequence[int]
) -> list[tuple[Permutation, Composition]]:
    """Shuffles of (pi, alpha) with (n + sigma, beta), using one interleaving for both."""
    if len(pi) != len(alpha) or len(sigma) != len(beta):
        raise ValueError("permutation and composition lengths disagree")
    n, m = len(pi), len(sigma)
    shifted = [n + s for s in sigma]
    out = []
    for positions in combinations(range(n + m), n):
        chosen = set(positions)
        tau, gamma = [], []
        i = j = 0
        for k in range(n + m):
            if k in chosen:
                tau.append(pi[i])
                gamma.append(alpha[i])
                i += 1
            else:
                tau.append(shifted[j])
                gamma.append(beta[j])
                j += 1
        out.append((tuple(tau), tuple(gamma)))
    return out
