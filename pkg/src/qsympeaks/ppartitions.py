"""Brute-force enriched P-partitions and their q-weighted generating functions.

This is the oracle side: it enumerates assignments into the signed alphabet
-1 < 1 < -2 < 2 < ... directly, with no cleverness beyond pruning along a
linear extension.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations
from pathlib import Path
from typing import Mapping, Sequence

from .combinatorics import check_composition, check_permutation
from .qsym import TruncatedPolynomial, symbolic_q


@dataclass(frozen=True, order=True)
class SignedValue:
    """An element of the signed alphabet; ordering is (magnitude, sign) with - before +."""

    magnitude: int
    positive: bool

    def __post_init__(self):
        if self.magnitude < 1:
            raise ValueError("magnitude must be positive")

    @classmethod
    def from_int(cls, v: int) -> "SignedValue":
        return cls(abs(v), v > 0)

    def __int__(self):
        return self.magnitude if self.positive else -self.magnitude

    def __repr__(self):
        return f"{'' if self.positive else '-'}{self.magnitude}"


def signed_alphabet(N: int) -> list[SignedValue]:
    return [SignedValue(m, s) for m in range(1, N + 1) for s in (False, True)]


@dataclass(frozen=True)
class LabelledWeightedPoset:
    """Vertices 1..n, cover pairs (i, j) meaning i <_P j, weights eps(1..n)."""

    n: int
    covers: tuple[tuple[int, int], ...]
    weights: tuple[int, ...]
    less: frozenset[tuple[int, int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "covers", tuple(tuple(c) for c in self.covers))
        object.__setattr__(self, "weights", tuple(self.weights))
        if len(self.weights) != self.n or any(w < 1 for w in self.weights):
            raise ValueError("need one positive weight per vertex")
        for i, j in self.covers:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"cover ({i}, {j}) leaves [1, {self.n}]")
        closure = set(self.covers)
        changed = True
        while changed:
            changed = False
            for a, b in list(closure):
                for c, d in list(closure):
                    if b == c and (a, d) not in closure:
                        closure.add((a, d))
                        changed = True
        if any(a == b for a, b in closure):
            raise ValueError("cover relations contain a cycle")
        object.__setattr__(self, "less", frozenset(closure))

    def precedes(self, i: int, j: int) -> bool:
        return (i, j) in self.less

    @classmethod
    def from_json(cls, data: Mapping | str | Path) -> "LabelledWeightedPoset":
        if isinstance(data, (str, Path)):
            data = json.loads(Path(data).read_text())
        return cls(int(data["n"]), tuple(map(tuple, data["covers"])), tuple(data["weights"]))

    def to_json(self) -> dict:
        return {"n": self.n, "covers": [list(c) for c in self.covers], "weights": list(self.weights)}


# Five-vertex example poset with weights (1, 5, 2, 2, 2).
EXAMPLE_POSET = LabelledWeightedPoset(
    5, ((3, 2), (1, 2), (1, 4), (5, 3), (5, 1)), (1, 5, 2, 2, 2)
)


def chain_poset(pi: Sequence[int], alpha: Sequence[int]) -> LabelledWeightedPoset:
    """The chain pi_1 < pi_2 < ... with vertex pi_i weighted alpha_i."""
    pi = check_permutation(pi)
    alpha = check_composition(alpha)
    if len(pi) != len(alpha):
        raise ValueError("permutation and composition lengths disagree")
    weights = [0] * len(pi)
    for v, a in zip(pi, alpha):
        weights[v - 1] = a
    return LabelledWeightedPoset(len(pi), tuple(zip(pi, pi[1:])), tuple(weights))


def linear_extensions(P: LabelledWeightedPoset) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def extend(prefix: list[int], remaining: set[int]):
        if not remaining:
            out.append(tuple(prefix))
            return
        for v in sorted(remaining):
            if not any(P.precedes(u, v) for u in remaining if u != v):
                prefix.append(v)
                remaining.discard(v)
                extend(prefix, remaining)
                remaining.add(v)
                prefix.pop()

    extend([], set(range(1, P.n + 1)))
    return out


def _compatible(i: int, j: int, fi: SignedValue, fj: SignedValue) -> bool:
    """Condition for a related pair i <_P j."""
    if fi < fj:
        return True
    if fi == fj:
        return fi.positive if i < j else not fi.positive
    return False


def is_enriched_ppartition(P: LabelledWeightedPoset, f: Mapping[int, SignedValue | int]) -> bool:
    vals = {v: x if isinstance(x, SignedValue) else SignedValue.from_int(x) for v, x in f.items()}
    if set(vals) != set(range(1, P.n + 1)):
        raise ValueError("f must be defined on every vertex")
    return all(_compatible(i, j, vals[i], vals[j]) for i, j in P.less)


def enriched_ppartitions(P: LabelledWeightedPoset, N: int):
    """Yield every enriched P-partition with values in {+-1, ..., +-N}, as dicts."""
    order = linear_extensions(P)[0] if P.n else ()
    alphabet = signed_alphabet(N)
    f: dict[int, SignedValue] = {}

    def assign(k: int):
        if k == len(order):
            yield dict(f)
            return
        v = order[k]
        for x in alphabet:
            ok = True
            for u in order[:k]:
                if P.precedes(u, v) and not _compatible(u, v, f[u], x):
                    ok = False
                    break
            if ok:
                f[v] = x
                yield from assign(k + 1)
                del f[v]

    yield from assign(0)


def gamma_q(P: LabelledWeightedPoset, N: int, q=None) -> TruncatedPolynomial:
    """Generating function of enriched P-partitions, truncated to x_1..x_N.

    Each f contributes prod_i q^[f(i) < 0] x_{|f(i)|}^eps(i).
    """
    if N < 1:
        raise ValueError("need at least one variable")
    q = symbolic_q() if q is None else q
    counts: dict[tuple, int] = {}
    for f in enriched_ppartitions(P, N):
        e = [0] * N
        negatives = 0
        for v, x in f.items():
            e[x.magnitude - 1] += P.weights[v - 1]
            negatives += not x.positive
        key = (tuple(e), negatives)
        counts[key] = counts.get(key, 0) + 1
    qpow = [q**0]
    for _ in range(P.n):
        qpow.append(qpow[-1] * q)
    terms: dict = {}
    for (e, k), c in counts.items():
        term = qpow[k] * c
        terms[e] = terms[e] + term if e in terms else term
    return TruncatedPolynomial(N, terms)


def disjoint_union(P: LabelledWeightedPoset, Q: LabelledWeightedPoset) -> LabelledWeightedPoset:
    """P on labels 1..n, Q shifted to n+1..n+m, no relations between them."""
    n = P.n
    covers = P.covers + tuple((a + n, b + n) for a, b in Q.covers)
    return LabelledWeightedPoset(n + Q.n, covers, P.weights + Q.weights)


def all_permutations(n: int) -> list[tuple[int, ...]]:
    return list(permutations(range(1, n + 1)))
