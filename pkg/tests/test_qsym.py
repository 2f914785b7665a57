from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations, product

import pytest
from hypothesis import given, settings, strategies as st

from qsympeaks.combinatorics import IndexSet, all_subsets, composition_from_subset, compositions, descent_set
from qsympeaks.qsym import (
    L_in_eta_basis,
    QSymElement,
    TruncatedPolynomial,
    coproduct_check,
    coshuffle_sum,
    eta,
    expand_eta_combination,
    fundamental_L,
    monomial,
    product_rule_check,
    realize,
    symbolic_q,
    universal_U,
    universal_U_perm,
)
from qsympeaks.scalars import rho

q = symbolic_q()
M = QSymElement.monomial


def S(n, *members):
    return IndexSet.of(n, members)


def realize_brute(f: QSymElement, k: int) -> TruncatedPolynomial:
    # sum over strictly increasing index tuples, written out independently of qsym.realize
    terms = {}
    for alpha, c in f.terms.items():
        for idx in product(range(k), repeat=len(alpha)):
            if all(a < b for a, b in zip(idx, idx[1:])):
                e = [0] * k
                for i, a in zip(idx, alpha):
                    e[i] += a
                e = tuple(e)
                terms[e] = terms[e] + c if e in terms else c
    return TruncatedPolynomial(k, terms)


def gessel_fundamental(n: int, subset: IndexSet, k: int) -> TruncatedPolynomial:
    terms = {}
    for seq in combinations_with_replacement(range(k), n):
        if all(seq[j - 1] < seq[j] for j in subset):
            e = [0] * k
            for i in seq:
                e[i] += 1
            terms[tuple(e)] = terms.get(tuple(e), 0) + 1
    return TruncatedPolynomial(k, terms)


def test_monomial_basics():
    assert monomial((2, 1)).terms == {(2, 1): 1}
    assert M((1,)) + M((1,)) == M((1,), 2)
    f = M((1, 2), q) + M((3,))
    assert f * QSymElement.one() == f


def test_quasi_shuffle_examples():
    assert M((1,)) * M((1,)) == M((1, 1), 2) + M((2,))
    assert M((1,)) * M((2,)) == M((1, 2)) + M((2, 1)) + M((3,))


def test_quasi_shuffle_matches_realisation():
    comps = [c for s in range(1, 4) for c in compositions(s)]
    for a, b in product(comps, repeat=2):
        k = len(a) + len(b)
        lhs = realize(M(a) * M(b), k)
        assert lhs == realize_brute(M(a), k) * realize_brute(M(b), k)


def test_realize_examples_and_brute_force():
    assert realize(M((2,)), 2) == TruncatedPolynomial(2, {(2, 0): 1, (0, 2): 1})
    assert realize(M((1, 1)), 2) == TruncatedPolynomial(2, {(1, 1): 1})
    f = fundamental_L(3, [2], q)
    for k in range(1, 5):
        assert realize(f, k) == realize_brute(f, k)


def test_universal_U_examples():
    assert universal_U([], (1, 1), q) == M((1, 1), (q + 1) ** 2) + M((2,), q + 1)
    expected = M((1, 1, 1), (q + 1) ** 3) + M((2, 1), (q + 1) ** 2) + M((1, 2), q * (q + 1) ** 2)
    assert universal_U([2], (1, 1, 1), q) == expected
    assert universal_U([1], (1, 1), Fraction(0)) == M((1, 1))


def test_eta_examples():
    assert eta(2, [], q) == M((1, 1), (q + 1) ** 2) + M((2,), q + 1)
    assert eta(2, [1], q) == M((2,), q + 1)
    for s in range(1, 6):
        for sub in all_subsets(s):
            f = eta(s, sub, Fraction(0))
            assert f and all(c == 1 for c in f.terms.values())


def test_eta_triangularity():
    # eta_{s,I} only meets M_alpha whose merged positions contain I
    for s in range(1, 7):
        for sub in all_subsets(s):
            f = eta(s, sub, q)
            leading = f.coefficient(_composition(s, sub))
            assert leading == (q + 1) ** (s - len(sub))
            for alpha in f.terms:
                merged = _merge_mask(s, alpha)
                assert sub.mask & ~merged == 0


def _composition(s, sub):
    # leading term merges exactly the positions in I
    cuts = [j for j in range(1, s) if j not in sub]
    return composition_from_subset(s, cuts)


def _merge_mask(s, alpha):
    # positions j in [s-1] where x_j and x_{j+1} were merged
    cuts, acc = set(), 0
    for a in alpha[:-1]:
        acc += a
        cuts.add(acc)
    return sum(1 << (j - 1) for j in range(1, s) if j not in cuts)


def test_fundamental_gessel_at_q_zero():
    assert fundamental_L(2, [1], Fraction(0)) == M((1, 1))
    for n in range(1, 6):
        for sub in all_subsets(n):
            f = fundamental_L(n, sub, Fraction(0))
            for k in range(1, 4):
                assert realize(f, k) == gessel_fundamental(n, sub, k)


def test_L_in_eta_basis_examples():
    assert L_in_eta_basis(3, [2], q) == {S(3): 1, S(3, 2): q - 1, S(3, 1, 2): -q}
    assert L_in_eta_basis(4, [1, 2], q) == {S(4): 1, S(4, 1): q - 1, S(4, 2): q - 1, S(4, 1, 2): (q - 1) ** 2}
    assert L_in_eta_basis(4, [1, 3], q) == {
        S(4): 1, S(4, 1): q - 1, S(4, 3): q - 1, S(4, 1, 3): (q - 1) ** 2,
        S(4, 2, 3): -q, S(4, 1, 2, 3): -q * (q - 1),
    }


def test_eta_expansion_reproduces_L():
    for n in range(1, 7):
        for sub in all_subsets(n):
            assert expand_eta_combination(n, L_in_eta_basis(n, sub, q), q) == fundamental_L(n, sub, q)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2 ** (n - 1) - 1))),
       st.integers(1, 5))
def test_specialisation_commutes_with_construction(n_mask, p):
    n, mask = n_mask
    sub = IndexSet(n, mask)
    assert fundamental_L(n, sub, q).specialize(rho(p)) == fundamental_L(n, sub, rho(p))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.permutations(range(1, n + 1)),
                                                     st.lists(st.integers(1, 3), min_size=n, max_size=n))),
       st.integers(2, 4))
def test_realisation_is_quasisymmetric(pi_alpha, k):
    pi, alpha = pi_alpha
    f = realize(universal_U_perm(pi, alpha, q), k)
    # quasisymmetry: coefficient of x^a depends only on the nonzero exponents in order
    by_pattern = {}
    for e, c in f.terms.items():
        key = tuple(x for x in e if x)
        assert by_pattern.setdefault(key, c) == c
    for key, c in by_pattern.items():
        for pos in _placements(len(key), k):
            e = [0] * k
            for i, x in zip(pos, key):
                e[i] = x
            assert f.coefficient(e) == c


def _placements(length, k):
    return combinations(range(k), length)


def test_product_rule_examples():
    assert product_rule_check((1,), (1,), (1,), (1,), q)
    U1 = universal_U_perm((1,), (1,), q)
    assert U1 * U1 == universal_U_perm((1, 2), (1, 1), q) + universal_U_perm((2, 1), (1, 1), q)
    lhs = fundamental_L(1, [], q) * fundamental_L(2, [1], q)
    assert lhs == coshuffle_sum((1,), (1,), (2, 1), (1, 1), q)


def test_coproduct_examples():
    f = universal_U_perm((1,), (2,), q)
    assert set(f.coproduct()) == {((), (2,)), ((2,), ())}
    for pi in permutations(range(1, 4)):
        assert coproduct_check(pi, (1, 1, 1), q)


def test_only_descent_set_matters():
    for pi in permutations(range(1, 5)):
        assert universal_U_perm(pi, (1, 2, 1, 1), q) == universal_U(descent_set(pi), (1, 2, 1, 1), q)


def test_json_shape():
    doc = (M((2, 1), 3) + M((3,), q)).to_json()
    assert doc["basis"] == "M" and doc["degree"] == 3
    assert [t["composition"] for t in doc["terms"]] == sorted(t["composition"] for t in doc["terms"])


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        universal_U([1], (1, 0))
    with pytest.raises(ValueError):
        universal_U_perm((1, 2), (1,))
