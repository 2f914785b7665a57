import json
from fractions import Fraction

import pytest

from qsympeaks.combinatorics import IndexSet
from qsympeaks.qsym import eta, fundamental_L, symbolic_q
from qsympeaks.scalars import XYPolynomial
from qsympeaks.theorems import (
    VerificationReport,
    alternating_sum,
    check_vanishing_hypotheses,
    product_closure_cases,
    rank_at_rho,
    run_suite,
    suite_binom,
    suite_coproduct,
    valid_vanishing_parameters,
    verify_binom_lemma,
    verify_dimension,
    verify_product_closure,
    verify_spanning_set,
    verify_symbolic_vanishing_identity,
    verify_vanishing,
)

q = symbolic_q()


def S(n, *members):
    return IndexSet.of(n, members)


def test_smallest_vanishing_case():
    assert fundamental_L(2, [], 1) == fundamental_L(2, [1], 1)
    assert verify_vanishing(2, 1, 0, [])
    assert not verify_vanishing(2, 1, 0, [], Fraction(2))
    assert alternating_sum(2, 1, 0, S(2), q) == eta(2, [1], q).scale(1 - q)
    assert verify_symbolic_vanishing_identity(2, 1, 0, [])


def test_vanishing_hypotheses():
    with pytest.raises(ValueError):
        check_vanishing_hypotheses(2, 2, 0, S(2))
    with pytest.raises(ValueError):
        check_vanishing_hypotheses(5, 1, 1, S(5))  # i must lie in J
    with pytest.raises(ValueError):
        check_vanishing_hypotheses(5, 1, 0, S(5, 2))  # J meets [1, 2]


def test_valid_parameters_are_valid():
    for n in range(2, 7):
        for p in range(1, n):
            for i, J in valid_vanishing_parameters(n, p):
                check_vanishing_hypotheses(n, p, i, J)


def test_dimension_examples():
    assert [rank_at_rho(n, 1) for n in range(1, 10)] == [1, 1, 2, 3, 5, 8, 13, 21, 34]
    assert [rank_at_rho(n, 2) for n in range(1, 9)] == [1, 2, 3, 6, 11, 20, 37, 68]
    for p in range(1, 5):
        for n in range(1, p + 1):
            assert rank_at_rho(n, p) == 2 ** (n - 1)
    assert verify_dimension(6, 3)


def test_spanning_sets():
    assert verify_spanning_set(4, 1)
    assert verify_spanning_set(4, 2)
    assert verify_spanning_set(3, 5)


def test_product_closure():
    assert verify_product_closure(1, [(1, S(1), 1, S(1))])
    assert verify_product_closure(1, product_closure_cases(1, 4))
    assert verify_product_closure(2, product_closure_cases(2, 3))


def test_binom_lemma():
    x, y = XYPolynomial.x(), XYPolynomial.y()
    assert ((x + y) ** 2 - x * y).evaluate(1, 1) == 3
    assert verify_binom_lemma(15)
    assert suite_binom(3).passed


def test_report_json_is_deterministic():
    a = json.dumps(suite_coproduct(3).to_json(), sort_keys=True)
    b = json.dumps(suite_coproduct(3).to_json(), sort_keys=True)
    assert a == b


def test_discrepancies_do_not_fail_a_report():
    rep = VerificationReport("demo", {})
    rep.add("ok", True)
    rep.add_discrepancy("known", "documented")
    assert rep.passed and rep.counts()["discrepancy"] == 1
    rep.add("broken", False, n=3)
    assert not rep.passed and rep.failures()[0].params == {"n": 3}


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope", 3, 2)
