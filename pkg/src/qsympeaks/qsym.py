"""Quasisymmetric functions in the monomial basis.

Every element is a finite map composition -> coefficient; the other bases
(universal U, enriched q-monomials eta, q-fundamentals L) are expansion
functions into it.  The coefficient ring is whatever ``q`` lives in: pass a
:class:`~qsympeaks.scalars.QPolynomial` (the default, symbolic q), a
``Fraction`` or a :class:`~qsympeaks.scalars.CyclotomicNumber`.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .combinatorics import (
    Composition,
    IndexSet,
    all_subsets,
    as_index_set,
    check_composition,
    collapse,
    composition_from_subset,
    coshuffles,
    descent_set,
    peak_set_of_subset,
    standardize,
)
from .scalars import QPolynomial, scalar_str, scalar_to_json


def _is_zero(c) -> bool:
    return not c


class QSymElement:
    """Finite sum of monomial quasisymmetric functions M_alpha."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Composition, object] | None = None):
        self.terms = {
            tuple(k): v for k, v in sorted((terms or {}).items()) if not _is_zero(v)
        }

    @classmethod
    def monomial(cls, alpha: Sequence[int], coeff=1) -> "QSymElement":
        return cls({check_composition(alpha): coeff})

    @classmethod
    def one(cls, coeff=1) -> "QSymElement":
        return cls({(): coeff})

    # -- vector space structure ----------------------------------------------

    def __add__(self, other: "QSymElement") -> "QSymElement":
        if not isinstance(other, QSymElement):
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return QSymElement(out)

    def __neg__(self) -> "QSymElement":
        return QSymElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "QSymElement") -> "QSymElement":
        return self + (-other)

    def scale(self, c) -> "QSymElement":
        return QSymElement({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, QSymElement):
            return quasi_shuffle_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, QSymElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, alpha: Sequence[int]):
        return self.terms.get(tuple(alpha), 0)

    def degrees(self) -> set[int]:
        return {sum(k) for k in self.terms}

    def degree(self) -> int | None:
        """The common degree of a homogeneous element (None for zero or mixed)."""
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    def map_coefficients(self, fn: Callable) -> "QSymElement":
        return QSymElement({k: fn(v) for k, v in self.terms.items()})

    def specialize(self, value) -> "QSymElement":
        """Push symbolic-q coefficients through the evaluation map q -> value."""
        return self.map_coefficients(
            lambda c: c.evaluate(value) if isinstance(c, QPolynomial) else c
        )

    def coproduct(self) -> dict[tuple[Composition, Composition], object]:
        """Deconcatenation: Delta M_gamma = sum of M_prefix (x) M_suffix."""
        out: dict = {}
        for gamma, c in self.terms.items():
            for i in range(len(gamma) + 1):
                key = (gamma[:i], gamma[i:])
                out[key] = out[key] + c if key in out else c
        return {k: v for k, v in out.items() if not _is_zero(v)}

    def realize(self, k: int) -> "TruncatedPolynomial":
        return realize(self, k)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({scalar_str(c)})*M{list(a)}" for a, c in self.terms.items())

    def to_json(self) -> dict:
        return {
            "basis": "M",
            "degree": self.degree(),
            "terms": [
                {"composition": list(a), "coeff": scalar_to_json(c)}
                for a, c in self.terms.items()
            ],
        }


class TruncatedPolynomial:
    """A polynomial in x_1..x_k, as {exponent vector: coefficient}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars or min(e, default=0) < 0:
                raise ValueError(f"bad exponent vector {e} for {nvars} variables")
            if not _is_zero(c):
                clean[tuple(e)] = c
        self.terms = dict(sorted(clean.items()))

    def __add__(self, other: "TruncatedPolynomial") -> "TruncatedPolynomial":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return TruncatedPolynomial(self.nvars, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "TruncatedPolynomial":
        return TruncatedPolynomial(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "TruncatedPolynomial") -> "TruncatedPolynomial":
        self._check(other)
        out: dict = {}
        for e, c in self.terms.items():
            for f, d in other.terms.items():
                key = tuple(a + b for a, b in zip(e, f))
                out[key] = out[key] + c * d if key in out else c * d
        return TruncatedPolynomial(self.nvars, out)

    def truncate_degree(self, max_degree: int) -> "TruncatedPolynomial":
        return TruncatedPolynomial(
            self.nvars, {e: c for e, c in self.terms.items() if sum(e) <= max_degree}
        )

    def restrict(self, k: int) -> "TruncatedPolynomial":
        """Set x_{k+1}, x_{k+2}, ... to zero."""
        return TruncatedPolynomial(
            k, {e[:k]: c for e, c in self.terms.items() if not any(e[k:])}
        )

    def coefficient(self, exponent: Sequence[int]):
        return self.terms.get(tuple(exponent), 0)

    def map_coefficients(self, fn: Callable) -> "TruncatedPolynomial":
        return TruncatedPolynomial(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def _check(self, other):
        if not isinstance(other, TruncatedPolynomial) or other.nvars != self.nvars:
            raise ValueError("polynomials in different numbers of variables")

    def __eq__(self, other):
        if isinstance(other, TruncatedPolynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"TruncatedPolynomial({self.nvars}, {len(self.terms)} terms)"

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [
                {"exponents": list(e), "coeff": scalar_to_json(c)}
                for e, c in self.terms.items()
            ],
        }


# -- the bases --------------------------------------------------------------------

def symbolic_q() -> QPolynomial:
    return QPolynomial.gen()


def _resolve_q(q):
    return symbolic_q() if q is None else q


def _power_list(x, top: int) -> list:
    out = [x**0]
    for _ in range(top):
        out.append(out[-1] * x)
    return out


def monomial(alpha: Sequence[int]) -> QSymElement:
    return QSymElement.monomial(alpha)


def universal_U(des: IndexSet | Iterable[int], alpha: Sequence[int], q=None) -> QSymElement:
    """U^(q) of the chain with descent set ``des`` and weights ``alpha``.

    Sum over equality patterns E in [n-1] (positions with i_j = i_{j+1})
    avoiding both j-1 and j in E for a peak j, of
    q^|E & des| (q+1)^(n-|E|) M_{collapse(alpha, E)}.
    """
    alpha = check_composition(alpha)
    q = _resolve_q(q)
    n = len(alpha)
    des = as_index_set(n, des)
    peaks = peak_set_of_subset(des).mask
    qpow = _power_list(q, n)
    q1pow = _power_list(q + 1, n)
    terms: dict = {}
    weights: dict[tuple[int, int], object] = {}
    for e in range(1 << max(n - 1, 0)):
        # a peak j forbids j-1 and j both in E
        if peaks & e & (e << 1):
            continue
        key = ((e & des.mask).bit_count(), n - e.bit_count())
        c = weights.get(key)
        if c is None:
            c = weights[key] = qpow[key[0]] * q1pow[key[1]]
        comp = collapse(alpha, e)
        terms[comp] = terms[comp] + c if comp in terms else c
    return QSymElement(terms)


def universal_U_perm(pi: Sequence[int], alpha: Sequence[int], q=None) -> QSymElement:
    """U^(q)_{pi, alpha}; only the descent set of pi matters."""
    if len(pi) != len(alpha):
        raise ValueError("permutation and composition lengths disagree")
    return universal_U(descent_set(pi), alpha, q)


def eta(s: int, subset: IndexSet | Iterable[int], q=None) -> QSymElement:
    """Enriched q-monomial eta^(q)_{s, I} = sum over E >= I of (q+1)^(s-|E|) M_{collapse(1^s, E)}."""
    q = _resolve_q(q)
    subset = as_index_set(s, subset)
    q1pow = _power_list(q + 1, s)
    ones = (1,) * s
    free = ((1 << max(s - 1, 0)) - 1) & ~subset.mask
    terms = {}
    sub = free
    while True:
        e = subset.mask | sub
        terms[collapse(ones, e)] = q1pow[s - e.bit_count()]
        if sub == 0:
            break
        sub = (sub - 1) & free
    return QSymElement(terms)


def eta_composition(alpha: Sequence[int], q=None) -> QSymElement:
    """eta^(q)_alpha = U^(q)_{id, alpha}."""
    alpha = check_composition(alpha)
    return universal_U(IndexSet(len(alpha)), alpha, q)


def fundamental_L(n: int, subset: IndexSet | Iterable[int], q=None) -> QSymElement:
    """q-fundamental L^(q)_{n, I} = U^(q) of a permutation with descent set I, unit weights."""
    return universal_U(as_index_set(n, subset), (1,) * n, q)


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def L_in_eta_basis(n: int, subset: IndexSet | Iterable[int], q=None) -> dict[IndexSet, object]:
    """Coefficients of L^(q)_{n,I} on the eta^(q)_{n,J}.

    Sum over J <= I, K <= Peak(I), J & K empty, of (-q)^|K| (q-1)^|J| at the
    index J | (K-1) | K.
    """
    q = _resolve_q(q)
    subset = as_index_set(n, subset)
    peaks = peak_set_of_subset(subset).mask
    mq = _power_list(-q, n)
    qm1 = _power_list(q - 1, n)
    out: dict[int, object] = {}
    for k in _submasks(peaks):
        for j in _submasks(subset.mask & ~k):
            idx = j | k | (k >> 1)
            c = mq[k.bit_count()] * qm1[j.bit_count()]
            out[idx] = out[idx] + c if idx in out else c
    return {IndexSet(n, m): c for m, c in sorted(out.items()) if not _is_zero(c)}


def expand_eta_combination(n: int, coeffs: Mapping[IndexSet, object], q=None) -> QSymElement:
    """Monomial expansion of sum_J coeffs[J] * eta^(q)_{n, J}."""
    total = QSymElement()
    for subset, c in coeffs.items():
        total = total + eta(n, subset, q).scale(c)
    return total


# -- products and coproducts -----------------------------------------------------

@lru_cache(maxsize=None)
def quasi_shuffle(a: Composition, b: Composition) -> Counter:
    """Overlapping shuffles of two compositions, with multiplicities."""
    if not a:
        return Counter({b: 1})
    if not b:
        return Counter({a: 1})
    out: Counter = Counter()
    for w, c in quasi_shuffle(a[1:], b).items():
        out[(a[0],) + w] += c
    for w, c in quasi_shuffle(a, b[1:]).items():
        out[(b[0],) + w] += c
    for w, c in quasi_shuffle(a[1:], b[1:]).items():
        out[(a[0] + b[0],) + w] += c
    return out


def quasi_shuffle_product(f: QSymElement, g: QSymElement) -> QSymElement:
    out: dict = {}
    for a, c in f.terms.items():
        for b, d in g.terms.items():
            cd = c * d
            for w, mult in quasi_shuffle(a, b).items():
                term = cd * mult
                out[w] = out[w] + term if w in out else term
    return QSymElement(out)


def realize(f: QSymElement, k: int) -> TruncatedPolynomial:
    """Truncate f to the variables x_1, ..., x_k."""
    if k < 1:
        raise ValueError(f"need at least one variable, got {k}")
    out: dict = {}
    for alpha, c in f.terms.items():
        for idx in combinations(range(k), len(alpha)):
            e = [0] * k
            for i, a in zip(idx, alpha):
                e[i] = a
            e = tuple(e)
            out[e] = out[e] + c if e in out else c
    return TruncatedPolynomial(k, out)


def coshuffle_sum(pi, alpha, sigma, beta, q=None) -> QSymElement:
    total = QSymElement()
    for tau, gamma in coshuffles(pi, alpha, sigma, beta):
        total = total + universal_U_perm(tau, gamma, q)
    return total


def product_rule_check(pi, alpha, sigma, beta, q=None) -> bool:
    """U_{pi,alpha} * U_{sigma,beta} == sum of U over the coshuffle."""
    lhs = universal_U_perm(pi, alpha, q) * universal_U_perm(sigma, beta, q)
    return lhs == coshuffle_sum(pi, alpha, sigma, beta, q)


def tensor_add(acc: dict, f: QSymElement, g: QSymElement) -> None:
    for a, c in f.terms.items():
        for b, d in g.terms.items():
            key = (a, b)
            acc[key] = acc[key] + c * d if key in acc else c * d


def split_coproduct(pi: Sequence[int], alpha: Sequence[int], q=None) -> dict:
    """sum_i U_{std(pi_1..pi_i), alpha_1..i} (x) U_{std(pi_i+1..pi_n), alpha_i+1..n}."""
    pi, alpha = tuple(pi), tuple(alpha)
    acc: dict = {}
    for i in range(len(pi) + 1):
        left = universal_U_perm(standardize(pi[:i]), alpha[:i], q) if i else QSymElement.one()
        right = (
            universal_U_perm(standardize(pi[i:]), alpha[i:], q)
            if i < len(pi) else QSymElement.one()
        )
        tensor_add(acc, left, right)
    return {k: v for k, v in acc.items() if not _is_zero(v)}


def coproduct_check(pi: Sequence[int], alpha: Sequence[int], q=None) -> bool:
    return split_coproduct(pi, alpha, q) == universal_U_perm(pi, alpha, q).coproduct()


def counit(f: QSymElement):
    """Coefficient of the empty composition."""
    return f.terms.get((), 0)


def all_eta_columns(n: int, q=None) -> list[QSymElement]:
    return [eta(n, s, q) for s in all_subsets(n)]
