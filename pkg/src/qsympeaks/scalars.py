"""Exact coefficient rings.

Four kinds of scalars show up in the rest of the package:

* ``Fraction`` (stdlib) for the rationals,
* :class:`CyclotomicNumber`, elements of Q(zeta_m) stored as coefficient
  vectors in the power basis 1, zeta, ..., zeta^(phi(m)-1),
* :class:`QPolynomial`, univariate polynomials in the formal parameter q,
* :class:`XYPolynomial`, bivariate integer polynomials in x and y.

Everything is exact; there is no floating point anywhere in here.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational as _RationalABC
from typing import Iterable, Union

__all__ = [
    "Fraction",
    "CyclotomicNumber",
    "QPolynomial",
    "XYPolynomial",
    "cyclotomic_polynomial",
    "euler_phi",
    "rho",
    "q_integer",
    "scalar_to_json",
    "scalar_from_json",
    "scalar_str",
]


# -- integer polynomial helpers (coefficient lists, constant term first) -------

def _trim(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    """Long division; ``b`` must have a nonzero leading coefficient."""
    a = list(a)
    lead = b[-1]
    if len(a) < len(b):
        return [], _trim(a)
    quot = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1]
        if not c:
            continue
        if isinstance(c, int) and isinstance(lead, int) and c % lead == 0:
            c = c // lead
        else:
            c = Fraction(c) / lead
        quot[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
    return _trim(quot), _trim(a[: len(b) - 1])


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, constant term first.

    Obtained by dividing x^m - 1 by Phi_d for every proper divisor d of m.
    """
    if m < 1:
        raise ValueError(f"conductor must be positive, got {m}")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds zeta_m^k reduced modulo Phi_m, for 0 <= k < 2*phi(m) - 1 and k < m."""
    phi = cyclotomic_polynomial(m)
    d = len(phi) - 1
    rows = []
    cur = [1] + [0] * (d - 1)
    for _ in range(max(m, 2 * d - 1)):
        rows.append(tuple(cur))
        # multiply by zeta, then reduce the overflow using the monic Phi_m
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(d):
                cur[i] -= top * phi[i]
    return tuple(rows)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not a rational: {x!r}")


def _as_exact(x):
    """Like _as_fraction but keeps integral values as int (much faster arithmetic)."""
    if type(x) is int:
        return x
    x = _as_fraction(x)
    return x.numerator if x.denominator == 1 else x


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool) or isinstance(x, _RationalABC)


# -- cyclotomic fields -----------------------------------------------------------

class CyclotomicNumber:
    """An element of Q(zeta_m).

    Stored as integer numerators over one positive common denominator so that
    the hot loops in elimination avoid per-coefficient gcds.
    """

    __slots__ = ("conductor", "num", "den")

    def __init__(self, conductor: int, coeffs: Iterable = (), _raw: bool = False):
        self.conductor = conductor
        if _raw:
            self.num, self.den = coeffs
            return
        d = len(cyclotomic_polynomial(conductor)) - 1
        fr = [_as_fraction(c) for c in coeffs]
        if len(fr) > d:
            fr = _reduce_fraction_vector(conductor, fr)
        fr += [Fraction(0)] * (d - len(fr))
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        self.num, self.den = _normalize(tuple(int(c * den) for c in fr), den)

    @classmethod
    def _make(cls, m: int, num: tuple, den: int) -> "CyclotomicNumber":
        num, den = _normalize(num, den)
        return cls(m, (num, den), _raw=True)

    @classmethod
    def zeta(cls, m: int) -> "CyclotomicNumber":
        """The primitive root exp(2*pi*i/m) as an element of Q(zeta_m)."""
        return cls(m, _power_table(m)[1], _raw=False)

    @classmethod
    def from_rational(cls, m: int, value) -> "CyclotomicNumber":
        value = _as_fraction(value)
        d = len(cyclotomic_polynomial(m)) - 1
        return cls._make(m, (value.numerator,) + (0,) * (d - 1), value.denominator)

    @property
    def degree(self) -> int:
        return len(self.num)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.conductor != self.conductor:
                raise ValueError(
                    f"cannot combine conductors {self.conductor} and {other.conductor}"
                )
            return other
        if _is_rational(other):
            return CyclotomicNumber.from_rational(self.conductor, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.den, other.den
        num = tuple(x * b + y * a for x, y in zip(self.num, other.num))
        return CyclotomicNumber._make(self.conductor, num, a * b)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.conductor, (tuple(-x for x in self.num), self.den), _raw=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_rational(other):
            other = _as_fraction(other)
            num = tuple(x * other.numerator for x in self.num)
            return CyclotomicNumber._make(self.conductor, num, self.den * other.denominator)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        num = _mul_mod(self.conductor, self.num, other.num)
        return CyclotomicNumber._make(self.conductor, num, self.den * other.den)

    __rmul__ = __mul__

    def conjugate_by(self, k: int) -> "CyclotomicNumber":
        """Image under the automorphism zeta -> zeta^k (k coprime to m)."""
        m = self.conductor
        table = _power_table(m)
        d = len(self.num)
        out = [0] * d
        for i, c in enumerate(self.num):
            if c:
                row = table[(i * k) % m]
                for j in range(d):
                    out[j] += c * row[j]
        return CyclotomicNumber._make(m, tuple(out), self.den)

    def norm(self) -> Fraction:
        prod = self
        for k in range(2, self.conductor):
            if gcd(k, self.conductor) == 1:
                prod = prod * self.conjugate_by(k)
        return prod.to_fraction()

    def inverse(self) -> "CyclotomicNumber":
        if not self:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        m = self.conductor
        others = CyclotomicNumber.from_rational(m, 1)
        for k in range(2, m):
            if gcd(k, m) == 1:
                others = others * self.conjugate_by(k)
        nrm = (self * others).to_fraction()
        return others * (1 / nrm)

    def __truediv__(self, other):
        if _is_rational(other):
            return self * (1 / _as_fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.from_rational(self.conductor, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.num)

    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            return (
                self.conductor == other.conductor
                and self.den == other.den
                and self.num == other.num
            )
        if _is_rational(other):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.conductor, self.num, self.den))

    def __repr__(self):
        return f"CyclotomicNumber({self.conductor}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append((c, k))
        return _format_terms(terms, f"zeta{self.conductor}")

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
        }


def _normalize(num: tuple, den: int) -> tuple[tuple, int]:
    if den < 0:
        num = tuple(-x for x in num)
        den = -den
    if den == 1:
        return num, 1
    g = den
    for x in num:
        if x:
            g = gcd(g, x)
            if g == 1:
                return num, den
    if g != 1:
        num = tuple(x // g for x in num)
        den //= g
    if not any(num):
        den = 1
    return num, den


@lru_cache(maxsize=None)
def _mul_plan(m: int):
    return _power_table(m), len(cyclotomic_polynomial(m)) - 1


def _mul_mod(m: int, a: tuple, b: tuple) -> tuple:
    table, d = _mul_plan(m)
    if d == 1:
        return (a[0] * b[0],)
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    out = prod[:d]
    for k in range(d, 2 * d - 1):
        c = prod[k]
        if c:
            row = table[k]
            for j in range(d):
                out[j] += c * row[j]
    return tuple(out)


def _reduce_fraction_vector(m: int, coeffs: list) -> list:
    phi = list(cyclotomic_polynomial(m))
    _, rem = _poly_divmod(coeffs, phi)
    return [_as_fraction(c) for c in rem]


def rho(p: int) -> CyclotomicNumber:
    """The root of unity exp(-i*pi*(p-1)/(p+1)), realised exactly as -zeta_{p+1}."""
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    return -CyclotomicNumber.zeta(p + 1)


# -- polynomials in q --------------------------------------------------------------

class QPolynomial:
    """Univariate polynomial in q with rational coefficients, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = tuple(_trim([_as_exact(c) for c in coeffs]))

    @classmethod
    def gen(cls) -> "QPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "QPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _coerce(self, other):
        if isinstance(other, QPolynomial):
            return other
        if _is_rational(other):
            return QPolynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return QPolynomial([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QPolynomial(_poly_mul(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = QPolynomial((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        quot, rem = _poly_divmod(list(self.coeffs), list(other.coeffs))
        return QPolynomial(quot), QPolynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "QPolynomial":
        quot, rem = divmod(self, other)
        if rem:
            raise ArithmeticError(f"{other} does not divide {self}")
        return quot

    def evaluate(self, value):
        """Specialise q to ``value`` (Horner); a ring homomorphism into value's ring."""
        acc = value * 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    __call__ = evaluate

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, QPolynomial):
            return self.coeffs == other.coeffs
        if _is_rational(other):
            return self.coeffs == (tuple([_as_fraction(other)]) if other else ())
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash(self.coeffs)

    def __repr__(self):
        return f"QPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return _format_terms([(c, k) for k, c in enumerate(self.coeffs) if c], "q", descending=True)

    def factored_str(self) -> str:
        """Render as c * q^a * (q-1)^b * (q+1)^e * rest, e.g. ``-q*(q-1)``."""
        if not self:
            return "0"
        rest = self
        powers = {}
        for name, divisor in (("q", QPolynomial((0, 1))), ("(q-1)", QPolynomial((-1, 1))), ("(q+1)", QPolynomial((1, 1)))):
            k = 0
            while rest.degree > 0:
                quot, rem = divmod(rest, divisor)
                if rem:
                    break
                rest, k = quot, k + 1
            powers[name] = k
        factors = [f"{name}^{k}" if k > 1 else name for name, k in powers.items() if k]
        if rest.degree == 0:
            c = rest.coeffs[0]
            if not factors:
                return str(c)
            prefix = "" if c == 1 else "-" if c == -1 else f"{c}*"
            return prefix + "*".join(factors)
        body = str(rest)
        if factors:
            return "*".join(factors + [f"({body})"])
        return body

    def to_json(self) -> list:
        return [[c.numerator, c.denominator] for c in self.coeffs]


def _format_terms(terms, var: str, descending: bool = False) -> str:
    """Format (coefficient, exponent) pairs as a readable sum."""
    if not terms:
        return "0"
    if descending:
        terms = sorted(terms, key=lambda t: -t[1])
    parts = []
    for c, k in terms:
        mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- bivariate integer polynomials -------------------------------------------------

class XYPolynomial:
    """Polynomial in x, y over the integers, stored as {(i, j): coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in sorted((terms or {}).items()) if v}

    @classmethod
    def x(cls) -> "XYPolynomial":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "XYPolynomial":
        return cls({(0, 1): 1})

    def _coerce(self, other):
        if isinstance(other, XYPolynomial):
            return other
        if isinstance(other, int):
            return XYPolynomial({(0, 0): other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return XYPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return XYPolynomial({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for (a, b), u in self.terms.items():
            for (c, d), v in other.terms.items():
                key = (a + c, b + d)
                out[key] = out.get(key, 0) + u * v
        return XYPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = XYPolynomial({(0, 0): 1})
        for _ in range(k):
            result = result * self
        return result

    def evaluate(self, x, y):
        return sum(c * x**i * y**j for (i, j), c in self.terms.items())

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        return f"XYPolynomial({self.terms})"


# -- generic helpers -----------------------------------------------------------

Scalar = Union[int, Fraction, CyclotomicNumber, QPolynomial]


def q_integer(n: int, c):
    """[n]_c = 1 + c + ... + c^(n-1), written without division so c = 1 is fine."""
    if n < 0:
        raise ValueError("q-integers are only defined here for n >= 0")
    total = c * 0
    term = c**0
    for _ in range(n):
        total = total + term
        term = term * c
    return total


def scalar_str(x) -> str:
    if isinstance(x, QPolynomial):
        return x.factored_str()
    return str(x)


def scalar_to_json(x):
    """Rationals -> [num, den]; q-polynomials -> list of pairs; cyclotomics -> object."""
    if isinstance(x, QPolynomial):
        return x.to_json()
    if isinstance(x, CyclotomicNumber):
        return x.to_json()
    x = _as_fraction(x)
    return [x.numerator, x.denominator]


def scalar_from_json(obj):
    if isinstance(obj, dict):
        return CyclotomicNumber(obj["conductor"], [Fraction(a, b) for a, b in obj["coeffs"]])
    if obj and isinstance(obj[0], list) or obj == []:
        return QPolynomial(Fraction(a, b) for a, b in obj)
    a, b = obj
    return Fraction(a, b)
