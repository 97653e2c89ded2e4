#!/usr/bin/env python3
"""
Polynomial Algebra - exact univariate polynomials over the rationals
Monomial basis is the storage form; the falling-factorial basis is a view
"""

from fractions import Fraction
from functools import lru_cache, total_ordering
from math import comb

from .errors import InvalidSpec

Rational = Fraction


@total_ordering
class _MinusInfinity:
    """Degree of the zero polynomial. Ordered below every integer, no arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash('-inf-degree')

    def __repr__(self):
        return '-inf'

    def __reduce__(self):
        return (_MinusInfinity, ())


MINUS_INFINITY = _MinusInfinity()


def as_rational(value):
    """Convert int, Fraction or a "num/den" string to a Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidSpec(f"refusing inexact scalar {value!r}; pass an int, Fraction or 'num/den'")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidSpec(f"not a rational: {value!r}") from e
    # sympy Integer/Rational and friends expose p/q
    if hasattr(value, 'p') and hasattr(value, 'q'):
        return Fraction(int(value.p), int(value.q))
    raise InvalidSpec(f"not a rational: {value!r}")


def format_rational(q):
    """Canonical string form used in every serialized document"""
    return str(as_rational(q))


class Poly:
    """Immutable polynomial, coefficients indexed by monomial degree"""

    __slots__ = ('_coeffs',)

    def __init__(self, coeffs=()):
        values = [as_rational(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self._coeffs = tuple(values)

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def monomial(cls, degree, c=1):
        return cls([0] * degree + [c])

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def from_strings(cls, items):
        return cls([as_rational(s) for s in items])

    @property
    def coeffs(self):
        return self._coeffs

    def coefficient(self, k):
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    def degree(self):
        if not self._coeffs:
            return MINUS_INFINITY
        return len(self._coeffs) - 1

    def is_zero(self):
        return not self._coeffs

    def leading_coefficient(self):
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def is_monic(self):
        return self.leading_coefficient() == 1

    def to_strings(self):
        return [format_rational(c) for c in self._coeffs]

    # ring operations

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        return Poly.constant(as_rational(other))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == Poly.constant(other)._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self._coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return Poly(out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = as_rational(c)
        if c == 0:
            return Poly()
        return Poly([c * a for a in self._coeffs])

    def __call__(self, v):
        return evaluate(self, v)

    def shift(self, s):
        return shift(self, s)

    def __repr__(self):
        if not self._coeffs:
            return '0'
        parts = []
        for k in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[k]
            if c == 0:
                continue
            sign = '-' if c < 0 else '+'
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = 'x' if k == 1 else f'x^{k}'
                body = var if mag == 1 else f'{mag}*{var}'
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in parts[1:]:
            text += f' {sign} {body}'
        return text


def ring_ops(p, q):
    """Sum, difference, product and equality of two polynomials in one call"""
    return {'add': p + q, 'sub': p - q, 'mul': p * q, 'equal': p == q}


@lru_cache(maxsize=None)
def falling_factorial(k):
    """(x)_k = x(x-1)...(x-k+1), with (x)_0 = 1"""
    if k < 0:
        raise InvalidSpec(f"falling factorial index must be >= 0, got {k}")
    result = Poly.constant(1)
    for i in range(k):
        result = result * Poly((-i, 1))
    return result


@lru_cache(maxsize=None)
def stirling2(n, k):
    """Stirling numbers of the second kind, S(n,k) = k*S(n-1,k) + S(n-1,k-1)"""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    row = [1] + [0] * k
    for m in range(1, n + 1):
        for j in range(min(m, k), 0, -1):
            row[j] = j * row[j] + row[j - 1]
        row[0] = 0
    return row[k]


class FallingCoeffs:
    """Coefficients of a polynomial in the basis (x)_0, (x)_1, ..."""

    __slots__ = ('_coeffs',)

    def __init__(self, coeffs=()):
        values = [as_rational(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self._coeffs = tuple(values)

    @property
    def coeffs(self):
        return self._coeffs

    def coefficient(self, k):
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    def as_dict(self):
        return {k: c for k, c in enumerate(self._coeffs) if c != 0}

    def __eq__(self, other):
        if not isinstance(other, FallingCoeffs):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(('falling', self._coeffs))

    def __repr__(self):
        terms = ', '.join(f'(x)_{k}: {c}' for k, c in self.as_dict().items())
        return '{' + terms + '}'


def to_falling(p):
    """Monomial -> falling basis: x^i = sum_k S(i,k) (x)_k"""
    if p.is_zero():
        return FallingCoeffs()
    out = [Fraction(0)] * (p.degree() + 1)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for k in range(i + 1):
            s = stirling2(i, k)
            if s:
                out[k] += a * s
    return FallingCoeffs(out)


def from_falling(c):
    """Falling basis -> monomial basis"""
    result = Poly()
    for k, a in enumerate(c.coeffs):
        if a != 0:
            result = result + falling_factorial(k).scale(a)
    return result


def shift(p, s):
    """x -> p(x + s) by the binomial expansion"""
    s = as_rational(s)
    if s == 0 or p.is_zero():
        return p
    n = p.degree()
    powers = [Fraction(1)]
    for _ in range(n):
        powers.append(powers[-1] * s)
    out = [Fraction(0)] * (n + 1)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j in range(i + 1):
            out[j] += a * comb(i, j) * powers[i - j]
    return Poly(out)


def evaluate(p, v):
    """Horner evaluation"""
    v = as_rational(v)
    acc = Fraction(0)
    for a in reversed(p.coeffs):
        acc = acc * v + a
    return acc
