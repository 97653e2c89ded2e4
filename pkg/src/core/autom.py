#!/usr/bin/env python3
"""
Automorphisms - sigma = e^{ad_P} on difference operators and e^P on polynomials
Closed-form images are cross-checked against the nilpotent series
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .diffop import (DELTA, D, L, X, DiffOp, OpName, apply, build, commutator,
                     compose, evaluate_polynomial)
from .errors import IntertwiningFailed, InvalidSpec, NotLowering, NotNilpotent
from .polyalg import as_rational, falling_factorial, format_rational

DEFAULT_MAX_ORDER = 64


@dataclass(frozen=True)
class ModifierPoly:
    """P(X) = sum_{j=1}^d beta_j X^j, no free term, beta_d != 0"""

    coefficients: tuple = field(default=())

    def __post_init__(self):
        values = tuple(as_rational(c) for c in self.coefficients)
        if not values:
            raise InvalidSpec("P must have degree d >= 1")
        if values[-1] == 0:
            raise InvalidSpec("leading coefficient beta_d of P must be nonzero")
        object.__setattr__(self, 'coefficients', values)

    @classmethod
    def parse(cls, text):
        """'b1,b2,...' as given on the command line"""
        items = [item for item in str(text).split(',') if item.strip()]
        return cls(tuple(as_rational(item) for item in items))

    @property
    def d(self):
        return len(self.coefficients)

    def beta(self, j):
        """beta_j, zero outside 1..d"""
        if 1 <= j <= self.d:
            return self.coefficients[j - 1]
        return Fraction(0)

    def negated(self):
        return ModifierPoly(tuple(-c for c in self.coefficients))

    def to_strings(self):
        return [format_rational(c) for c in self.coefficients]

    def _power_coeffs(self):
        return (Fraction(0),) + self.coefficients

    def _derivative_coeffs(self):
        return tuple(j * self.beta(j) for j in range(1, self.d + 1))

    def _second_derivative_coeffs(self):
        return tuple(j * (j - 1) * self.beta(j) for j in range(2, self.d + 1))

    def at(self, A):
        """P(A)"""
        return evaluate_polynomial(self._power_coeffs(), A)

    def derivative_at(self, A):
        """P'(A)"""
        return evaluate_polynomial(self._derivative_coeffs(), A)

    def second_derivative_at(self, A):
        """P''(A)"""
        return evaluate_polynomial(self._second_derivative_coeffs(), A)

    def __repr__(self):
        terms = ' + '.join(f'({c})X^{j}' for j, c in enumerate(self.coefficients, start=1))
        return f'P(X) = {terms}'


@dataclass(frozen=True)
class AutomorphismReport:
    name: str
    series_image: DiffOp
    closed_image: DiffOp
    nilpotency_order: int
    match: bool

    def to_json(self):
        return {
            'name': self.name,
            'series': self.series_image.to_json(),
            'closed': self.closed_image.to_json(),
            'nilpotencyOrder': self.nilpotency_order,
            'match': self.match,
        }


def exp_ad_series(P, A, max_order=DEFAULT_MAX_ORDER):
    """sum_j ad_P^j(A)/j! together with the last j whose term is nonzero"""
    if max_order < 1:
        raise InvalidSpec(f"max_order must be >= 1, got {max_order}")
    total = A
    term = A
    factorial = 1
    j = 0
    while True:
        nxt = commutator(P, term)
        if nxt.is_zero():
            return total, j
        j += 1
        if j > max_order:
            raise NotNilpotent(max_order)
        factorial *= j
        term = nxt
        total = total + term.scale(Fraction(1, factorial))


def exp_ad(P, A, max_order=DEFAULT_MAX_ORDER):
    """sigma(A) = e^{ad_P}(A) = e^P A e^{-P}"""
    image, _ = exp_ad_series(P, A, max_order)
    return image


def exp_apply(P, f, guard=None):
    """e^P f = sum_j P^j f / j!, for P that strictly lowers degree"""
    if f.is_zero():
        return f
    if guard is None:
        guard = f.degree() + 1
    total = f
    term = f
    j = 0
    while not term.is_zero():
        nxt = apply(P, term)
        j += 1
        if not nxt.is_zero() and nxt.degree() >= term.degree():
            raise NotLowering(j, term.degree(), nxt.degree())
        if j > guard and not nxt.is_zero():
            raise NotLowering(j, term.degree(), nxt.degree())
        # P^j f / j! from P^{j-1} f / (j-1)!
        term = nxt.scale(Fraction(1, j))
        total = total + term
    return total


def closed_sigma_charlier(P, target):
    """Images under e^{ad_{P(Delta)}}: x + P'(Delta)D, x Nabla - P'(Delta)Delta, Delta"""
    target = _target_name(target)
    if target == 'x':
        return X + compose(P.derivative_at(DELTA), D)
    if target == 'L':
        return L - compose(P.derivative_at(DELTA), DELTA)
    if target == 'Delta':
        return DELTA
    raise InvalidSpec(f"no closed form for target {target!r} under P(Delta)")


def closed_sigma_meixner(P, beta, target):
    """Images under e^{ad_{P(G)}}

    With R = [G, x] one computes [P(G), x] = R P'(G) + P''(G) G and
    ad^2 = 2 P'(G)^2 G, ad^3 = 0, so sigma(x) = x + R P'(G) + P''(G) G + P'(G)^2 G.
    sigma(L) = L - P'(G) G and G is fixed.
    """
    target = _target_name(target)
    G = build(OpName.G, beta)
    if target == 'G':
        return G
    dP = P.derivative_at(G)
    if target == 'L':
        return L - compose(dP, G)
    if target == 'x':
        R = build(OpName.R, beta)
        return (X + compose(R, dP)
                + compose(P.second_derivative_at(G), G)
                + compose(compose(dP, dP), G))
    raise InvalidSpec(f"no closed form for target {target!r} under P(G)")


def literal_sigma_meixner_x(P, beta):
    """x + R P'(G) - P''(G) G - P'(G)^2 G, the printed reading with R on the left"""
    G = build(OpName.G, beta)
    R = build(OpName.R, beta)
    dP = P.derivative_at(G)
    return (X + compose(R, dP)
            - compose(P.second_derivative_at(G), G)
            - compose(compose(dP, dP), G))


def verify_closed_forms(P, beta=None, max_order=DEFAULT_MAX_ORDER):
    """One report per target; Charlier targets when beta is None, Meixner otherwise"""
    if beta is None:
        generator = P.at(DELTA)
        targets = (('x', X), ('L', L), ('Delta', DELTA))
        closed = lambda name: closed_sigma_charlier(P, name)
    else:
        G = build(OpName.G, beta)
        generator = P.at(G)
        targets = (('x', X), ('L', L), ('G', G))
        closed = lambda name: closed_sigma_meixner(P, beta, name)

    reports = []
    for name, A in targets:
        series, order = exp_ad_series(generator, A, max_order)
        image = closed(name)
        reports.append(AutomorphismReport(name, series, image, order, series == image))
    return reports


def verify_intertwining(P_op, generators, max_degree, max_order=DEFAULT_MAX_ORDER):
    """sigma(A) e^P f = e^P A f for every named generator and f = (x)_k, k <= max_degree"""
    for name, A in generators:
        image = exp_ad(P_op, A, max_order)
        for k in range(max_degree + 1):
            f = falling_factorial(k)
            lhs = apply(image, exp_apply(P_op, f))
            rhs = exp_apply(P_op, apply(A, f))
            if lhs != rhs:
                raise IntertwiningFailed(name, k, lhs - rhs)
    return True


def _target_name(target):
    aliases = {'x': 'x', 'MulX': 'x', 'L': 'L', 'Lop': 'L', 'Delta': 'Delta', 'G': 'G', 'Gop': 'G'}
    if isinstance(target, OpName):
        target = target.value
    if target not in aliases:
        raise InvalidSpec(f"unknown automorphism target {target!r}")
    return aliases[target]


__all__ = [
    'DEFAULT_MAX_ORDER', 'ModifierPoly', 'AutomorphismReport',
    'exp_ad_series', 'exp_ad', 'exp_apply', 'closed_sigma_charlier',
    'closed_sigma_meixner', 'literal_sigma_meixner_x', 'verify_closed_forms',
    'verify_intertwining',
]
