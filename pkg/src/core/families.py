#!/usr/bin/env python3
"""
Polynomial Families - Charlier-Appell C_n^P = e^{P(Delta)} (x)_n and
Meixner-type M_n^P = e^{P(G)} (x)_n, their bispectral operators and
the classical oracles they reduce to
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction

from sympy import Rational as SymRational
from sympy import factorial, rf

from .autom import DEFAULT_MAX_ORDER, ModifierPoly, exp_ad, exp_apply
from .diffop import DELTA, L, DiffOp, OpName, apply, build
from .errors import InvalidSpec, LoweringFailed, NotEigenfunction, OrthogonalityFailed
from .polyalg import Poly, as_rational, falling_factorial, format_rational

DEFAULT_NMAX = 12


class FamilyKind(Enum):
    CHARLIER_APPELL = 'charlier-appell'
    MEIXNER_TYPE = 'meixner-type'


@dataclass(frozen=True)
class FamilySpec:
    kind: FamilyKind
    P: ModifierPoly
    beta: Fraction = None
    c: Fraction = None
    nmax: int = DEFAULT_NMAX

    def __post_init__(self):
        kind = self.kind if isinstance(self.kind, FamilyKind) else FamilyKind(self.kind)
        object.__setattr__(self, 'kind', kind)
        if not isinstance(self.P, ModifierPoly):
            raise InvalidSpec("P must be a ModifierPoly")
        if self.nmax < 0:
            raise InvalidSpec(f"nmax must be >= 0, got {self.nmax}")

        if kind is FamilyKind.MEIXNER_TYPE:
            if self.beta is None or self.c is None:
                raise InvalidSpec("meixner-type families need both beta and c")
            beta, c = as_rational(self.beta), as_rational(self.c)
            if c in (0, 1):
                raise InvalidSpec(f"c must differ from 0 and 1, got {c}")
            object.__setattr__(self, 'beta', beta)
            object.__setattr__(self, 'c', c)
        else:
            if self.beta is not None or self.c is not None:
                raise InvalidSpec("charlier-appell families take no beta or c")

    @property
    def d(self):
        return self.P.d

    def to_json(self):
        doc = {'kind': self.kind.value, 'P': self.P.to_strings(), 'nmax': self.nmax}
        if self.kind is FamilyKind.MEIXNER_TYPE:
            doc['beta'] = format_rational(self.beta)
            doc['c'] = format_rational(self.c)
        return doc

    @classmethod
    def from_json(cls, doc):
        return cls(
            kind=FamilyKind(doc['kind']),
            P=ModifierPoly(tuple(doc['P'])),
            beta=doc.get('beta'),
            c=doc.get('c'),
            nmax=int(doc.get('nmax', DEFAULT_NMAX)),
        )


@dataclass(frozen=True)
class PolyFamily:
    spec: FamilySpec
    members: tuple
    tilde_L: DiffOp
    eigenvalues: tuple = field(default=())

    @property
    def nmax(self):
        return len(self.members) - 1

    def member(self, n):
        return self.members[n]

    def to_json(self):
        return {
            'spec': self.spec.to_json(),
            'members': [p.to_strings() for p in self.members],
            'tildeL': self.tilde_L.to_json(),
            'eigenvalues': [format_rational(v) for v in self.eigenvalues],
        }

    @classmethod
    def from_json(cls, doc):
        """Rebuild a stored family as-is; nothing is regenerated or validated"""
        return cls(
            spec=FamilySpec.from_json(doc['spec']),
            members=tuple(Poly.from_strings(m) for m in doc['members']),
            tilde_L=DiffOp.from_json(doc['tildeL']),
            eigenvalues=tuple(as_rational(v) for v in doc.get('eigenvalues', [])),
        )


def lowering_operator(spec):
    """Delta for Charlier-Appell, G(beta) for Meixner-type"""
    if spec.kind is FamilyKind.CHARLIER_APPELL:
        return DELTA
    return build(OpName.G, spec.beta)


def modifier_operator(spec):
    """P(Delta) or P(G)"""
    return spec.P.at(lowering_operator(spec))


def expected_band_depth(spec):
    """Depth of the recursion band below P_n: d, or 2d-1 for Meixner-type"""
    if spec.kind is FamilyKind.CHARLIER_APPELL:
        return spec.d
    return 2 * spec.d - 1


def generate(spec, max_order=DEFAULT_MAX_ORDER):
    """Members e^{P(A)} (x)_n for n <= nmax, plus tilde L and its eigenvalues"""
    P_op = modifier_operator(spec)
    members = tuple(exp_apply(P_op, falling_factorial(n)) for n in range(spec.nmax + 1))
    family = PolyFamily(spec, members, bispectral_operator(spec, max_order))
    check_monic(family)
    return replace(family, eigenvalues=tuple(eigencheck(family)))


def bispectral_operator(spec, max_order=DEFAULT_MAX_ORDER):
    """tilde L = sigma(L), scaled by (1 - c) for Meixner-type"""
    image = exp_ad(modifier_operator(spec), L, max_order)
    if spec.kind is FamilyKind.MEIXNER_TYPE:
        return image.scale(1 - spec.c)
    return image


def check_monic(family):
    for n, p in enumerate(family.members):
        if p.degree() != n or not p.is_monic():
            raise InvalidSpec(f"member {n} is not monic of degree {n}: {p}")
    return True


def eigencheck(family):
    """lambda_n with tilde L P_n = lambda_n P_n, and lambda_n = n * lambda_1"""
    eigenvalues = []
    for n, p in enumerate(family.members):
        image = apply(family.tilde_L, p)
        lam = image.coefficient(n) / p.leading_coefficient() if not p.is_zero() else Fraction(0)
        residual = image - p.scale(lam)
        if not residual.is_zero():
            raise NotEigenfunction(n, residual)
        eigenvalues.append(lam)

    if eigenvalues and eigenvalues[0] != 0:
        raise NotEigenfunction(0, Poly(), reason=f"lambda_0 = {eigenvalues[0]} is not 0")
    if len(eigenvalues) > 1:
        slope = eigenvalues[1]
        for n, lam in enumerate(eigenvalues):
            if lam != n * slope:
                raise NotEigenfunction(n, Poly(), reason=f"lambda_{n} = {lam} is not {n} * {slope}")
    return eigenvalues


@dataclass(frozen=True)
class LoweringReport:
    operator: str
    checked: int
    coefficients: tuple


def lowering_coefficient(spec, n):
    if spec.kind is FamilyKind.CHARLIER_APPELL:
        return Fraction(n)
    return n * (n + spec.beta)


def lowering_check(family):
    """Delta C_n = n C_{n-1}, G M_n = n(n + beta) M_{n-1} for 1 <= n <= nmax"""
    A = lowering_operator(family.spec)
    coefficients = []
    for n in range(1, family.nmax + 1):
        k = lowering_coefficient(family.spec, n)
        residual = apply(A, family.members[n]) - family.members[n - 1].scale(k)
        if not residual.is_zero():
            raise LoweringFailed(n, residual)
        coefficients.append(k)
    name = 'Delta' if family.spec.kind is FamilyKind.CHARLIER_APPELL else 'G'
    return LoweringReport(name, len(coefficients), tuple(coefficients))


def _to_fraction(value):
    return Fraction(int(value.p), int(value.q))


def classical_charlier(a, n):
    """Monic Charlier polynomial (-a)^n sum_k (-n)_k (x)_k / (a^k k!)"""
    a = as_rational(a)
    if a == 0:
        raise InvalidSpec("Charlier parameter a must be nonzero")
    total = Poly()
    for k in range(n + 1):
        weight = _to_fraction(rf(-n, k) / factorial(k)) / a ** k
        total = total + falling_factorial(k).scale(weight)
    return total.scale((-a) ** n)


def classical_meixner(beta, c, n):
    """Monic Meixner polynomial from 2F1(-n, -x; beta; 1 - 1/c)"""
    beta, c = as_rational(beta), as_rational(c)
    if c in (0, 1):
        raise InvalidSpec(f"Meixner parameter c must differ from 0 and 1, got {c}")
    z = 1 - 1 / c
    sym_beta = SymRational(beta.numerator, beta.denominator)
    total = Poly()
    for k in range(n + 1):
        poch = _to_fraction(rf(sym_beta, k))
        if poch == 0:
            raise InvalidSpec(f"(beta)_{k} vanishes for beta = {beta}; the 2F1 sum is undefined")
        # (-x)_k rising = (-1)^k (x)_k falling
        weight = _to_fraction(rf(-n, k) / factorial(k)) * (-1) ** k * z ** k / poch
        total = total + falling_factorial(k).scale(weight)
    return total.scale(_to_fraction(rf(sym_beta, n)) / z ** n)


def charlier_operator(a):
    """a Delta + x Nabla"""
    return DELTA.scale(as_rational(a)) + L


def meixner_operator(beta, c):
    """c (x + beta) Delta + x Nabla"""
    beta, c = as_rational(beta), as_rational(c)
    x_plus_beta = DiffOp.multiplication(Poly((beta, 1)))
    return (x_plus_beta * DELTA).scale(c) + L


def proportionality_scalar(A, B):
    """s with A = s B, or None when the operators are not proportional"""
    if B.is_zero():
        return Fraction(0) if A.is_zero() else None
    k = B.support()[0]
    p, q = A.coefficient(k), B.coefficient(k)
    s = p.leading_coefficient() / q.leading_coefficient() if not p.is_zero() else Fraction(0)
    return s if A == B.scale(s) else None


def charlier_spec(a, nmax=DEFAULT_NMAX):
    """P = -aX reproduces the monic Charlier family"""
    return FamilySpec(FamilyKind.CHARLIER_APPELL, ModifierPoly((-as_rational(a),)), nmax=nmax)


def classical_meixner_spec(beta, c, nmax=DEFAULT_NMAX):
    """Normalization whose tilde L equals c(x+beta)Delta + x Nabla exactly.

    The eigen-operator of P = alpha X is (c-1) N - (1-c) alpha G with N = -x Nabla;
    matching c(x+beta)Delta + x Nabla = (c-1) N + c G(beta-1) needs
    alpha = -c/(1-c) and lowering parameter beta - 1.
    """
    beta, c = as_rational(beta), as_rational(c)
    if c == 1:
        raise InvalidSpec("c must differ from 1")
    alpha = -c / (1 - c)
    return FamilySpec(FamilyKind.MEIXNER_TYPE, ModifierPoly((alpha,)), beta=beta - 1, c=c, nmax=nmax)


def literal_meixner_spec(beta, c, nmax=DEFAULT_NMAX):
    """alpha = c/(1-c) with parameter beta, as the normalization is usually stated"""
    beta, c = as_rational(beta), as_rational(c)
    if c == 1:
        raise InvalidSpec("c must differ from 1")
    return FamilySpec(FamilyKind.MEIXNER_TYPE, ModifierPoly((c / (1 - c),)), beta=beta, c=c, nmax=nmax)


@dataclass(frozen=True)
class KravchukReport:
    spec: FamilySpec
    N: int
    band_depth: int
    vanishing: tuple
    maroni_limit: int
    maroni_passed: bool

    def to_json(self):
        return {
            'spec': self.spec.to_json(),
            'N': self.N,
            'bandDepth': self.band_depth,
            'vanishing': [list(item) for item in self.vanishing],
            'maroniLimit': self.maroni_limit,
            'maroniPassed': self.maroni_passed,
        }


def kravchuk_truncation(P, N, c, nmax=None, max_order=DEFAULT_MAX_ORDER):
    """Meixner-type family at beta = -N: where the deepest band coefficient vanishes"""
    # deferred: vorth imports this module
    from .vorth import degeneracy_scan, maroni_check, recursion_table

    if N < 1:
        raise InvalidSpec(f"N must be a positive integer, got {N}")
    depth = 2 * P.d - 1
    if nmax is None:
        nmax = max(N + 3, depth + 2)
    spec = FamilySpec(FamilyKind.MEIXNER_TYPE, P, beta=-N, c=c, nmax=nmax)
    family = generate(spec, max_order)
    table = recursion_table(family)
    vanishing = tuple(degeneracy_scan(family, table))

    limit = min(N, nmax)
    try:
        maroni_check(family, table.d, limit=limit)
        passed = True
    except OrthogonalityFailed:
        passed = False
    return KravchukReport(spec, N, table.d, vanishing, limit, passed)
