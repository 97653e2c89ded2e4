#!/usr/bin/env python3
"""
Difference Operators - normal form sum_k p_k(x) D^k with polynomial coefficients
Coefficients sit to the left of the shifts, so equality is a map comparison
"""

from enum import Enum

from .errors import InvalidSpec
from .polyalg import Poly, as_rational, falling_factorial


class DiffOp:
    """Immutable difference operator, terms keyed by integer shift"""

    __slots__ = ('_terms',)

    def __init__(self, terms=None):
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        merged = {}
        for k, p in items:
            p = p if isinstance(p, Poly) else Poly.constant(p)
            merged[int(k)] = merged.get(int(k), Poly()) + p
        self._terms = tuple(sorted((k, p) for k, p in merged.items() if not p.is_zero()))

    @classmethod
    def identity(cls):
        return cls({0: Poly.constant(1)})

    @classmethod
    def multiplication(cls, p):
        """The operator f -> p*f"""
        return cls({0: p})

    @classmethod
    def shift_operator(cls, k):
        return cls({k: Poly.constant(1)})

    @property
    def terms(self):
        return dict(self._terms)

    def support(self):
        return tuple(k for k, _ in self._terms)

    def coefficient(self, k):
        for shift, p in self._terms:
            if shift == k:
                return p
        return Poly()

    def is_zero(self):
        return not self._terms

    def width(self):
        """Largest |shift| in the support"""
        return max((abs(k) for k, _ in self._terms), default=0)

    def max_degree(self):
        return max((p.degree() for _, p in self._terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            other = DiffOp.identity().scale(other)
        merged = dict(self._terms)
        for k, p in other._terms:
            merged[k] = merged.get(k, Poly()) + p
        return DiffOp(merged)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp({k: -p for k, p in self._terms})

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            other = DiffOp.identity().scale(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_rational(c)
        return DiffOp({k: p.scale(c) for k, p in self._terms})

    def __mul__(self, other):
        if isinstance(other, DiffOp):
            return compose(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, j):
        if j < 0:
            raise InvalidSpec("only non-negative powers of a difference operator are defined")
        result = DiffOp.identity()
        for _ in range(j):
            result = compose(result, self)
        return result

    def __call__(self, f):
        return apply(self, f)

    def to_json(self):
        return {str(k): p.to_strings() for k, p in self._terms}

    @classmethod
    def from_json(cls, data):
        return cls({int(k): Poly.from_strings(v) for k, v in data.items()})

    def __repr__(self):
        if not self._terms:
            return '0'
        parts = []
        for k, p in self._terms:
            shift = '' if k == 0 else ('D' if k == 1 else f'D^{k}')
            if not shift:
                parts.append(f'({p})')
            else:
                parts.append(f'({p})*{shift}')
        return ' + '.join(parts)


def apply(A, f):
    """(A f)(x) = sum_k p_k(x) f(x+k)"""
    result = Poly()
    for k, p in A._terms:
        result = result + p * f.shift(k)
    return result


def compose(A, B):
    """Normal form of A o B, using D^a p(x) = p(x+a) D^a"""
    out = {}
    for a, p in A._terms:
        for b, q in B._terms:
            term = p * q.shift(a)
            out[a + b] = out.get(a + b, Poly()) + term
    return DiffOp(out)


def commutator(A, B):
    return compose(A, B) - compose(B, A)


def ad_power(P, A, j):
    """ad_P^j(A) by iterated commutators"""
    if j < 0:
        raise InvalidSpec(f"ad power must be >= 0, got {j}")
    result = A
    for _ in range(j):
        if result.is_zero():
            break
        result = commutator(P, result)
    return result


def evaluate_polynomial(coeffs, A):
    """sum_i c_i A^i by Horner, coeffs indexed from the constant term"""
    result = DiffOp()
    for c in reversed(list(coeffs)):
        result = compose(result, A) + DiffOp.identity().scale(c)
    return result


def agrees_on_falling_basis(A, B):
    """Application-based equality on (x)_0 .. (x)_{2m+g+1}"""
    m = max(A.width(), B.width())
    g = max(A.max_degree(), B.max_degree())
    for k in range(2 * m + g + 2):
        f = falling_factorial(k)
        if apply(A, f) != apply(B, f):
            return False
    return True


class OpName(Enum):
    IDENTITY = 'IdentityOp'
    D = 'D'
    DINV = 'Dinv'
    DELTA = 'Delta'
    NABLA = 'Nabla'
    MUL_X = 'MulX'
    L = 'Lop'
    NUMBER = 'NumberOp'
    G = 'Gop'
    R = 'Rop'


def build(name, beta=None):
    """Normal form of a named generator; Gop and Rop need beta"""
    name = OpName(name) if not isinstance(name, OpName) else name
    one = DiffOp.identity()
    x = DiffOp.multiplication(Poly.x())

    if name is OpName.IDENTITY:
        return one
    if name is OpName.D:
        return DiffOp.shift_operator(1)
    if name is OpName.DINV:
        return DiffOp.shift_operator(-1)
    if name is OpName.DELTA:
        return DiffOp.shift_operator(1) - one
    if name is OpName.NABLA:
        return DiffOp.shift_operator(-1) - one
    if name is OpName.MUL_X:
        return x
    if name is OpName.L:
        return compose(x, build(OpName.NABLA))
    if name is OpName.NUMBER:
        # (x)_n -> n (x)_n
        return -build(OpName.L)

    if beta is None:
        raise InvalidSpec(f"{name.value} needs the parameter beta")
    beta = as_rational(beta)
    # G (x)_n = n(n + beta) (x)_{n-1}
    G = compose(build(OpName.DELTA), build(OpName.NUMBER) + one.scale(beta))
    if name is OpName.G:
        return G
    return commutator(G, x)


# shorthands used across the engine
IDENTITY = build(OpName.IDENTITY)
D = build(OpName.D)
DINV = build(OpName.DINV)
DELTA = build(OpName.DELTA)
NABLA = build(OpName.NABLA)
X = build(OpName.MUL_X)
L = build(OpName.L)
NUMBER = build(OpName.NUMBER)

ZERO = DiffOp()
