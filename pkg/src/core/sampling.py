#!/usr/bin/env python3
"""
Random instances for property checks, drawn from a seeded numpy Generator
"""

from fractions import Fraction

import numpy as np

from .autom import ModifierPoly
from .diffop import DiffOp
from .families import FamilyKind, FamilySpec
from .polyalg import Poly, as_rational


def make_rng(seed):
    return np.random.default_rng(seed)


def random_rational(rng, bound=5):
    """p/q with |p| <= bound and 1 <= q <= bound"""
    p = int(rng.integers(-bound, bound + 1))
    q = int(rng.integers(1, bound + 1))
    return Fraction(p, q)


def random_nonzero_rational(rng, bound=5):
    while True:
        value = random_rational(rng, bound)
        if value != 0:
            return value


def random_poly(rng, degree, bound=5):
    return Poly([random_rational(rng, bound) for _ in range(degree + 1)])


def random_modifier(rng, max_degree=4, bound=5):
    d = int(rng.integers(1, max_degree + 1))
    coeffs = [random_rational(rng, bound) for _ in range(d - 1)]
    return ModifierPoly(tuple(coeffs + [random_nonzero_rational(rng, bound)]))


def random_diffop(rng, order=3, degree=3, bound=5):
    """Shifts in [-order, order], coefficients of degree <= degree"""
    terms = {}
    for k in range(-order, order + 1):
        if rng.random() < 0.6:
            terms[k] = random_poly(rng, int(rng.integers(0, degree + 1)), bound)
    return DiffOp(terms)


def random_family_spec(rng, kind, max_degree=4, betas=('1/2', '1', '3'), c='1/2', nmax=10):
    P = random_modifier(rng, max_degree)
    if FamilyKind(kind) is FamilyKind.CHARLIER_APPELL:
        return FamilySpec(FamilyKind.CHARLIER_APPELL, P, nmax=nmax)
    beta = as_rational(betas[int(rng.integers(0, len(betas)))])
    return FamilySpec(FamilyKind.MEIXNER_TYPE, P, beta=beta, c=as_rational(c), nmax=nmax)
