#!/usr/bin/env python3
"""
Vector Orthogonality - recursion extraction, band checks and Maroni dual functionals
x P_n = P_{n+1} + sum_{j=0}^{d} gamma_j(n) P_{n-j}
"""

import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (BandViolation, DegreeOverflow, InvalidSpec, OrthogonalityFailed,
                     ReconstructionFailed)
from .families import expected_band_depth
from .polyalg import Poly, falling_factorial, format_rational


def expand_in_family(f, family):
    """Coefficients c_m with f = sum c_m P_m, by descending-degree elimination"""
    size = family.nmax + 1
    if f.is_zero():
        return (Fraction(0),) * size
    if f.degree() > family.nmax:
        raise DegreeOverflow(f.degree(), family.nmax)

    out = [Fraction(0)] * size
    rest = f
    for m in range(f.degree(), -1, -1):
        c = rest.coefficient(m)
        if c == 0:
            continue
        # members are monic, so one subtraction clears degree m
        out[m] = c
        rest = rest - family.members[m].scale(c)
    return tuple(out)


@dataclass(frozen=True)
class RecursionTable:
    d: int
    rows: tuple
    d_effective: int = 0

    def gamma(self, n, j):
        """gamma_j(n); zero outside the stored band"""
        row = self.rows[n]
        if 0 <= j < len(row) - 1:
            return row[j + 1]
        return Fraction(0)

    def to_json(self):
        return {
            'd': self.d,
            'dEffective': self.d_effective,
            'rows': [[format_rational(v) for v in row] for row in self.rows],
        }

    def csv_header(self):
        return ['n'] + [f'gamma_{j}' for j in range(self.d + 1)]

    def csv_rows(self):
        out = []
        for n, row in enumerate(self.rows):
            gammas = [format_rational(v) for v in row[1:]]
            out.append([str(n)] + gammas + [''] * (self.d + 1 - len(gammas)))
        return out


def recursion_table(family, d=None):
    """Rows (1, gamma_0(n), ..., gamma_min(n,d)(n)) for n <= nmax - 1"""
    if d is None:
        d = expected_band_depth(family.spec)
    if family.nmax < d + 2:
        raise InvalidSpec(f"recursion extraction needs nmax >= d + 2 = {d + 2}, got {family.nmax}")

    x = Poly.x()
    rows = []
    d_effective = 0
    for n in range(family.nmax):
        coeffs = expand_in_family(x * family.members[n], family)
        if coeffs[n + 1] != 1:
            raise BandViolation(n, n + 1, coeffs[n + 1])
        for m in range(0, n - d):
            if coeffs[m] != 0:
                raise BandViolation(n, m, coeffs[m])
        row = [coeffs[n + 1]] + [coeffs[n - j] for j in range(min(n, d) + 1)]
        for j, value in enumerate(row[1:]):
            if value != 0:
                d_effective = max(d_effective, j)
        rows.append(tuple(row))
    return RecursionTable(d, tuple(rows), d_effective)


def verify_reconstruction(family, table):
    """P_{n+1} = x P_n - sum_j gamma_j(n) P_{n-j} for every stored row"""
    x = Poly.x()
    for n in range(len(table.rows)):
        rebuilt = x * family.members[n]
        for j in range(min(n, table.d) + 1):
            rebuilt = rebuilt - family.members[n - j].scale(table.gamma(n, j))
        residual = rebuilt - family.members[n + 1]
        if not residual.is_zero():
            raise ReconstructionFailed(n, residual)
    return True


def paper_coeff_charlier(P, n, j):
    """(n)_j (j beta_j + (j+1) beta_{j+1}), the published form of gamma_j(n)"""
    if j < 1:
        raise InvalidSpec(f"j must be >= 1, got {j}")
    return falling_factorial(j)(n) * (j * P.beta(j) + (j + 1) * P.beta(j + 1))


def charlier_band_coefficient(P, n, j):
    """gamma_j(n) of a Charlier-Appell family: n - beta_1 at j = 0, minus the published form above"""
    if j == 0:
        return n - P.beta(1)
    return -paper_coeff_charlier(P, n, j)


class DualFunctional:
    """u_k(f) = coefficient of P_k in the expansion of f over the family"""

    def __init__(self, k, family):
        if not 0 <= k <= family.nmax:
            raise InvalidSpec(f"functional index {k} outside 0..{family.nmax}")
        self.k = k
        self.family = family

    def __call__(self, f):
        return expand_in_family(f, self.family)[self.k]

    def __repr__(self):
        return f'u_{self.k}'


@dataclass
class MaroniReport:
    d: int
    limit: int
    zero_checks: int = 0
    diagonal_checks: int = 0
    printed_index_checks: int = 0
    printed_index_zeros: int = 0
    diagonal_values: dict = field(default_factory=dict)

    def to_json(self):
        return {
            'd': self.d,
            'limit': self.limit,
            'zeroChecks': self.zero_checks,
            'diagonalChecks': self.diagonal_checks,
            'printedIndexChecks': self.printed_index_checks,
            'printedIndexZeros': self.printed_index_zeros,
            'diagonal': {key: format_rational(v) for key, v in sorted(self.diagonal_values.items())},
        }


def maroni_check(family, d, limit=None):
    """u_k(P_m P_n) = 0 for m > nd + k and u_k(P_n P_{nd+k}) != 0, k < d, m + n <= limit"""
    if d < 1:
        raise InvalidSpec(f"d must be >= 1, got {d}")
    if limit is None:
        limit = family.nmax
    if limit > family.nmax:
        raise InvalidSpec(f"grid limit {limit} exceeds nmax={family.nmax}")

    report = MaroniReport(d, limit)
    functionals = [DualFunctional(k, family) for k in range(min(d, family.nmax + 1))]
    for n in range(limit + 1):
        for m in range(limit - n + 1):
            product = family.members[m] * family.members[n]
            coeffs = expand_in_family(product, family)
            for u in functionals:
                k = u.k
                value = coeffs[k]
                if m > n * d + k:
                    report.zero_checks += 1
                    if value != 0:
                        raise OrthogonalityFailed(k, m, n, value)
                elif m == n * d + k:
                    report.diagonal_checks += 1
                    if value == 0:
                        raise OrthogonalityFailed(k, m, n, value)
                    report.diagonal_values[f'{k}:{n}'] = value
                if m == n * (d + 1) + k:
                    report.printed_index_checks += 1
                    if value == 0:
                        report.printed_index_zeros += 1
    return report


def degeneracy_scan(family, table=None):
    """(n, j) with gamma_j(n) = 0 at the deepest band j, for n >= j"""
    if table is None:
        d = expected_band_depth(family.spec)
        if family.nmax < d + 2:
            print(f"⚠️  Family too short to scan: nmax={family.nmax}, need {d + 2}", file=sys.stderr)
            return []
        table = recursion_table(family, d)

    j = table.d_effective
    if j == 0:
        return []
    return [(n, j) for n in range(j, len(table.rows)) if table.gamma(n, j) == 0]
