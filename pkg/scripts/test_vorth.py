#!/usr/bin/env python3
"""
Test Vector Orthogonality
Expansion in the family basis, recursion tables, Maroni conditions, degeneracy
"""

import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.autom import ModifierPoly
from src.core.errors import (BandViolation, DegreeOverflow, InvalidSpec, OrthogonalityFailed,
                             ReconstructionFailed)
from src.core.families import FamilyKind, FamilySpec, charlier_spec, generate
from src.core.polyalg import Poly
from src.core.sampling import make_rng, random_modifier
from src.core.vorth import (DualFunctional, charlier_band_coefficient, degeneracy_scan,
                            expand_in_family, maroni_check, paper_coeff_charlier,
                            recursion_table, verify_reconstruction)

HALF = Fraction(1, 2)


def _meixner(P, beta, c, nmax):
    return generate(FamilySpec(FamilyKind.MEIXNER_TYPE, ModifierPoly(P), beta=beta, c=c, nmax=nmax))


def test_expand():
    """Test 1: Expansion over the family"""
    print("\n" + "="*60)
    print("TEST 1: expand_in_family")
    print("="*60)

    fam = generate(charlier_spec(1, nmax=6))
    unit = expand_in_family(fam.members[5], fam)
    assert unit == tuple(1 if m == 5 else 0 for m in range(7))

    coeffs = expand_in_family(Poly.x() * fam.members[1], fam)
    assert coeffs[:3] == (1, 2, 1) and not any(coeffs[3:])
    assert expand_in_family(Poly(), fam) == (0,) * 7

    try:
        expand_in_family(Poly.monomial(7), fam)
        assert False
    except DegreeOverflow as e:
        assert e.degree == 7 and e.nmax == 6
    print("✅ PASSED")


def test_dual_functionals():
    """Test 2: u_k(P_m) = delta_km"""
    print("\n" + "="*60)
    print("TEST 2: Dual functionals")
    print("="*60)

    fam = _meixner((0, Fraction(1, 4)), 1, HALF, 8)
    for k in range(9):
        u = DualFunctional(k, fam)
        for m in range(9):
            assert u(fam.members[m]) == (1 if k == m else 0)
    try:
        DualFunctional(9, fam)
        assert False
    except InvalidSpec:
        pass
    print("✅ PASSED")


def test_charlier_table():
    """Test 3: Classical Charlier recursion"""
    print("\n" + "="*60)
    print("TEST 3: Charlier recursion table")
    print("="*60)

    fam = generate(charlier_spec(1, nmax=10))
    table = recursion_table(fam)
    assert table.d == 1 and table.d_effective == 1
    assert table.rows[0] == (1, 1)
    assert table.rows[1] == (1, 2, 1)
    assert verify_reconstruction(fam, table)

    # x q_n = q_{n+1} + (n+a) q_n + a n q_{n-1}
    a = Fraction(3, 2)
    fam = generate(charlier_spec(a, nmax=10))
    table = recursion_table(fam)
    for n in range(10):
        assert table.gamma(n, 0) == n + a
        assert table.gamma(n, 1) == a * n
        assert table.gamma(n, 2) == 0

    assert table.csv_header() == ['n', 'gamma_0', 'gamma_1']
    assert table.csv_rows()[0] == ['0', '3/2', '']
    assert table.csv_rows()[2] == ['2', '7/2', '3']
    print("✅ PASSED")


def test_charlier_closed_form():
    """Test 4: Band coefficients of Charlier-Appell families"""
    print("\n" + "="*60)
    print("TEST 4: Charlier-Appell band coefficients")
    print("="*60)

    a = Fraction(2)
    assert paper_coeff_charlier(ModifierPoly((-a,)), 5, 1) == -a * 5
    assert paper_coeff_charlier(ModifierPoly((1,)), 4, 3) == 0
    assert paper_coeff_charlier(ModifierPoly((0, 1)), 3, 2) == 12

    rng = make_rng(8)
    for _ in range(10):
        P = random_modifier(rng, max_degree=4)
        fam = generate(FamilySpec(FamilyKind.CHARLIER_APPELL, P, nmax=P.d + 6))
        table = recursion_table(fam)
        assert table.d_effective == P.d
        for n in range(len(table.rows)):
            for j in range(min(n, P.d) + 1):
                assert table.gamma(n, j) == charlier_band_coefficient(P, n, j)
                if j >= 1:
                    assert table.gamma(n, j) == -paper_coeff_charlier(P, n, j)
        assert verify_reconstruction(fam, table)
    print("✅ PASSED")


def test_meixner_table():
    """Test 5: Meixner-type recursion"""
    print("\n" + "="*60)
    print("TEST 5: Meixner-type recursion")
    print("="*60)

    fam = _meixner((0, Fraction(1, 4)), 1, HALF, 10)
    table = recursion_table(fam)
    assert table.d == 3 and table.d_effective == 3
    assert len(table.rows[3]) == 5
    assert len(table.rows[0]) == 2
    assert verify_reconstruction(fam, table)

    # d = 1: gamma_0 = n - alpha(2n+1+beta), gamma_1 = alpha(alpha-1) n(n+beta)
    alpha, beta = Fraction(1, 3), Fraction(5, 2)
    fam = _meixner((alpha,), beta, Fraction(1, 4), 8)
    table = recursion_table(fam)
    for n in range(8):
        assert table.gamma(n, 0) == n - alpha * (2 * n + 1 + beta)
        if n >= 1:
            assert table.gamma(n, 1) == alpha * (alpha - 1) * n * (n + beta)
    print("✅ PASSED")


def test_band_and_reconstruction_failures():
    """Test 6: Negative controls"""
    print("\n" + "="*60)
    print("TEST 6: Band and reconstruction failures")
    print("="*60)

    fam = generate(charlier_spec(1, nmax=8))
    table = recursion_table(fam)
    members = list(fam.members)
    members[6] = members[6] + Poly.constant(Fraction(1, 7))
    broken = replace(fam, members=tuple(members))

    try:
        verify_reconstruction(broken, table)
        assert False
    except ReconstructionFailed as e:
        assert e.n in (5, 6) and not e.residual.is_zero()

    try:
        recursion_table(broken)
        assert False
    except BandViolation as e:
        assert e.m < e.n - 1

    try:
        recursion_table(generate(charlier_spec(1, nmax=2)))
        assert False
    except InvalidSpec:
        pass
    print("✅ PASSED")


def test_maroni_charlier():
    """Test 7: d = 1 baseline"""
    print("\n" + "="*60)
    print("TEST 7: Maroni conditions, Charlier")
    print("="*60)

    fam = generate(charlier_spec(1, nmax=12))
    u0 = DualFunctional(0, fam)
    assert u0(fam.members[1] * fam.members[0]) == 0
    for n in range(1, 6):
        assert u0(fam.members[n] * fam.members[n]) != 0

    report = maroni_check(fam, 1)
    assert report.limit == 12
    assert report.zero_checks > 0 and report.diagonal_checks == 7
    # u_0(P_n P_{2n}) vanishes for every n >= 1
    assert report.printed_index_zeros == report.printed_index_checks - 1

    try:
        maroni_check(fam, 1, limit=13)
        assert False
    except InvalidSpec:
        pass
    print("✅ PASSED")


def test_maroni_higher_d():
    """Test 8: d-orthogonality for deeper bands"""
    print("\n" + "="*60)
    print("TEST 8: Maroni conditions, d > 1")
    print("="*60)

    fam = generate(FamilySpec(FamilyKind.CHARLIER_APPELL, ModifierPoly((-1, 1)), nmax=10))
    table = recursion_table(fam)
    assert table.d_effective == 2
    assert maroni_check(fam, table.d_effective, 10).diagonal_checks > 0

    # alpha = c/(2 beta (1-c)) with beta = 1, c = 1/2
    c, beta = HALF, Fraction(1)
    alpha = c / (2 * beta * (1 - c))
    fam = _meixner((0, alpha / 2), beta, c, 10)
    table = recursion_table(fam)
    report = maroni_check(fam, table.d_effective, 10)
    assert report.d == 3 and report.zero_checks > 0

    # a 2-term-deeper family is not 1-orthogonal
    try:
        maroni_check(fam, 1, 10)
        assert False
    except OrthogonalityFailed as e:
        assert e.m > e.n + e.k
    print("✅ PASSED")


def test_degeneracy():
    """Test 9: Vanishing deepest coefficients"""
    print("\n" + "="*60)
    print("TEST 9: Degeneracy scan")
    print("="*60)

    assert degeneracy_scan(generate(charlier_spec(1, nmax=12))) == []

    fam = _meixner((1, 1), -5, HALF, 8)
    table = recursion_table(fam)
    found = degeneracy_scan(fam, table)
    assert found[0] == (5, 3)
    assert all(n >= 5 for n, _ in found)
    assert maroni_check(fam, table.d_effective, limit=5)

    # gamma_1(n) = alpha(alpha-1) n(n-N) for P = alpha X
    alpha, N = Fraction(2), 4
    fam = _meixner((alpha,), -N, HALF, 7)
    table = recursion_table(fam)
    for n in range(1, 7):
        assert table.gamma(n, 1) == alpha * (alpha - 1) * n * (n - N)
    assert degeneracy_scan(fam, table) == [(4, 1)]

    assert degeneracy_scan(generate(charlier_spec(1, nmax=2))) == []
    print("✅ PASSED")


def main():
    """Run all tests"""
    print("\n" + "="*60)
    print("VECTOR ORTHOGONALITY TEST SUITE")
    print("="*60)

    try:
        test_expand()
        test_dual_functionals()
        test_charlier_table()
        test_charlier_closed_form()
        test_meixner_table()
        test_band_and_reconstruction_failures()
        test_maroni_charlier()
        test_maroni_higher_d()
        test_degeneracy()

        print("\n" + "="*60)
        print("ALL TESTS COMPLETED")
        print("="*60)

    except Exception as e:
        print(f"\n❌ Test failed with error: {e}")
        import traceback
        traceback.print_exc()
        return 1

    return 0


if __name__ == "__main__":
    sys.exit(main())
