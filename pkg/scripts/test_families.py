#!/usr/bin/env python3
"""
Test Polynomial Families
Charlier-Appell and Meixner-type generation, eigen and lowering identities,
classical oracles and the Kravchuk truncation
"""

import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.autom import ModifierPoly
from src.core.diffop import DELTA, L, DiffOp, OpName, apply, build
from src.core.errors import InvalidSpec, LoweringFailed, NotEigenfunction
from src.core.families import (FamilyKind, FamilySpec, PolyFamily, bispectral_operator,
                               charlier_operator, charlier_spec, check_monic,
                               classical_charlier, classical_meixner, classical_meixner_spec,
                               eigencheck, expected_band_depth, generate, kravchuk_truncation,
                               literal_meixner_spec, lowering_check, meixner_operator,
                               proportionality_scalar)
from src.core.polyalg import Poly
from src.core.sampling import make_rng, random_family_spec

CHARLIER = FamilyKind.CHARLIER_APPELL
MEIXNER = FamilyKind.MEIXNER_TYPE
HALF = Fraction(1, 2)


def test_generate_examples():
    """Test 1: Members from e^{P(A)} (x)_n"""
    print("\n" + "="*60)
    print("TEST 1: Generation")
    print("="*60)

    fam = generate(FamilySpec(CHARLIER, ModifierPoly((-1,)), nmax=4))
    assert fam.members[0] == Poly.constant(1)
    assert fam.members[2] == Poly((1, -3, 1))
    assert len(fam.members) == 5 and fam.nmax == 4

    # P = (alpha/2) X^2: M_2 = (x)_2 + alpha (beta+1)(beta+2)
    alpha, beta = HALF, Fraction(1)
    spec = FamilySpec(MEIXNER, ModifierPoly((0, alpha / 2)), beta=beta, c=HALF, nmax=4)
    fam = generate(spec)
    assert fam.members[2] == Poly((alpha * (beta + 1) * (beta + 2), -1, 1))
    assert fam.members[1] == Poly.x()

    assert generate(FamilySpec(CHARLIER, ModifierPoly((3, 1)), nmax=0)).members == (Poly.constant(1),)
    print("✅ PASSED")


def test_spec_guards():
    """Test 2: Invalid parameters"""
    print("\n" + "="*60)
    print("TEST 2: Spec validation")
    print("="*60)

    P = ModifierPoly((1,))
    bad = [
        lambda: FamilySpec(MEIXNER, P, beta=1, c=1),
        lambda: FamilySpec(MEIXNER, P, beta=1, c=0),
        lambda: FamilySpec(MEIXNER, P, c=HALF),
        lambda: FamilySpec(CHARLIER, P, beta=1),
        lambda: FamilySpec(CHARLIER, P, nmax=-1),
        lambda: ModifierPoly((0,)),
        lambda: classical_charlier(0, 3),
    ]
    for make in bad:
        try:
            make()
            assert False, "should be rejected"
        except InvalidSpec:
            pass

    spec = FamilySpec('meixner-type', P, beta='1/2', c='1/3', nmax=3)
    assert spec.kind is MEIXNER and spec.beta == HALF and spec.c == Fraction(1, 3)
    assert FamilySpec.from_json(spec.to_json()) == spec
    assert expected_band_depth(spec) == 1
    assert expected_band_depth(FamilySpec(CHARLIER, ModifierPoly((0, 0, 1)))) == 3
    assert expected_band_depth(FamilySpec(MEIXNER, ModifierPoly((0, 1)), beta=1, c=HALF)) == 3
    print("✅ PASSED")


def test_bispectral_operator():
    """Test 3: tilde L"""
    print("\n" + "="*60)
    print("TEST 3: Bispectral operators")
    print("="*60)

    for a in (Fraction(1), Fraction(2), HALF):
        spec = charlier_spec(a)
        assert bispectral_operator(spec) == charlier_operator(a)
        assert charlier_operator(a) == DELTA.scale(a) + L

    # alpha = c/(1-c) with parameter beta is not proportional to c(x+beta)Delta + x Nabla
    beta, c = Fraction(3), Fraction(1, 3)
    literal = bispectral_operator(literal_meixner_spec(beta, c))
    assert proportionality_scalar(literal, meixner_operator(beta, c)) is None
    G = build(OpName.G, beta)
    assert literal == L.scale(1 - c) - G.scale(c)

    fixed = bispectral_operator(classical_meixner_spec(beta, c))
    assert fixed == meixner_operator(beta, c)
    assert proportionality_scalar(fixed, meixner_operator(beta, c)) == 1
    assert proportionality_scalar(fixed.scale(-3), meixner_operator(beta, c)) == -3
    print("✅ PASSED")


def test_eigencheck():
    """Test 4: Eigenvalues"""
    print("\n" + "="*60)
    print("TEST 4: Eigenvalues")
    print("="*60)

    fam = generate(charlier_spec(1, nmax=6))
    assert apply(fam.tilde_L, Poly((-1, 1))) == Poly((1, -1))
    assert fam.eigenvalues[0] == 0 and fam.eigenvalues[1] == -1
    assert list(fam.eigenvalues) == [-n for n in range(7)]

    c = HALF
    spec = FamilySpec(MEIXNER, ModifierPoly((c / (1 - c),)), beta=2, c=c, nmax=8)
    fam = generate(spec)
    assert list(eigencheck(fam)) == [-(1 - c) * n for n in range(9)]

    # corrupted operator
    broken = replace(fam, tilde_L=fam.tilde_L + DiffOp.multiplication(Poly.x()))
    try:
        eigencheck(broken)
        assert False, "corrupted tilde L must fail"
    except NotEigenfunction as e:
        assert e.n == 0 and e.residual == Poly.x()
    print("✅ PASSED")


def test_lowering():
    """Test 5: Lowering identities"""
    print("\n" + "="*60)
    print("TEST 5: Lowering")
    print("="*60)

    fam = generate(charlier_spec(1, nmax=5))
    assert apply(DELTA, fam.members[2]) == fam.members[1].scale(2)
    report = lowering_check(fam)
    assert report.operator == 'Delta' and report.coefficients == tuple(range(1, 6))

    alpha = HALF
    spec = FamilySpec(MEIXNER, ModifierPoly((0, alpha / 2)), beta=1, c=HALF, nmax=10)
    fam = generate(spec)
    G = build(OpName.G, 1)
    assert apply(G, fam.members[1]) == Poly.constant(2)
    report = lowering_check(fam)
    assert report.coefficients == tuple(n * (n + 1) for n in range(1, 11))

    members = list(fam.members)
    members[4] = members[4] + Poly.constant(1)
    try:
        lowering_check(replace(fam, members=tuple(members)))
        assert False
    except LoweringFailed as e:
        assert e.n in (4, 5)
    print("✅ PASSED")


def test_classical_charlier():
    """Test 6: Hypergeometric oracle"""
    print("\n" + "="*60)
    print("TEST 6: Classical Charlier")
    print("="*60)

    assert classical_charlier(1, 0) == Poly.constant(1)
    assert classical_charlier(1, 1) == Poly((-1, 1))
    assert classical_charlier(1, 2) == Poly((1, -3, 1))

    for a in (Fraction(1), Fraction(2), HALF):
        fam = generate(charlier_spec(a, nmax=12))
        operator = charlier_operator(a)
        for n in range(13):
            q = classical_charlier(a, n)
            assert fam.members[n] == q, f"a={a}, n={n}"
            # -n y = a y(x+1) - (x+a) y + x y(x-1)
            assert apply(operator, q) == q.scale(-n)
    print("✅ PASSED")


def test_classical_meixner():
    """Test 7: Meixner oracle"""
    print("\n" + "="*60)
    print("TEST 7: Classical Meixner")
    print("="*60)

    beta, c = Fraction(3), Fraction(1, 3)
    assert classical_meixner(beta, c, 1) == Poly((-beta * c / (1 - c), 1))
    for beta, c in ((Fraction(3), Fraction(1, 3)), (Fraction(2), HALF), (HALF, Fraction(-2))):
        fam = generate(classical_meixner_spec(beta, c, nmax=8))
        operator = meixner_operator(beta, c)
        for n in range(9):
            m = classical_meixner(beta, c, n)
            assert fam.members[n] == m, f"beta={beta}, c={c}, n={n}"
            assert apply(operator, m) == m.scale(-(1 - c) * n)

    try:
        classical_meixner(-2, HALF, 4)
        assert False, "(beta)_k vanishes"
    except InvalidSpec:
        pass
    print("✅ PASSED")


def test_random_monic():
    """Test 8: Random specs stay monic with linear eigenvalues"""
    print("\n" + "="*60)
    print("TEST 8: Random monicity and eigenvalue linearity")
    print("="*60)

    rng = make_rng(42)
    for i in range(30):
        kind = CHARLIER if i % 2 else MEIXNER
        spec = random_family_spec(rng, kind, max_degree=4, nmax=10)
        fam = generate(spec)
        assert check_monic(fam)
        slope = fam.eigenvalues[1]
        assert all(lam == n * slope for n, lam in enumerate(fam.eigenvalues))
        expected = 1 if kind is CHARLIER else abs(1 - spec.c)
        assert abs(slope) == expected
    print("✅ PASSED")


def test_family_json():
    """Test 9: Stored documents"""
    print("\n" + "="*60)
    print("TEST 9: Family documents")
    print("="*60)

    fam = generate(charlier_spec(2, nmax=3))
    doc = fam.to_json()
    assert doc['members'][1] == ['-2', '1']
    assert doc['spec'] == {'kind': 'charlier-appell', 'P': ['-2'], 'nmax': 3}
    assert PolyFamily.from_json(doc) == fam

    doc['members'][2] = ['0', '0', '2']
    loaded = PolyFamily.from_json(doc)
    try:
        check_monic(loaded)
        assert False
    except InvalidSpec:
        pass
    print("✅ PASSED")


def test_kravchuk():
    """Test 10: beta = -N"""
    print("\n" + "="*60)
    print("TEST 10: Kravchuk truncation")
    print("="*60)

    alpha = Fraction(1, 3)
    report = kravchuk_truncation(ModifierPoly((alpha,)), 3, HALF)
    assert report.band_depth == 1
    assert report.vanishing == ((3, 1),)
    assert report.maroni_passed and report.maroni_limit == 3

    report = kravchuk_truncation(ModifierPoly((1, 1)), 5, HALF)
    assert report.band_depth == 3
    assert report.vanishing[0] == (5, 3)
    assert report.maroni_passed and report.maroni_limit == 5

    report = kravchuk_truncation(ModifierPoly((alpha,)), 1, HALF)
    assert report.vanishing[0] == (1, 1)
    assert report.to_json()['N'] == 1
    print("✅ PASSED")


def main():
    """Run all tests"""
    print("\n" + "="*60)
    print("FAMILY TEST SUITE")
    print("="*60)

    try:
        test_generate_examples()
        test_spec_guards()
        test_bispectral_operator()
        test_eigencheck()
        test_lowering()
        test_classical_charlier()
        test_classical_meixner()
        test_random_monic()
        test_family_json()
        test_kravchuk()

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
