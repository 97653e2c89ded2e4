"""
Core engine for vopkit
Exact polynomial and difference-operator algebra, automorphisms, families and vector orthogonality
"""

from .errors import VopkitError, InvalidSpec
from .polyalg import Poly, falling_factorial, to_falling, from_falling
from .diffop import DiffOp, OpName, apply, compose, commutator, build
from .autom import ModifierPoly, exp_ad, exp_apply
from .families import FamilyKind, FamilySpec, PolyFamily, generate
from .vorth import recursion_table, maroni_check, degeneracy_scan

__all__ = [
    'VopkitError', 'InvalidSpec', 'Poly', 'falling_factorial', 'to_falling', 'from_falling',
    'DiffOp', 'OpName', 'apply', 'compose', 'commutator', 'build', 'ModifierPoly', 'exp_ad',
    'exp_apply', 'FamilyKind', 'FamilySpec', 'PolyFamily', 'generate', 'recursion_table',
    'maroni_check', 'degeneracy_scan',
]
