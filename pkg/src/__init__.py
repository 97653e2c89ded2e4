"""
vopkit
Discrete vector orthogonal polynomials from automorphisms of difference operators
"""

__version__ = "1.0.0"
