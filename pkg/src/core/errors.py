#!/usr/bin/env python3
"""
Engine errors
Every verification error carries its counterexample so callers can print it
"""


class VopkitError(Exception):
    """Base class for all engine errors"""


class InvalidSpec(VopkitError):
    """Malformed parameters: free term in P, c in {0, 1}, a = 0, bad rational"""


class NotNilpotent(VopkitError):
    def __init__(self, max_order):
        self.max_order = max_order
        super().__init__(f"ad_P^{max_order + 1}(A) is nonzero: generator is not locally nilpotent on A")


class NotLowering(VopkitError):
    def __init__(self, step, degree_before, degree_after):
        self.step = step
        self.degree_before = degree_before
        self.degree_after = degree_after
        super().__init__(
            f"iterate {step} did not drop degree ({degree_before} -> {degree_after}); "
            f"P has a free term or is malformed"
        )


class NotEigenfunction(VopkitError):
    def __init__(self, n, residual, reason="residual is nonzero"):
        self.n = n
        self.residual = residual
        self.reason = reason
        super().__init__(f"member {n} is not an eigenfunction ({reason}): residual {residual}")


class LoweringFailed(VopkitError):
    def __init__(self, n, residual):
        self.n = n
        self.residual = residual
        super().__init__(f"lowering identity fails at n={n}: residual {residual}")


class BandViolation(VopkitError):
    def __init__(self, n, m, value):
        self.n = n
        self.m = m
        self.value = value
        super().__init__(f"x*P_{n} has coefficient {value} at P_{m}, outside the band")


class ReconstructionFailed(VopkitError):
    def __init__(self, n, residual):
        self.n = n
        self.residual = residual
        super().__init__(f"recursion does not reconstruct P_{n + 1}: residual {residual}")


class DegreeOverflow(VopkitError):
    def __init__(self, degree, nmax):
        self.degree = degree
        self.nmax = nmax
        super().__init__(f"degree {degree} exceeds the family length nmax={nmax}")


class OrthogonalityFailed(VopkitError):
    def __init__(self, k, m, n, value):
        self.k = k
        self.m = m
        self.n = n
        self.value = value
        super().__init__(f"u_{k}(P_{m} P_{n}) = {value} violates the vector orthogonality conditions")


class ClosedFormMismatch(VopkitError):
    def __init__(self, name, closed, series):
        self.name = name
        self.closed = closed
        self.series = series
        super().__init__(f"closed form of sigma({name}) differs from the series: {closed} != {series}")


class IntertwiningFailed(VopkitError):
    def __init__(self, name, k, residual):
        self.name = name
        self.k = k
        self.residual = residual
        super().__init__(f"sigma({name}) e^P (x)_{k} != e^P {name} (x)_{k}: residual {residual}")
