"""Generating functions of finite sets and the exact identities built on them.

For a finite set A let A(z) = sum of z**a. Since

    sum_n R_A(n) z**n = (A(z)**2 - A(z**2)) / 2,

two sets have the same strict pair profile iff
C(z)**2 - D(z)**2 == C(z**2) - D(z**2). Everything here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polynomial import IntPolynomial
from .sets import IntegerSet, _as_set

__all__ = [
    "from_set",
    "criterion_eq1",
    "MultiplicityCertificate",
    "unit_root_multiplicity",
    "NathansonSpec",
    "nathanson_build",
    "divisibility_check",
]


def from_set(A) -> IntPolynomial:
    A = _as_set(A)
    if not A:
        return IntPolynomial()
    coeffs = [0] * (A.max_element + 1)
    for a in A:
        coeffs[a] = 1
    return IntPolynomial(coeffs)


def criterion_eq1(C, D, upto: int | None = None) -> bool:
    """True iff C(z)^2 - D(z)^2 == C(z^2) - D(z^2).

    With `upto`, only coefficients of z^0 .. z^upto are compared, which is
    the right check for truncations of infinite sets.
    """
    Cz, Dz = from_set(C), from_set(D)
    lhs = Cz * Cz - Dz * Dz
    rhs = Cz.substitute_power(2) - Dz.substitute_power(2)
    if upto is None:
        return lhs == rhs
    return all(lhs[n] == rhs[n] for n in range(upto + 1))


@dataclass(frozen=True)
class MultiplicityCertificate:
    """C(z) - D(z) == (z - 1)**multiplicity * quotient, quotient(1) != 0."""

    multiplicity: int
    quotient: IntPolynomial

    def expand(self) -> IntPolynomial:
        return IntPolynomial([-1, 1]) ** self.multiplicity * self.quotient

    def certifies(self, C, D) -> bool:
        return self.quotient(1) != 0 and self.expand() == from_set(C) - from_set(D)


def unit_root_multiplicity(C, D) -> MultiplicityCertificate:
    """Exact power of (z - 1) dividing C(z) - D(z), by repeated synthetic division.

    When C and D have the same strict pair profile, |C| + |D| equals
    2**multiplicity.
    """
    C, D = _as_set(C), _as_set(D)
    if C == D:
        raise ValueError("C == D: the zero polynomial has no multiplicity certificate")
    p = from_set(C) - from_set(D)
    m = 0
    while True:
        q, value = p.divide_by_linear(1)
        if value != 0:
            return MultiplicityCertificate(m, p)
        p = q
        m += 1


@dataclass(frozen=True)
class NathansonSpec:
    """Eventually periodic pair: F plus {lM + t : l >= n0, t in T}."""

    F_C: IntegerSet
    F_D: IntegerSet
    T: IntegerSet
    M: int
    n0: int
    h: int = 2

    def __post_init__(self):
        for name in ("F_C", "F_D", "T"):
            object.__setattr__(self, name, _as_set(getattr(self, name)))
        if self.M < 1 or self.n0 < 1:
            raise ValueError("M and n0 must be positive")
        if self.h < 2:
            raise ValueError("arity must be at least 2")
        top = self.M * self.n0 - 1
        for name in ("F_C", "F_D"):
            s = getattr(self, name)
            if s and s.max_element > top:
                raise ValueError(f"{name} must lie in [0, M*n0 - 1] = [0, {top}]")
        if self.T and self.T.max_element > self.M - 1:
            raise ValueError(f"T must lie in [0, M - 1] = [0, {self.M - 1}]")


def nathanson_build(spec: NathansonSpec, bound: int) -> tuple[IntegerSet, IntegerSet]:
    periodic = []
    l = spec.n0
    while l * spec.M <= bound:
        periodic.extend(l * spec.M + t for t in spec.T if l * spec.M + t <= bound)
        l += 1
    C = IntegerSet([x for x in spec.F_C if x <= bound] + periodic)
    D = IntegerSet([x for x in spec.F_D if x <= bound] + periodic)
    return C, D


def divisibility_check(spec: NathansonSpec) -> bool:
    """(1 - z^M)^(h-1) divides (F_C(z) - F_D(z)) * T(z)^(h-1)."""
    k = spec.h - 1
    target = (from_set(spec.F_C) - from_set(spec.F_D)) * from_set(spec.T) ** k
    if target.is_zero():
        return True
    divisor = (IntPolynomial([1]) - IntPolynomial.monomial(spec.M)) ** k
    return target.divisible_by(divisor)
