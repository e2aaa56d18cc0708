"""Exact dense polynomials with Python-int coefficients.

Large products go through Kronecker substitution: both operands are packed
into one big integer with a fixed number of bytes per coefficient, the
integers are multiplied, and the digits are read back. All coefficient
arithmetic stays in arbitrary precision.
"""

from __future__ import annotations

from typing import Iterable, Sequence

__all__ = ["IntPolynomial"]

# products with fewer nonzero terms than this on one side use schoolbook
_SPARSE_CUTOFF = 48


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


class IntPolynomial:
    """Polynomial in z; ``coeffs[i]`` is the coefficient of z**i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs = _trim([int(c) for c in coeffs])

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "IntPolynomial":
        if exponent < 0:
            raise ValueError("negative exponent")
        return cls([0] * exponent + [coeff])

    @classmethod
    def from_terms(cls, terms: dict[int, int]) -> "IntPolynomial":
        if not terms:
            return cls()
        out = [0] * (max(terms) + 1)
        for e, c in terms.items():
            out[e] += c
        return cls(out)

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, e: int) -> int:
        if e < 0:
            raise IndexError("negative exponent")
        return self.coeffs[e] if e < len(self.coeffs) else 0

    def terms(self) -> list[tuple[int, int]]:
        return [(e, c) for e, c in enumerate(self.coeffs) if c]

    def __call__(self, z: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _trim([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def _combine(self, other: "IntPolynomial", sign: int) -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        out = list(a) + [0] * (n - len(a))
        for i, c in enumerate(b):
            out[i] += sign * c
        return IntPolynomial(out)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return IntPolynomial(_multiply(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        if k < 0:
            raise ValueError("negative power")
        result = IntPolynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def substitute_power(self, k: int) -> "IntPolynomial":
        """p(z**k)."""
        if k < 1:
            raise ValueError("substitution power must be positive")
        if not self.coeffs:
            return IntPolynomial()
        out = [0] * (k * self.degree + 1)
        for e, c in enumerate(self.coeffs):
            out[k * e] = c
        return IntPolynomial(out)

    def shift(self, k: int) -> "IntPolynomial":
        """z**k * p(z)."""
        if not self.coeffs:
            return self
        return IntPolynomial([0] * k + list(self.coeffs))

    def divmod(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Division with remainder; the divisor's leading coefficient must be +-1."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead = divisor.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("divisor must be monic up to sign")
        rem = list(self.coeffs)
        dd = divisor.degree
        if len(rem) - 1 < dd:
            return IntPolynomial(), IntPolynomial(rem)
        quot = [0] * (len(rem) - dd)
        dcoeffs = [(e, c) for e, c in enumerate(divisor.coeffs[:-1]) if c]
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = c * lead  # c / lead for lead = +-1
            quot[i - dd] = q
            rem[i] = 0
            base = i - dd
            for e, dc in dcoeffs:
                rem[base + e] -= q * dc
        return IntPolynomial(quot), IntPolynomial(rem)

    def __floordiv__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self.divmod(other)[1]

    def divisible_by(self, divisor: "IntPolynomial") -> bool:
        return self.divmod(divisor)[1].is_zero()

    def divide_by_linear(self, root: int) -> tuple["IntPolynomial", int]:
        """Synthetic division by (z - root): returns (quotient, p(root))."""
        if not self.coeffs:
            return IntPolynomial(), 0
        acc = 0
        out = []
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        value = out.pop()
        return IntPolynomial(reversed(out)), value

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if e == 0:
                body = str(mag)
            elif mag == 1:
                body = f"z^{e}"
            else:
                body = f"{mag}*z^{e}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)!r})"


def _multiply(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    sparse_a = [(i, c) for i, c in enumerate(a) if c]
    sparse_b = [(i, c) for i, c in enumerate(b) if c]
    if min(len(sparse_a), len(sparse_b)) <= _SPARSE_CUTOFF:
        if len(sparse_a) > len(sparse_b):
            sparse_a, sparse_b = sparse_b, sparse_a
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in sparse_a:
            for j, cb in sparse_b:
                out[i + j] += ca * cb
        return out
    return _kronecker(a, b)


def _pack(coeffs: Sequence[int], nbytes: int) -> int:
    pos = b"".join((c if c > 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    top_a, top_b = max(map(abs, a)), max(map(abs, b))
    # slots must hold every input coefficient as well as every output one
    bound = max(top_a * top_b * min(len(a), len(b)), top_a, top_b)
    # one spare bit for the sign offset, rounded up to whole bytes
    nbytes = (bound.bit_length() + 2 + 7) // 8
    length = len(a) + len(b) - 1
    product = _pack(a, nbytes) * _pack(b, nbytes)
    offset = 1 << (8 * nbytes - 1)
    pattern = (b"\x00" * (nbytes - 1) + b"\x80") * length
    raw = (product + int.from_bytes(pattern, "little")).to_bytes(length * nbytes, "little")
    return [
        int.from_bytes(raw[i : i + nbytes], "little") - offset
        for i in range(0, length * nbytes, nbytes)
    ]
